#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "stlstar/formula.hpp"
#include "stlstar/rational.hpp"

namespace stlstar {

struct SignalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : SignalError {
  using SignalError::SignalError;
};

// Immutable piecewise-linear vector-valued signal on [0, r] with exact
// rational breakpoints. Between breakpoints every component is the linear
// interpolant of the stored samples.
class Signal {
 public:
  Signal(SignalSchema schema, std::vector<Rat> times,
         std::vector<std::vector<double>> values);

  const SignalSchema& schema() const { return schema_; }
  int order() const { return schema_.order(); }
  size_t sample_count() const { return times_.size(); }
  size_t segment_count() const { return times_.size() - 1; }
  const std::vector<Rat>& times() const { return times_; }
  const std::vector<std::vector<double>>& values() const { return values_; }
  Rat length() const { return times_.back(); }
  double length_d() const { return times_d_.back(); }
  const std::vector<double>& times_d() const { return times_d_; }
  // Time offset subtracted on ingestion so the first sample sits at 0.
  const Rat& time_offset() const { return offset_; }

  double value_at(int var, double t) const;
  std::vector<std::pair<Rat, Rat>> segment_partition() const;

  // Each segment split into 'factor' equal pieces by interpolated points.
  Signal refine(int factor) const;

  void set_time_offset(Rat off) { offset_ = std::move(off); }

 private:
  SignalSchema schema_;
  std::vector<Rat> times_;
  std::vector<double> times_d_;
  std::vector<std::vector<double>> values_;
  Rat offset_ = 0;
};

struct LengthStatus {
  bool ok;
  Rat needed;
  Rat have;
};

LengthStatus check_length(const Signal& s, const FormulaPtr& f);

// CSV with header "time,var1,...,varn" and a numeric body. Times are shifted
// so the first sample is 0; the offset is recorded on the signal.
Signal load_csv(std::istream& in);
Signal load_csv_file(const std::string& path);
void save_csv(const Signal& s, std::ostream& out);

Signal signal_from_json(std::istream& in);
void signal_to_json(const Signal& s, std::ostream& out);

}  // namespace stlstar
