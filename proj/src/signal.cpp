#include "stlstar/signal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stlstar {

Signal::Signal(SignalSchema schema, std::vector<Rat> times,
               std::vector<std::vector<double>> values)
    : schema_(std::move(schema)), times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() < 2) throw SignalError("signal needs at least 2 samples");
  if (times_.front() != 0) throw SignalError("signal must start at time 0");
  if (values_.size() != times_.size())
    throw SignalError("sample row count does not match time count");
  for (size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i - 1] < times_[i]))
      throw SignalError("NonMonotoneTime: time column must be strictly increasing");
  const size_t n = schema_.names.size();
  for (const auto& row : values_) {
    if (row.size() != n) throw SignalError("ragged sample row");
    for (double v : row)
      if (!std::isfinite(v)) throw SignalError("non-finite sample value");
  }
  times_d_.reserve(times_.size());
  for (const auto& t : times_) times_d_.push_back(rat_to_double(t));
}

double Signal::value_at(int var, double t) const {
  if (var < 0 || var >= order()) throw DomainError("variable index out of range");
  const double r = times_d_.back();
  if (t < 0.0 || t > r) throw DomainError("time outside signal domain [0,|s|]");
  auto it = std::upper_bound(times_d_.begin(), times_d_.end(), t);
  size_t j = it == times_d_.end() ? times_d_.size() - 1 : it - times_d_.begin();
  if (j == 0) return values_.front()[var];
  size_t i = j - 1;
  double t0 = times_d_[i], t1 = times_d_[j];
  if (t == t0) return values_[i][var];
  if (t == t1) return values_[j][var];
  double w = (t - t0) / (t1 - t0);
  return values_[i][var] + w * (values_[j][var] - values_[i][var]);
}

std::vector<std::pair<Rat, Rat>> Signal::segment_partition() const {
  std::vector<std::pair<Rat, Rat>> out;
  out.reserve(times_.size() - 1);
  for (size_t i = 0; i + 1 < times_.size(); ++i)
    out.emplace_back(times_[i], times_[i + 1]);
  return out;
}

Signal Signal::refine(int factor) const {
  if (factor < 1) throw SignalError("refine factor must be >= 1");
  std::vector<Rat> ts;
  std::vector<std::vector<double>> vs;
  for (size_t i = 0; i + 1 < times_.size(); ++i) {
    for (int k = 0; k < factor; ++k) {
      Rat t = times_[i] + (times_[i + 1] - times_[i]) * k / factor;
      ts.push_back(t);
      if (k == 0) {
        vs.push_back(values_[i]);
      } else {
        double w = static_cast<double>(k) / factor;
        std::vector<double> row(order());
        for (int v = 0; v < order(); ++v)
          row[v] = values_[i][v] + w * (values_[i + 1][v] - values_[i][v]);
        vs.push_back(std::move(row));
      }
    }
  }
  ts.push_back(times_.back());
  vs.push_back(values_.back());
  Signal out(schema_, std::move(ts), std::move(vs));
  out.set_time_offset(offset_);
  return out;
}

LengthStatus check_length(const Signal& s, const FormulaPtr& f) {
  Rat needed = required_length(f);
  Rat have = s.length();
  return {have >= needed, needed, have};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  for (auto& c : cells) {
    size_t a = c.find_first_not_of(" \t");
    size_t b = c.find_last_not_of(" \t");
    c = a == std::string::npos ? "" : c.substr(a, b - a + 1);
  }
  return cells;
}

}  // namespace

Signal load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SignalError("empty CSV input");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "time")
    throw SignalError("CSV header must be 'time,var1,...,varn'");
  SignalSchema schema(std::vector<std::string>(header.begin() + 1, header.end()));

  std::vector<Rat> times;
  std::vector<std::vector<double>> values;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw SignalError("ragged CSV row at line " + std::to_string(lineno));
    Rat t;
    try {
      t = parse_rational(cells[0]);
    } catch (const std::invalid_argument&) {
      throw SignalError("non-numeric time at line " + std::to_string(lineno));
    }
    std::vector<double> row;
    row.reserve(cells.size() - 1);
    for (size_t i = 1; i < cells.size(); ++i) {
      char* end = nullptr;
      double v = std::strtod(cells[i].c_str(), &end);
      if (end == cells[i].c_str() || *end != '\0' || !std::isfinite(v))
        throw SignalError("non-numeric cell at line " + std::to_string(lineno));
      row.push_back(v);
    }
    times.push_back(t);
    values.push_back(std::move(row));
  }
  if (times.size() < 2) throw SignalError("CSV needs at least 2 samples");
  Rat offset = times.front();
  for (auto& t : times) t -= offset;
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i - 1] < times[i]))
      throw SignalError("NonMonotoneTime: time column must be strictly increasing");
  Signal s(std::move(schema), std::move(times), std::move(values));
  s.set_time_offset(offset);
  return s;
}

Signal load_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SignalError("cannot open file: " + path);
  return load_csv(in);
}

void save_csv(const Signal& s, std::ostream& out) {
  out << "time";
  for (const auto& name : s.schema().names) out << "," << name;
  out << "\n";
  std::ostringstream num;
  num.precision(17);
  for (size_t i = 0; i < s.sample_count(); ++i) {
    out << rat_to_string(s.times()[i] + s.time_offset());
    for (double v : s.values()[i]) {
      num.str("");
      num << v;
      out << "," << num.str();
    }
    out << "\n";
  }
}

Signal signal_from_json(std::istream& in) {
  nlohmann::json j;
  in >> j;
  SignalSchema schema(j.at("schema").get<std::vector<std::string>>());
  std::vector<Rat> times;
  for (const auto& t : j.at("times")) times.push_back(parse_rational(t.get<std::string>()));
  auto values = j.at("values").get<std::vector<std::vector<double>>>();
  Rat offset = times.empty() ? Rat(0) : times.front();
  for (auto& t : times) t -= offset;
  Signal s(std::move(schema), std::move(times), std::move(values));
  s.set_time_offset(offset);
  return s;
}

void signal_to_json(const Signal& s, std::ostream& out) {
  nlohmann::json j;
  j["schema"] = s.schema().names;
  std::vector<std::string> ts;
  for (const auto& t : s.times()) ts.push_back(rat_to_string(t + s.time_offset()));
  j["times"] = ts;
  j["values"] = s.values();
  out << j.dump(2) << "\n";
}

}  // namespace stlstar
