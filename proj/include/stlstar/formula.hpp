#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "stlstar/rational.hpp"

namespace stlstar {

// Ordered variable names binding formula identifiers to signal components.
struct SignalSchema {
  std::vector<std::string> names;

  SignalSchema() = default;
  explicit SignalSchema(std::vector<std::string> n);

  int order() const { return static_cast<int>(names.size()); }
  // Returns the variable index or -1.
  int index_of(const std::string& name) const;
};

enum class Cmp { LT, GT };

// Normalized linear inequality over current-time and frozen-time signal
// values: sum(plain[i]*x_i) + sum(frozen[i]*x_i*) cmp bound.
struct LinearPredicate {
  std::map<int, double> plain_coeffs;
  std::map<int, double> frozen_coeffs;
  double bound = 0.0;
  Cmp cmp = Cmp::LT;

  bool operator==(const LinearPredicate&) const = default;
};

enum class FormulaKind {
  True,
  False,
  Atomic,
  Not,
  Or,
  Until,
  Freeze,
  // sugar, removed by desugar()
  And,
  Implies,
  Eventually,
  Globally,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  LinearPredicate pred;  // Atomic only
  Rat lo, hi;            // Until/Eventually/Globally only
  FormulaPtr left, right;

  static FormulaPtr make_true();
  static FormulaPtr make_false();
  static FormulaPtr atomic(LinearPredicate p);
  static FormulaPtr negate(FormulaPtr f);
  static FormulaPtr disjunction(FormulaPtr l, FormulaPtr r);
  static FormulaPtr conjunction(FormulaPtr l, FormulaPtr r);
  static FormulaPtr implies(FormulaPtr l, FormulaPtr r);
  static FormulaPtr until(Rat lo, Rat hi, FormulaPtr l, FormulaPtr r);
  static FormulaPtr eventually(Rat lo, Rat hi, FormulaPtr f);
  static FormulaPtr globally(Rat lo, Rat hi, FormulaPtr f);
  static FormulaPtr freeze(FormulaPtr f);
};

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

// Parses the ASCII surface syntax. "<="/">=" are normalized to strict
// comparators; when that happens a note is appended to *warnings.
// "=" is rejected.
FormulaPtr parse(const std::string& text, const SignalSchema& schema,
                 std::vector<std::string>* warnings = nullptr);

std::string pretty_print(const FormulaPtr& f, const SignalSchema& schema);

// Rewrites And/Implies/Eventually/Globally so that only
// True/False/Atomic/Not/Or/Until/Freeze remain.
FormulaPtr desugar(const FormulaPtr& f);

// Sufficient signal length l(f).
Rat required_length(const FormulaPtr& f);

}  // namespace stlstar
