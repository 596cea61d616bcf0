#include "stlstar/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace stlstar {

SignalSchema::SignalSchema(std::vector<std::string> n) : names(std::move(n)) {
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) throw std::invalid_argument("empty variable name in schema");
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate variable name in schema: " + name);
  }
}

int SignalSchema::index_of(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

FormulaPtr make_node(FormulaKind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

}  // namespace

FormulaPtr Formula::make_true() { return make_node(FormulaKind::True); }
FormulaPtr Formula::make_false() { return make_node(FormulaKind::False); }

FormulaPtr Formula::atomic(LinearPredicate p) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Atomic;
  f->pred = std::move(p);
  return f;
}

FormulaPtr Formula::negate(FormulaPtr c) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Not;
  f->left = std::move(c);
  return f;
}

FormulaPtr Formula::disjunction(FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Or;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr Formula::conjunction(FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::And;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr Formula::implies(FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Implies;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

static void check_interval(const Rat& lo, const Rat& hi) {
  if (lo < 0) throw std::invalid_argument("temporal interval must start at >= 0");
  if (!(lo < hi))
    throw std::invalid_argument("temporal interval must be nonsingular with lo < hi");
}

FormulaPtr Formula::until(Rat lo, Rat hi, FormulaPtr l, FormulaPtr r) {
  check_interval(lo, hi);
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Until;
  f->lo = std::move(lo);
  f->hi = std::move(hi);
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr Formula::eventually(Rat lo, Rat hi, FormulaPtr c) {
  check_interval(lo, hi);
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Eventually;
  f->lo = std::move(lo);
  f->hi = std::move(hi);
  f->left = std::move(c);
  return f;
}

FormulaPtr Formula::globally(Rat lo, Rat hi, FormulaPtr c) {
  check_interval(lo, hi);
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Globally;
  f->lo = std::move(lo);
  f->hi = std::move(hi);
  f->left = std::move(c);
  return f;
}

FormulaPtr Formula::freeze(FormulaPtr c) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Freeze;
  f->left = std::move(c);
  return f;
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
      return true;
    case FormulaKind::Atomic:
      return a->pred == b->pred;
    case FormulaKind::Not:
    case FormulaKind::Freeze:
      return structurally_equal(a->left, b->left);
    case FormulaKind::Or:
    case FormulaKind::And:
    case FormulaKind::Implies:
      return structurally_equal(a->left, b->left) &&
             structurally_equal(a->right, b->right);
    case FormulaKind::Until:
      return a->lo == b->lo && a->hi == b->hi &&
             structurally_equal(a->left, b->left) &&
             structurally_equal(a->right, b->right);
    case FormulaKind::Eventually:
    case FormulaKind::Globally:
      return a->lo == b->lo && a->hi == b->hi &&
             structurally_equal(a->left, b->left);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  End,
  Ident,        // possibly frozen (trailing '*' with no whitespace)
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Plus,
  Minus,
  Star,
  Bang,
  OrOr,
  AndAnd,
  Arrow,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  KwU,
  KwF,
  KwG,
  KwTrue,
  KwFalse,
};

struct Token {
  Tok kind;
  std::string text;
  bool frozen = false;
  size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  const size_t n = s.size();
  while (i < n) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t start = i;
    auto push = [&](Tok k, size_t len) {
      out.push_back({k, s.substr(start, len), false, start});
      i = start + len;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string word = s.substr(i, j - i);
      if (word == "U") {
        push(Tok::KwU, j - i);
      } else if (word == "F") {
        push(Tok::KwF, j - i);
      } else if (word == "G") {
        push(Tok::KwG, j - i);
      } else if (word == "true") {
        push(Tok::KwTrue, j - i);
      } else if (word == "false") {
        push(Tok::KwFalse, j - i);
      } else {
        bool frozen = j < n && s[j] == '*';
        out.push_back({Tok::Ident, word, frozen, start});
        i = frozen ? j + 1 : j;
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      size_t j = i;
      while (j < n && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      if (j < n && (s[j] == 'e' || s[j] == 'E')) {
        size_t k = j + 1;
        if (k < n && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < n && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < n && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      push(Tok::Number, j - i);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, 1); break;
      case ')': push(Tok::RParen, 1); break;
      case '[': push(Tok::LBracket, 1); break;
      case ']': push(Tok::RBracket, 1); break;
      case ',': push(Tok::Comma, 1); break;
      case '+': push(Tok::Plus, 1); break;
      case '-':
        if (i + 1 < n && s[i + 1] == '>') push(Tok::Arrow, 2);
        else push(Tok::Minus, 1);
        break;
      case '*': push(Tok::Star, 1); break;
      case '!': push(Tok::Bang, 1); break;
      case '=': push(Tok::Eq, 1); break;
      case '<':
        if (i + 1 < n && s[i + 1] == '=') push(Tok::Le, 2);
        else push(Tok::Lt, 1);
        break;
      case '>':
        if (i + 1 < n && s[i + 1] == '=') push(Tok::Ge, 2);
        else push(Tok::Gt, 1);
        break;
      case '|':
        if (i + 1 < n && s[i + 1] == '|') push(Tok::OrOr, 2);
        else throw ParseError("unexpected '|'", i);
        break;
      case '&':
        if (i + 1 < n && s[i + 1] == '&') push(Tok::AndAnd, 2);
        else throw ParseError("unexpected '&'", i);
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::End, "", false, n});
  return out;
}

struct LinExpr {
  std::map<int, double> plain;
  std::map<int, double> frozen;
  double constant = 0.0;
};

class Parser {
 public:
  Parser(const std::string& text, const SignalSchema& schema,
         std::vector<std::string>* warnings)
      : schema_(schema), warnings_(warnings), tokens_(tokenize(text)) {}

  FormulaPtr run() {
    FormulaPtr f = parse_implies();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  const SignalSchema& schema_;
  std::vector<std::string>* warnings_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;

  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const std::string& what) {
    if (!accept(k)) throw ParseError("expected " + what, peek().pos);
  }

  FormulaPtr parse_implies() {
    FormulaPtr f = parse_or();
    if (accept(Tok::Arrow)) f = Formula::implies(f, parse_implies());
    return f;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (accept(Tok::OrOr)) f = Formula::disjunction(f, parse_and());
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_until();
    while (accept(Tok::AndAnd)) f = Formula::conjunction(f, parse_until());
    return f;
  }

  FormulaPtr parse_until() {
    FormulaPtr f = parse_unary();
    if (peek().kind == Tok::KwU) {
      size_t at = next().pos;
      auto [lo, hi] = parse_interval(at);
      FormulaPtr rhs = parse_until();  // right-associative
      f = Formula::until(lo, hi, f, rhs);
    }
    return f;
  }

  std::pair<Rat, Rat> parse_interval(size_t at) {
    expect(Tok::LBracket, "'[' after temporal operator");
    Rat lo = parse_number_rat();
    expect(Tok::Comma, "','");
    Rat hi = parse_number_rat();
    expect(Tok::RBracket, "']'");
    if (lo < 0 || !(lo < hi))
      throw ParseError("temporal interval must satisfy 0 <= lo < hi", at);
    return {lo, hi};
  }

  Rat parse_number_rat() {
    bool neg = accept(Tok::Minus);
    if (peek().kind != Tok::Number) throw ParseError("expected number", peek().pos);
    Rat r = parse_rational(next().text);
    return neg ? -r : r;
  }

  FormulaPtr parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang:
        next();
        return Formula::negate(parse_unary());
      case Tok::Star: {
        size_t at = next().pos;
        if (peek().kind != Tok::LParen)
          throw ParseError("freeze operator must be written '*( ... )'", at);
        next();
        FormulaPtr f = parse_implies();
        expect(Tok::RParen, "')'");
        return Formula::freeze(f);
      }
      case Tok::KwF: {
        size_t at = next().pos;
        auto [lo, hi] = parse_interval(at);
        return Formula::eventually(lo, hi, parse_unary());
      }
      case Tok::KwG: {
        size_t at = next().pos;
        auto [lo, hi] = parse_interval(at);
        return Formula::globally(lo, hi, parse_unary());
      }
      case Tok::LParen: {
        next();
        FormulaPtr f = parse_implies();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::KwTrue:
        next();
        return Formula::make_true();
      case Tok::KwFalse:
        next();
        return Formula::make_false();
      case Tok::Ident:
      case Tok::Number:
      case Tok::Minus:
        return parse_atom();
      default:
        throw ParseError("expected formula", t.pos);
    }
  }

  FormulaPtr parse_atom() {
    size_t at = peek().pos;
    LinExpr lhs = parse_linexpr();
    Tok cmp = peek().kind;
    size_t cmp_pos = peek().pos;
    if (cmp == Tok::Eq)
      throw ParseError(
          "equality comparator is unsupported; replace 'x = b' by an interval "
          "such as 'x >= b-d && x <= b+d'",
          cmp_pos);
    if (cmp != Tok::Lt && cmp != Tok::Le && cmp != Tok::Gt && cmp != Tok::Ge)
      throw ParseError("expected comparison operator", cmp_pos);
    next();
    LinExpr rhs = parse_linexpr();

    if ((cmp == Tok::Le || cmp == Tok::Ge) && warnings_)
      warnings_->push_back(
          "non-strict comparator at position " + std::to_string(cmp_pos) +
          " normalized to a strict one (boundary points carry no information)");

    LinearPredicate p;
    for (auto& [i, c] : lhs.plain) p.plain_coeffs[i] += c;
    for (auto& [i, c] : rhs.plain) p.plain_coeffs[i] -= c;
    for (auto& [i, c] : lhs.frozen) p.frozen_coeffs[i] += c;
    for (auto& [i, c] : rhs.frozen) p.frozen_coeffs[i] -= c;
    std::erase_if(p.plain_coeffs, [](const auto& kv) { return kv.second == 0.0; });
    std::erase_if(p.frozen_coeffs, [](const auto& kv) { return kv.second == 0.0; });
    p.bound = rhs.constant - lhs.constant;
    p.cmp = (cmp == Tok::Lt || cmp == Tok::Le) ? Cmp::LT : Cmp::GT;
    if (p.plain_coeffs.empty() && p.frozen_coeffs.empty())
      throw ParseError("atomic predicate references no variable", at);
    // canonical sign: the first coefficient is positive, so that e.g.
    // '3 < x' and 'x > 3' normalize identically
    double lead = p.plain_coeffs.empty() ? p.frozen_coeffs.begin()->second
                                         : p.plain_coeffs.begin()->second;
    if (lead < 0) {
      for (auto& [i, c] : p.plain_coeffs) c = -c;
      for (auto& [i, c] : p.frozen_coeffs) c = -c;
      p.bound = -p.bound + 0.0;  // avoid -0
      p.cmp = p.cmp == Cmp::LT ? Cmp::GT : Cmp::LT;
    }
    return Formula::atomic(std::move(p));
  }

  LinExpr parse_linexpr() {
    LinExpr e;
    double sign = accept(Tok::Minus) ? -1.0 : 1.0;
    parse_term(e, sign);
    for (;;) {
      if (accept(Tok::Plus)) parse_term(e, 1.0);
      else if (accept(Tok::Minus)) parse_term(e, -1.0);
      else break;
    }
    return e;
  }

  void parse_term(LinExpr& e, double sign) {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      Token num = next();
      double v = std::strtod(num.text.c_str(), nullptr);
      if (peek().kind == Tok::Star)
        throw ParseError(
            "explicit multiplication is not allowed; write the coefficient by "
            "juxtaposition, e.g. '2 m1'",
            peek().pos);
      if (peek().kind == Tok::Ident) {
        add_var(e, next(), sign * v);
      } else {
        e.constant += sign * v;
      }
    } else if (t.kind == Tok::Ident) {
      add_var(e, next(), sign);
    } else {
      throw ParseError("expected term", t.pos);
    }
  }

  void add_var(LinExpr& e, const Token& id, double coeff) {
    int idx = schema_.index_of(id.text);
    if (idx < 0)
      throw ParseError("unknown variable '" + id.text + "'", id.pos);
    auto& m = id.frozen ? e.frozen : e.plain;
    m[idx] += coeff;
  }
};

std::string num_to_string(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void print_signed_number(std::string& out, double v, bool first) {
  if (first) {
    if (v < 0) out += "-";
  } else {
    out += v < 0 ? " - " : " + ";
  }
  out += num_to_string(std::fabs(v));
}

void print_term(std::string& out, double coeff, const std::string& name,
                bool frozen, bool first) {
  if (first) {
    if (coeff < 0) out += "-";
  } else {
    out += coeff < 0 ? " - " : " + ";
  }
  double a = std::fabs(coeff);
  if (a != 1.0) {
    out += num_to_string(a);
    out += " ";
  }
  out += name;
  if (frozen) out += "*";
}

std::string print_pred(const LinearPredicate& p, const SignalSchema& schema) {
  std::string out;
  bool first = true;
  for (const auto& [i, c] : p.plain_coeffs) {
    print_term(out, c, schema.names.at(i), false, first);
    first = false;
  }
  for (const auto& [i, c] : p.frozen_coeffs) {
    print_term(out, c, schema.names.at(i), true, first);
    first = false;
  }
  out += p.cmp == Cmp::LT ? " < " : " > ";
  out += num_to_string(p.bound);
  return out;
}

}  // namespace

FormulaPtr parse(const std::string& text, const SignalSchema& schema,
                 std::vector<std::string>* warnings) {
  return Parser(text, schema, warnings).run();
}

std::string pretty_print(const FormulaPtr& f, const SignalSchema& schema) {
  switch (f->kind) {
    case FormulaKind::True:
      return "true";
    case FormulaKind::False:
      return "false";
    case FormulaKind::Atomic:
      return print_pred(f->pred, schema);
    case FormulaKind::Not:
      return "!(" + pretty_print(f->left, schema) + ")";
    case FormulaKind::Or:
      return "(" + pretty_print(f->left, schema) + ") || (" +
             pretty_print(f->right, schema) + ")";
    case FormulaKind::And:
      return "(" + pretty_print(f->left, schema) + ") && (" +
             pretty_print(f->right, schema) + ")";
    case FormulaKind::Implies:
      // no surface syntax; printed via its definition
      return "!(" + pretty_print(f->left, schema) + ") || (" +
             pretty_print(f->right, schema) + ")";
    case FormulaKind::Until:
      return "(" + pretty_print(f->left, schema) + ") U[" +
             rat_to_string(f->lo) + "," + rat_to_string(f->hi) + "] (" +
             pretty_print(f->right, schema) + ")";
    case FormulaKind::Eventually:
      return "F[" + rat_to_string(f->lo) + "," + rat_to_string(f->hi) + "] (" +
             pretty_print(f->left, schema) + ")";
    case FormulaKind::Globally:
      return "G[" + rat_to_string(f->lo) + "," + rat_to_string(f->hi) + "] (" +
             pretty_print(f->left, schema) + ")";
    case FormulaKind::Freeze:
      return "*(" + pretty_print(f->left, schema) + ")";
  }
  return "";
}

FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atomic:
      return f;
    case FormulaKind::Not:
      return Formula::negate(desugar(f->left));
    case FormulaKind::Freeze:
      return Formula::freeze(desugar(f->left));
    case FormulaKind::Or:
      return Formula::disjunction(desugar(f->left), desugar(f->right));
    case FormulaKind::And:
      return Formula::negate(Formula::disjunction(
          Formula::negate(desugar(f->left)), Formula::negate(desugar(f->right))));
    case FormulaKind::Implies:
      return Formula::disjunction(Formula::negate(desugar(f->left)),
                                  desugar(f->right));
    case FormulaKind::Until:
      return Formula::until(f->lo, f->hi, desugar(f->left), desugar(f->right));
    case FormulaKind::Eventually:
      return Formula::until(f->lo, f->hi, Formula::make_true(), desugar(f->left));
    case FormulaKind::Globally:
      return Formula::negate(Formula::until(f->lo, f->hi, Formula::make_true(),
                                            Formula::negate(desugar(f->left))));
  }
  return f;
}

Rat required_length(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atomic:
      return Rat(0);
    case FormulaKind::Not:
    case FormulaKind::Freeze:
      return required_length(f->left);
    case FormulaKind::Or:
    case FormulaKind::And:
    case FormulaKind::Implies:
      return std::max(required_length(f->left), required_length(f->right));
    case FormulaKind::Until:
      return std::max(required_length(f->left), required_length(f->right)) + f->hi;
    case FormulaKind::Eventually:
    case FormulaKind::Globally:
      return required_length(f->left) + f->hi;
  }
  return Rat(0);
}

}  // namespace stlstar
