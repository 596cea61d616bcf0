#include "stlstar/rational.hpp"

#include <cctype>

namespace stlstar {

Rat parse_rational(const std::string& text) {
  // "p/q" with exact integer or decimal parts on either side
  if (size_t slash = text.find('/'); slash != std::string::npos) {
    Rat den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("bad number: '" + text + "'");
    return parse_rational(text.substr(0, slash)) / den;
  }
  size_t i = 0;
  const size_t n = text.size();
  auto fail = [&] { throw std::invalid_argument("bad number: '" + text + "'"); };

  bool neg = false;
  if (i < n && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  long frac_digits = 0;
  bool any_digit = false;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mantissa = mantissa * 10 + (text[i] - '0');
    any_digit = true;
    ++i;
  }
  if (i < n && text[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mantissa = mantissa * 10 + (text[i] - '0');
      ++frac_digits;
      any_digit = true;
      ++i;
    }
  }
  if (!any_digit) fail();
  long exp10 = 0;
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
      eneg = text[i] == '-';
      ++i;
    }
    if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i]))) fail();
    long e = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + (text[i] - '0');
      if (e > 100000) fail();
      ++i;
    }
    exp10 = eneg ? -e : e;
  }
  if (i != n) fail();

  long shift = exp10 - frac_digits;
  BigInt num = mantissa;
  BigInt den = 1;
  if (shift >= 0) {
    num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift));
  } else {
    den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift));
  }
  if (neg) num = -num;
  return Rat(num, den);
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

std::string rat_to_string(const Rat& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  // Count factors of 2 and 5 in the denominator.
  BigInt d = den;
  long twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return num.str() + "/" + den.str();

  long digits = std::max(twos, fives);
  BigInt scaled = num * boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
  scaled /= den;  // exact by construction
  bool neg = scaled < 0;
  std::string s = BigInt(boost::multiprecision::abs(scaled)).str();
  if (digits > 0) {
    if (static_cast<long>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return (neg ? "-" : "") + s;
}

}  // namespace stlstar
