#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace stlstar {

// Exact rational time. Signal breakpoints and temporal-interval endpoints
// are kept exact; geometry itself works in doubles.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses a decimal literal ("12", "-3.75", "1e-3", "2.5e2") into an exact
// rational. Throws std::invalid_argument on malformed input.
Rat parse_rational(const std::string& text);

double rat_to_double(const Rat& r);

// Renders exactly. Uses plain decimal notation when the denominator is of
// the form 2^a 5^b, otherwise "p/q".
std::string rat_to_string(const Rat& r);

}  // namespace stlstar
