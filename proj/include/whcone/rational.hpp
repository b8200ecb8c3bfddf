#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace whcone {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Always "p/q", including "0/1" and "3/1".
std::string to_fraction(const Rational& q);

/// Accepts "p/q", integers and finite decimals such as "-1.5".
Rational parse_rational(const std::string& text);

std::vector<std::string> to_fractions(const std::vector<Rational>& v);

} // namespace whcone
