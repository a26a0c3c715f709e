#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace corners {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Hypersurface / coordinate names.
using Label = std::string;

// Malformed input: unknown labels, wrong dimensions, invalid documents.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A requested operation is not defined for valid input (center not a cone,
// monomial not expressible in target coordinates, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_integral(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline Integer to_integer(const Rational& q) {
  if (!is_integral(q)) throw DomainError("non-integral rational " + q.str());
  return boost::multiprecision::numerator(q);
}

inline std::string to_string(const Integer& n) { return n.str(); }
inline std::string to_string(const Rational& q) { return q.str(); }

// Parses "3", "-2", "5/7".
inline Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s.c_str()));
    Integer num(s.substr(0, slash).c_str()), den(s.substr(slash + 1).c_str());
    if (den == 0) throw InputError("zero denominator in " + s);
    return Rational(num, den);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("not a rational number: '" + s + "'");
  }
}

}  // namespace corners
