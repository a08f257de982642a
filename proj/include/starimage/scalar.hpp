#ifndef STARIMAGE_SCALAR_HPP
#define STARIMAGE_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace starimage {

/// Exact rational scalar. Always stored in lowest terms, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Signals a state the theory rules out; reaching it means a bug, not bad input.
struct InconsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Backend-specific scalar queries. Zero tests on the real backend are
/// scale-aware: |x| <= tol * max(1, scale).
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  static bool is_zero(const Rational& x, const Rational& = 0) { return x == 0; }
  static bool equal(const Rational& x, const Rational& y, const Rational& = 0) {
    return x == y;
  }
  static double to_double(const Rational& x) {
    return x.template convert_to<double>();
  }
  static std::string to_string(const Rational& x) {
    std::ostringstream os;
    os << x;
    return os.str();
  }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr double tol = 1e-9;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static bool is_zero(double x, double scale = 0.0) {
    return std::abs(x) <= tol * std::max(1.0, std::abs(scale));
  }
  static bool equal(double x, double y, double scale = 0.0) {
    return is_zero(x - y, scale);
  }
  static double to_double(double x) { return x; }
  static std::string to_string(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
  }
};

/// Parses "p", "-p" or "p/q" into an exact rational.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw DomainError("rational with zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw DomainError("malformed rational: " + s);
  }
}

}  // namespace starimage

#endif
