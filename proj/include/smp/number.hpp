#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace smp {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);
std::string to_string(const Rational& r);

// Parses "p/q", integers and decimals ("0.125", "-3e-2") into an exact rational.
Rational parse_rational(std::string_view text);

/// A real-valued parameter (probability, weight, cost). Always carries a
/// floating-point value; carries an exact rational twin when it was given
/// exactly (a rational or decimal string, or an integer).
class Number {
 public:
  Number() = default;
  Number(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Number(int v) : value_(v), exact_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Number(Rational r) : value_(to_double(r)), exact_(std::move(r)) {}  // NOLINT

  static Number parse(std::string_view text) { return Number(parse_rational(text)); }

  double value() const { return value_; }
  bool is_exact() const { return exact_.has_value(); }
  // Throws ValidationError when no exact twin exists.
  const Rational& exact() const;

  // "p/q" (or "p") when exact, shortest round-tripping decimal otherwise.
  std::string to_string() const;

  friend bool operator==(const Number& a, const Number& b) {
    return a.value_ == b.value_ && a.exact_ == b.exact_;
  }

 private:
  double value_ = 0.0;
  std::optional<Rational> exact_;
};

}  // namespace smp
