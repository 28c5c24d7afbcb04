#include "smp/number.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "smp/error.hpp"

namespace smp {

using boost::multiprecision::cpp_int;

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

cpp_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed number '" + std::string(whole) + "'");
    }
  }
  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return cpp_int(std::string(digits.substr(first)));
}

cpp_int pow10(long exponent) {
  cpp_int r = 1;
  for (long i = 0; i < exponent; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational result;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const cpp_int num = parse_integer(text.substr(0, slash), whole);
    const cpp_int den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    result = Rational(num, den);
  } else {
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (exp_text.size() > 6) throw ParseError("exponent out of range in '" + std::string(whole) + "'");
      exponent = static_cast<long>(parse_integer(exp_text, whole));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string digits;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      const std::string_view int_part = text.substr(0, dot);
      const std::string_view frac_part = text.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
      digits = std::string(int_part) + std::string(frac_part);
      exponent -= static_cast<long>(frac_part.size());
    } else {
      digits = std::string(text);
    }
    const cpp_int mantissa = parse_integer(digits, whole);
    if (exponent >= 0) {
      result = Rational(mantissa * pow10(exponent));
    } else {
      result = Rational(mantissa, pow10(-exponent));
    }
  }
  return negative ? Rational(-result) : result;
}

const Rational& Number::exact() const {
  if (!exact_) throw ValidationError("number " + to_string() + " has no exact rational value");
  return *exact_;
}

std::string Number::to_string() const {
  if (exact_) return smp::to_string(*exact_);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

}  // namespace smp
