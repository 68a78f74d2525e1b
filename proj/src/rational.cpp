#include "ftap/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ftap {

namespace {

bool allDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string stripSign(std::string_view& s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    std::string sign = s.front() == '-' ? "-" : "";
    s.remove_prefix(1);
    return sign;
  }
  return "";
}

}  // namespace

Rational parseRational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: \"" + std::string(text) + "\"");
  };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string sign = stripSign(s);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!allDigits(num) || !allDigits(den)) return fail();
    boost::multiprecision::mpz_int d{std::string(den)};
    if (d == 0) return fail();
    boost::multiprecision::mpz_int n{sign + std::string(num)};
    return Rational(n, d);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    if (!whole.empty() && !allDigits(whole)) return fail();
    if (!frac.empty() && !allDigits(frac)) return fail();
    boost::multiprecision::mpz_int n(sign + std::string(whole.empty() ? "0" : whole) +
                                     std::string(frac));
    boost::multiprecision::mpz_int d = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) d *= 10;
    return Rational(n, d);
  }

  if (!allDigits(s)) return fail();
  return Rational(boost::multiprecision::mpz_int(sign + std::string(s)));
}

std::string toString(const Rational& value) { return value.str(); }

double toDouble(const Rational& value) { return value.convert_to<double>(); }

Rational ceil(const Rational& value) {
  boost::multiprecision::mpz_int num = numerator(value);
  boost::multiprecision::mpz_int den = denominator(value);
  boost::multiprecision::mpz_int q = num / den;  // truncates toward zero
  if (q * den != num && num > 0) q += 1;
  return Rational(q);
}

const Rational& ExtendedRational::value() const {
  if (infinite_) throw std::logic_error("value() on an infinite ExtendedRational");
  return value_;
}

std::string toString(const ExtendedRational& value) {
  return value.isFinite() ? toString(value.value()) : std::string("inf");
}

}  // namespace ftap
