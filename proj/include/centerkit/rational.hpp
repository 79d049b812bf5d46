#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace centerkit {

/// Exact arbitrary-precision rational number, always kept in lowest terms
/// with a positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I n) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>)
      value_ = mpq_class(mpz_class(static_cast<long>(n)));
    else
      value_ = mpq_class(mpz_class(static_cast<unsigned long>(n)));
  }

  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }

  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double d) {
    if (!std::isfinite(d)) throw std::domain_error("Rational: non-finite double");
    return Rational(mpq_class(d));
  }

  /// Parses "7", "-3/10", "0.125", "-1.5e-3". Decimals are read exactly.
  static Rational parse(std::string_view text) {
    auto fail = [&]() -> Rational {
      throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    };
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return fail();

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      auto num = parse_integer(s.substr(0, slash));
      auto den = parse_integer(s.substr(slash + 1));
      if (!num || !den) return fail();
      if (*den == 0) throw std::domain_error("Rational: zero denominator");
      return Rational(*num, *den);
    }

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      auto exp_val = parse_integer(exp_text);
      if (!exp_val || !exp_val->fits_slong_p() || exp_text.empty()) return fail();
      exponent = exp_val->get_si();
      s = s.substr(0, e);
    }
    std::string digits;
    bool seen_point = false;
    bool any_digit = false;
    for (char c : s) {
      if (c == '.') {
        if (seen_point) return fail();
        seen_point = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        any_digit = true;
        if (seen_point) --exponent;
      } else {
        return fail();
      }
    }
    if (!any_digit) return fail();
    mpz_class mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    return exponent >= 0 ? Rational(mantissa * scale, mpz_class(1)) : Rational(mantissa, scale);
  }

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }
  std::string str() const { return value_.get_str(); }

  Rational abs() const { return Rational(mpq_class(::abs(value_))); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static std::optional<mpz_class> parse_integer(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::string buf(s);
    std::size_t start = (buf[0] == '+' || buf[0] == '-') ? 1 : 0;
    if (start == buf.size()) return std::nullopt;
    for (std::size_t i = start; i < buf.size(); ++i)
      if (buf[i] < '0' || buf[i] > '9') return std::nullopt;
    if (buf[0] == '+') buf.erase(0, 1);
    return mpz_class(buf, 10);
  }

  mpq_class value_{0};
};

/// Exact square root when the argument is the square of a rational.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  mpz_class n = r.numerator(), d = r.denominator();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rational(sn, sd);
}

/// Best rational approximation with denominator <= max_den (continued fractions).
inline Rational best_rational(double x, long max_den) {
  if (!std::isfinite(x)) throw std::domain_error("best_rational: non-finite input");
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(frac);
    if (std::fabs(a) > 1e15) break;
    long ai = static_cast<long>(a);
    long k2 = ai * k1 + k0;
    if (k2 > max_den || k2 <= 0) break;
    long h2 = ai * h1 + h0;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    double rem = frac - a;
    if (rem < 1e-300) break;
    frac = 1.0 / rem;
  }
  if (k1 == 0) return Rational(static_cast<long>(std::llround(x)));
  return Rational(h1, k1);
}

}  // namespace centerkit
