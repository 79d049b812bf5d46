#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "centerkit/rational.hpp"

namespace centerkit {

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)), d a
/// non-square positive rational. Elements with b == 0 are plain rationals and
/// combine with any radicand.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  QuadSurd(I n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  QuadSurd(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (b_.is_zero()) d_ = Rational(0);
    else if (d_.sign() <= 0 || rational_sqrt(d_)) throw std::invalid_argument("QuadSurd: radicand must be a positive non-square");
  }

  static QuadSurd sqrt_of(const Rational& d) {
    if (auto r = rational_sqrt(d)) return QuadSurd(*r);
    return QuadSurd(Rational(0), Rational(1), d);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const Rational& radicand() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(d_.to_double()); }

  QuadSurd conjugate() const { return QuadSurd(a_, -b_, d_, raw_tag{}); }

  QuadSurd& operator+=(const QuadSurd& o) {
    const Rational d = radicand_with(o);
    a_ += o.a_;
    b_ += o.b_;
    d_ = b_.is_zero() ? Rational(0) : d;
    return *this;
  }
  QuadSurd& operator-=(const QuadSurd& o) { return *this += -o; }
  QuadSurd& operator*=(const QuadSurd& o) {
    const Rational d = radicand_with(o);
    Rational a = a_ * o.a_ + b_ * o.b_ * d;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = b_.is_zero() ? Rational(0) : d;
    return *this;
  }
  QuadSurd& operator/=(const QuadSurd& o) {
    const Rational d = radicand_with(o);
    Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
    if (norm.is_zero()) throw std::domain_error("QuadSurd: division by zero");
    *this *= o.conjugate();
    a_ /= norm;
    b_ /= norm;
    return *this;
  }

  friend QuadSurd operator+(QuadSurd a, const QuadSurd& b) { return a += b; }
  friend QuadSurd operator-(QuadSurd a, const QuadSurd& b) { return a -= b; }
  friend QuadSurd operator*(QuadSurd a, const QuadSurd& b) { return a *= b; }
  friend QuadSurd operator/(QuadSurd a, const QuadSurd& b) { return a /= b; }
  friend QuadSurd operator-(const QuadSurd& x) { return QuadSurd(-x.a_, -x.b_, x.d_, raw_tag{}); }
  friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadSurd& x) {
    os << x.a_;
    if (!x.b_.is_zero()) os << " + (" << x.b_ << ")*sqrt(" << x.d_ << ")";
    return os;
  }

 private:
  struct raw_tag {};
  QuadSurd(Rational a, Rational b, Rational d, raw_tag) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

  Rational radicand_with(const QuadSurd& o) const {
    if (b_.is_zero()) return o.d_;
    if (o.b_.is_zero()) return d_;
    if (d_ != o.d_) throw std::invalid_argument("QuadSurd: mixed radicands");
    return d_;
  }

  Rational a_{0};
  Rational b_{0};
  Rational d_{0};
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static std::string to_string(const Rational& v) { return v.str(); }
};

template <>
struct scalar_traits<QuadSurd> {
  static constexpr bool exact = true;
  static bool is_zero(const QuadSurd& v) { return v.is_zero(); }
  static double to_double(const QuadSurd& v) { return v.to_double(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static std::string to_string(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
};

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

/// Converts between the supported coefficient kinds. Conversions into an
/// exact type from double are exact (dyadic).
template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double>) {
    return scalar_traits<From>::to_double(v);
  } else if constexpr (std::is_same_v<From, double>) {
    return To(Rational::from_double(v));
  } else {
    return To(v);
  }
}

/// Zero test used by classifiers: exact for exact scalars, relative
/// |v| <= eps * scale for floating point.
template <class T>
bool near_zero(const T& v, double scale, double eps) {
  if constexpr (is_exact_v<T>) {
    (void)scale;
    (void)eps;
    return scalar_traits<T>::is_zero(v);
  } else {
    return std::fabs(v) <= eps * scale;
  }
}

template <class T>
double abs_double(const T& v) {
  return std::fabs(scalar_traits<T>::to_double(v));
}

}  // namespace centerkit
