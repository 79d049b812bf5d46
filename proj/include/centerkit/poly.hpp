#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "centerkit/scalar.hpp"

namespace centerkit {

/// Dense univariate polynomial; coeffs()[k] multiplies t^k. The zero
/// polynomial has an empty coefficient vector and the leading coefficient of
/// any other polynomial is nonzero, so equality is structural.
template <class T>
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly1(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly1 constant(T c) { return Poly1(std::vector<T>{std::move(c)}); }
  static Poly1 monomial(T c, int degree) {
    std::vector<T> v(static_cast<std::size_t>(degree) + 1, T(0));
    v.back() = std::move(c);
    return Poly1(std::move(v));
  }
  static Poly1 variable() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : T(0);
  }
  const T& leading() const { return c_.back(); }

  Poly1 derivative() const {
    std::vector<T> v;
    for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k] * T(static_cast<long>(k)));
    return Poly1(std::move(v));
  }

  /// Primitive with zero constant term.
  Poly1 antiderivative() const {
    if (c_.empty()) return {};
    std::vector<T> v(c_.size() + 1, T(0));
    for (std::size_t k = 0; k < c_.size(); ++k) v[k + 1] = c_[k] / T(static_cast<long>(k + 1));
    return Poly1(std::move(v));
  }

  /// Horner evaluation; coefficients are converted to the point's scalar kind.
  template <class S>
  S operator()(const S& t) const {
    S acc = S(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + scalar_cast<S>(*it);
    return acc;
  }

  template <class S>
  Poly1<S> convert() const {
    std::vector<S> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(scalar_cast<S>(x));
    return Poly1<S>(std::move(v));
  }

  Poly1& operator+=(const Poly1& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly1& operator-=(const Poly1& o) { return *this += -o; }
  Poly1& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend Poly1 operator+(Poly1 a, const Poly1& b) { return a += b; }
  friend Poly1 operator-(Poly1 a, const Poly1& b) { return a -= b; }
  friend Poly1 operator-(Poly1 a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Poly1 operator*(Poly1 a, const T& s) { return a *= s; }
  friend Poly1 operator*(const T& s, Poly1 a) { return a *= s; }
  friend Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly1(std::move(v));
  }
  friend bool operator==(const Poly1& a, const Poly1& b) { return a.c_ == b.c_; }

  std::string str(const char* var = "y") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (scalar_traits<T>::is_zero(c_[k])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[k] << ")";
      if (k >= 1) os << "*" << var;
      if (k >= 2) os << "^" << k;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && scalar_traits<T>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

/// Quotient and remainder of polynomial division; divisor must be nonzero.
template <class T>
std::pair<Poly1<T>, Poly1<T>> divmod(const Poly1<T>& a, const Poly1<T>& b) {
  if (b.is_zero()) throw std::domain_error("divmod: zero divisor");
  std::vector<T> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly1<T>{}, a};
  std::vector<T> quot(static_cast<std::size_t>(a.degree() - db + 1), T(0));
  for (int k = a.degree(); k >= db; --k) {
    T q = rem[static_cast<std::size_t>(k)] / b.leading();
    quot[static_cast<std::size_t>(k - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeff(j);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly1<T>(std::move(quot)), Poly1<T>(std::move(rem))};
}

/// True iff every odd-degree coefficient vanishes.
template <class T>
bool is_even(const Poly1<T>& p) {
  for (int k = 1; k <= p.degree(); k += 2)
    if (!scalar_traits<T>::is_zero(p.coeff(k))) return false;
  return true;
}

/// Finds Qt with Q = Qt(W) by peeling off the W-adic digits of Q; every digit
/// must be a constant. Absent when no such factorisation exists.
template <class T>
std::optional<Poly1<T>> compose_through(const Poly1<T>& q, const Poly1<T>& w) {
  if (w.degree() < 1) throw std::invalid_argument("compose_through: W must be nonconstant");
  std::vector<T> digits;
  Poly1<T> rest = q;
  while (!rest.is_zero()) {
    auto [quot, rem] = divmod(rest, w);
    if (rem.degree() > 0) return std::nullopt;
    digits.push_back(rem.coeff(0));
    rest = std::move(quot);
  }
  return Poly1<T>(std::move(digits));
}

/// Composition p(r(t)).
template <class T>
Poly1<T> compose(const Poly1<T>& p, const Poly1<T>& r) {
  Poly1<T> acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc * r + Poly1<T>::constant(p.coeff(k));
  return acc;
}

enum class Var { x, y };

/// Sparse bivariate polynomial keyed by (deg_x, deg_y). Zero coefficients
/// are never stored.
template <class T>
class Poly2 {
 public:
  using Key = std::pair<int, int>;

  Poly2() = default;

  static Poly2 constant(T c) { return monomial(std::move(c), 0, 0); }
  static Poly2 monomial(T c, int i, int j) {
    Poly2 p;
    p.add_term(i, j, std::move(c));
    return p;
  }
  static Poly2 x() { return monomial(T(1), 1, 0); }
  static Poly2 y() { return monomial(T(1), 0, 1); }

  /// Embeds a univariate polynomial in the chosen variable.
  static Poly2 lift(const Poly1<T>& p, Var v) {
    Poly2 out;
    for (int k = 0; k <= p.degree(); ++k) {
      if (v == Var::x) out.add_term(k, 0, p.coeff(k));
      else out.add_term(0, k, p.coeff(k));
    }
    return out;
  }

  const std::map<Key, T>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  T coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? T(0) : it->second;
  }

  /// -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
  }

  /// Sum of the terms of total degree exactly n.
  Poly2 homogeneous_part(int n) const {
    Poly2 out;
    for (const auto& [k, c] : terms_)
      if (k.first + k.second == n) out.terms_.emplace(k, c);
    return out;
  }

  void add_term(int i, int j, const T& c) {
    if (i < 0 || j < 0) throw std::invalid_argument("Poly2: negative exponent");
    if (scalar_traits<T>::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(Key{i, j}, c);
    if (!inserted) {
      it->second += c;
      if (scalar_traits<T>::is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly2 diff(Var v) const {
    Poly2 out;
    for (const auto& [k, c] : terms_) {
      int e = v == Var::x ? k.first : k.second;
      if (e == 0) continue;
      if (v == Var::x) out.add_term(k.first - 1, k.second, c * T(e));
      else out.add_term(k.first, k.second - 1, c * T(e));
    }
    return out;
  }

  /// Antiderivative in one variable with no added function of the other.
  Poly2 antiderivative(Var v) const {
    Poly2 out;
    for (const auto& [k, c] : terms_) {
      if (v == Var::x) out.add_term(k.first + 1, k.second, c / T(k.first + 1));
      else out.add_term(k.first, k.second + 1, c / T(k.second + 1));
    }
    return out;
  }

  template <class S>
  S operator()(const S& x, const S& y) const {
    S acc = S(0);
    for (const auto& [k, c] : terms_) acc = acc + scalar_cast<S>(c) * ipow(x, k.first) * ipow(y, k.second);
    return acc;
  }

  template <class S>
  Poly2<S> convert() const {
    Poly2<S> out;
    for (const auto& [k, c] : terms_) out.add_term(k.first, k.second, scalar_cast<S>(c));
    return out;
  }

  /// Univariate restriction when the polynomial depends on one variable only.
  std::optional<Poly1<T>> as_univariate(Var v) const {
    std::vector<T> c;
    for (const auto& [k, coef] : terms_) {
      int other = v == Var::x ? k.second : k.first;
      int e = v == Var::x ? k.first : k.second;
      if (other != 0) return std::nullopt;
      if (static_cast<int>(c.size()) <= e) c.resize(static_cast<std::size_t>(e) + 1, T(0));
      c[static_cast<std::size_t>(e)] = coef;
    }
    return Poly1<T>(std::move(c));
  }

  /// p(-x, y) == p(x, y)
  bool even_in_x() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.first % 2 == 0; });
  }
  /// p(-x, y) == -p(x, y)
  bool odd_in_x() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.first % 2 == 1; });
  }

  Poly2& operator+=(const Poly2& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  Poly2& operator-=(const Poly2& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
  }
  Poly2& operator*=(const T& s) {
    if (scalar_traits<T>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator-(Poly2 a) {
    for (auto& [k, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly2 operator*(Poly2 a, const T& s) { return a *= s; }
  friend Poly2 operator*(const T& s, Poly2 a) { return a *= s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
  }
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  std::string str(const char* xv = "x", const char* yv = "y") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (k.first > 0) os << "*" << xv << (k.first > 1 ? "^" + std::to_string(k.first) : "");
      if (k.second > 0) os << "*" << yv << (k.second > 1 ? "^" + std::to_string(k.second) : "");
    }
    return os.str();
  }

 private:
  template <class S>
  static S ipow(const S& b, int e) {
    S r = S(1);
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
  }

  std::map<Key, T> terms_;
};

template <class T>
Poly2<T> pow(const Poly2<T>& p, int e) {
  Poly2<T> r = Poly2<T>::constant(T(1));
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

/// Substitutes x <- sx, y <- sy.
template <class T>
Poly2<T> compose(const Poly2<T>& p, const Poly2<T>& sx, const Poly2<T>& sy) {
  std::vector<Poly2<T>> px{Poly2<T>::constant(T(1))}, py{Poly2<T>::constant(T(1))};
  Poly2<T> out;
  for (const auto& [k, c] : p.terms()) {
    while (static_cast<int>(px.size()) <= k.first) px.push_back(px.back() * sx);
    while (static_cast<int>(py.size()) <= k.second) py.push_back(py.back() * sy);
    out += c * (px[static_cast<std::size_t>(k.first)] * py[static_cast<std::size_t>(k.second)]);
  }
  return out;
}

/// Coefficientwise comparison: exact for exact scalars, otherwise
/// |a - b| <= eps * max(1, |a|, |b|) per monomial.
template <class T>
bool approx_equal(const Poly2<T>& a, const Poly2<T>& b, double eps) {
  if constexpr (is_exact_v<T>) {
    (void)eps;
    return a == b;
  } else {
    Poly2<T> diff = a - b;
    for (const auto& [k, c] : diff.terms()) {
      double scale = std::max({1.0, abs_double(a.coeff(k.first, k.second)), abs_double(b.coeff(k.first, k.second))});
      if (abs_double(c) > eps * scale) return false;
    }
    return true;
  }
}

}  // namespace centerkit
