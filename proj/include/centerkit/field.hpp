#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "centerkit/errors.hpp"
#include "centerkit/poly.hpp"

namespace centerkit {

/// Planar polynomial vector field x' = fx(x, y), y' = fy(x, y) of degree <= 3.
template <class T>
class CubicField {
 public:
  static constexpr int max_degree = 3;

  CubicField(Poly2<T> fx, Poly2<T> fy) : fx_(std::move(fx)), fy_(std::move(fy)) {
    if (fx_.total_degree() > max_degree || fy_.total_degree() > max_degree)
      throw DegreeBoundExceeded("CubicField: component of total degree > 3");
  }

  const Poly2<T>& fx() const { return fx_; }
  const Poly2<T>& fy() const { return fy_; }

  template <class S>
  std::array<S, 2> operator()(const S& x, const S& y) const {
    return {fx_(x, y), fy_(x, y)};
  }

  template <class S>
  CubicField<S> convert() const {
    return CubicField<S>(fx_.template convert<S>(), fy_.template convert<S>());
  }

  friend bool operator==(const CubicField& a, const CubicField& b) { return a.fx_ == b.fx_ && a.fy_ == b.fy_; }

 private:
  Poly2<T> fx_;
  Poly2<T> fy_;
};

/// The symmetric Hamiltonian base field x' = y, y' = x - x^3.
template <class T>
CubicField<T> unperturbed_field() {
  using P = Poly2<T>;
  return CubicField<T>(P::y(), P::x() - P::monomial(T(1), 3, 0));
}

/// Parameters of the normalised reversible family
///   x' = y + a20 (x^2 - 1) + a21 x^2 y + a01 y + a02 y^2 + a03 y^3
///   y' = x - x^3 + b30 (x^3 - x) + b11 x y + b12 x y^2
/// whose anti-saddles sit at (+-1, 0).
template <class T>
struct ReversibleParams {
  T a20{0}, a21{0}, a01{0}, a02{0}, a03{0}, b11{0}, b12{0}, b30{0};

  static constexpr std::size_t size = 8;
  static constexpr std::array<std::string_view, size> names{"a20", "a21", "a01", "a02",
                                                            "a03", "b11", "b12", "b30"};

  T& operator[](std::size_t i) {
    std::array<T*, size> p{&a20, &a21, &a01, &a02, &a03, &b11, &b12, &b30};
    return *p.at(i);
  }
  const T& operator[](std::size_t i) const { return const_cast<ReversibleParams&>(*this)[i]; }

  template <class S>
  ReversibleParams<S> convert() const {
    ReversibleParams<S> out;
    for (std::size_t i = 0; i < size; ++i) out[i] = scalar_cast<S>((*this)[i]);
    return out;
  }

  friend bool operator==(const ReversibleParams&, const ReversibleParams&) = default;
};

/// Un-normalised reversible perturbation: P even in x and Q odd in x,
///   P = a00 + a20 x^2 + a21 x^2 y + a01 y + a02 y^2 + a03 y^3
///   Q = b10 x + b11 x y + b12 x y^2 + b30 x^3
template <class T>
struct ReversibleParamsRaw {
  T a00{0}, a20{0}, a21{0}, a01{0}, a02{0}, a03{0}, b10{0}, b11{0}, b12{0}, b30{0};

  static constexpr std::size_t size = 10;
  static constexpr std::array<std::string_view, size> names{"a00", "a20", "a21", "a01", "a02",
                                                            "a03", "b10", "b11", "b12", "b30"};

  T& operator[](std::size_t i) {
    std::array<T*, size> p{&a00, &a20, &a21, &a01, &a02, &a03, &b10, &b11, &b12, &b30};
    return *p.at(i);
  }
  const T& operator[](std::size_t i) const { return const_cast<ReversibleParamsRaw&>(*this)[i]; }

  friend bool operator==(const ReversibleParamsRaw&, const ReversibleParamsRaw&) = default;
};

template <class T>
CubicField<T> build(const ReversibleParams<T>& p) {
  using P = Poly2<T>;
  P fx;
  fx.add_term(0, 1, T(1) + p.a01);
  fx.add_term(2, 0, p.a20);
  fx.add_term(0, 0, -p.a20);
  fx.add_term(2, 1, p.a21);
  fx.add_term(0, 2, p.a02);
  fx.add_term(0, 3, p.a03);
  P fy;
  fy.add_term(1, 0, T(1) - p.b30);
  fy.add_term(3, 0, p.b30 - T(1));
  fy.add_term(1, 1, p.b11);
  fy.add_term(1, 2, p.b12);
  return CubicField<T>(std::move(fx), std::move(fy));
}

template <class T>
CubicField<T> build(const ReversibleParamsRaw<T>& p) {
  using P = Poly2<T>;
  P fx;
  fx.add_term(0, 1, T(1) + p.a01);
  fx.add_term(0, 0, p.a00);
  fx.add_term(2, 0, p.a20);
  fx.add_term(2, 1, p.a21);
  fx.add_term(0, 2, p.a02);
  fx.add_term(0, 3, p.a03);
  P fy;
  fy.add_term(1, 0, T(1) + p.b10);
  fy.add_term(3, 0, p.b30 - T(1));
  fy.add_term(1, 1, p.b11);
  fy.add_term(1, 2, p.b12);
  return CubicField<T>(std::move(fx), std::move(fy));
}

/// Invariance of the orbit foliation under (x, y) -> (-x, y) with time reversal.
template <class T>
bool is_reversible(const CubicField<T>& f) {
  return f.fx().even_in_x() && f.fy().odd_in_x();
}

template <class T>
Poly2<T> divergence(const CubicField<T>& f) {
  return f.fx().diff(Var::x) + f.fy().diff(Var::y);
}

template <class T>
struct Matrix2 {
  T a{0}, b{0}, c{0}, d{0};  // [[a, b], [c, d]]
  T trace() const { return a + d; }
  T det() const { return a * d - b * c; }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

template <class T>
Matrix2<T> jacobian_at(const CubicField<T>& f, const T& x, const T& y) {
  return {f.fx().diff(Var::x)(x, y), f.fx().diff(Var::y)(x, y), f.fy().diff(Var::x)(x, y),
          f.fy().diff(Var::y)(x, y)};
}

struct NormalizeOptions {
  double tol = 1e-10;
  int max_iterations = 60;
  /// Newton must land within this distance of (1, 0).
  double basin_radius = 0.5;
  /// Largest denominator tried when recognising the root as rational.
  long max_denominator = 1'000'000;
};

/// Outcome of moving the anti-saddle of a raw reversible field to (1, 0) by
/// (x, y) -> (x / x0, y - y0). `exact` is present only when the root was
/// recognised as rational and verified to be an exact zero of the raw field.
struct Normalization {
  ReversibleParams<double> approx;
  std::optional<ReversibleParams<Rational>> exact;
  double x0 = 1.0;
  double y0 = 0.0;
  int iterations = 0;
  /// Largest template-shape residual before snapping.
  double residual = 0.0;
};

namespace detail {

/// Coefficients of the raw field after (x, y) = (x0 X, Y + y0); returns the
/// normalised parameters plus the two template residuals
/// (constant + X^2 coefficient of X', X + X^3 coefficient of Y').
template <class T>
std::pair<ReversibleParams<T>, std::array<T, 2>> affine_normal_form(const ReversibleParamsRaw<T>& r, const T& x0,
                                                                    const T& y0) {
  const T x0sq = x0 * x0;
  ReversibleParams<T> n;
  const T constant = (y0 + r.a00 + r.a01 * y0 + r.a02 * y0 * y0 + r.a03 * y0 * y0 * y0) / x0;
  n.a20 = (r.a20 * x0sq + r.a21 * x0sq * y0) / x0;
  n.a21 = r.a21 * x0;
  n.a01 = (T(1) + r.a01 + T(2) * r.a02 * y0 + T(3) * r.a03 * y0 * y0) / x0 - T(1);
  n.a02 = (r.a02 + T(3) * r.a03 * y0) / x0;
  n.a03 = r.a03 / x0;
  const T lin = x0 * (T(1) + r.b10 + r.b11 * y0 + r.b12 * y0 * y0);
  n.b11 = x0 * (r.b11 + T(2) * r.b12 * y0);
  n.b12 = x0 * r.b12;
  const T cubic = x0 * x0sq * (r.b30 - T(1));
  n.b30 = T(1) + cubic;
  return {n, {constant + n.a20, lin + cubic}};
}

}  // namespace detail

/// Pins the anti-saddle of a raw reversible field at (1, 0). Newton runs in
/// double precision from (1, 0); when the root is recognisably rational and
/// exact, the transformation is replayed in exact arithmetic.
inline Normalization normalize(const ReversibleParamsRaw<Rational>& raw, const NormalizeOptions& opt = {}) {
  const CubicField<double> f = build(raw).convert<double>();
  const Poly2<double> fxx = f.fx().diff(Var::x), fxy = f.fx().diff(Var::y);
  const Poly2<double> fyx = f.fy().diff(Var::x), fyy = f.fy().diff(Var::y);

  double x = 1.0, y = 0.0;
  int it = 0;
  bool converged = false;
  for (; it < opt.max_iterations; ++it) {
    const double gx = f.fx()(x, y), gy = f.fy()(x, y);
    // Roots on x = 0 belong to the saddle family; the anti-saddle solves
    // fx = 0 together with fy / x = 0.
    const double hy = gy / x;
    const double jxx = fxx(x, y), jxy = fxy(x, y);
    const double jyx = (fyx(x, y) * x - gy) / (x * x), jyy = fyy(x, y) / x;
    const double det = jxx * jyy - jxy * jyx;
    if (!std::isfinite(det) || det == 0.0) break;
    const double dx = (gx * jyy - jxy * hy) / det;
    const double dy = (jxx * hy - jyx * gx) / det;
    x -= dx;
    y -= dy;
    if (!std::isfinite(x) || !std::isfinite(y)) break;
    if (std::hypot(dx, dy) <= 1e-15 * (1.0 + std::hypot(x, y))) {
      converged = true;
      ++it;
      break;
    }
  }
  if (!converged) {
    const double res = std::hypot(f.fx()(x, y), f.fy()(x, y));
    converged = std::isfinite(res) && res <= 1e-13;
  }
  if (!converged || std::hypot(x - 1.0, y) > opt.basin_radius || x <= 0.0)
    throw NewtonDiverged("normalize: no anti-saddle found near (1, 0)");

  Normalization out;
  out.x0 = x;
  out.y0 = y;
  out.iterations = it;

  const ReversibleParamsRaw<double> raw_d = [&] {
    ReversibleParamsRaw<double> r;
    for (std::size_t i = 0; i < r.size; ++i) r[i] = raw[i].to_double();
    return r;
  }();
  auto [approx, residuals] = detail::affine_normal_form<double>(raw_d, x, y);
  out.residual = std::max(std::fabs(residuals[0]), std::fabs(residuals[1]));
  if (out.residual > opt.tol) throw NotNormalizable("normalize: transformed field does not fit the normal form");
  out.approx = approx;

  const Rational xq = best_rational(x, opt.max_denominator), yq = best_rational(y, opt.max_denominator);
  if (std::fabs(xq.to_double() - x) <= opt.tol && std::fabs(yq.to_double() - y) <= opt.tol) {
    const CubicField<Rational> fq = build(raw);
    if (!xq.is_zero() && fq.fx()(xq, yq).is_zero() && fq.fy()(xq, yq).is_zero()) {
      auto [exact, exact_res] = detail::affine_normal_form<Rational>(raw, xq, yq);
      if (exact_res[0].is_zero() && exact_res[1].is_zero()) {
        out.exact = exact;
        out.approx = exact.convert<double>();
      }
    }
  }
  return out;
}

}  // namespace centerkit
