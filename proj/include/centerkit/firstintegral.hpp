#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "centerkit/flow.hpp"
#include "centerkit/strata.hpp"

namespace centerkit {

/// Polynomial H with dH/dy = fx and -dH/dx = fy, zero constant term.
template <class T>
Poly2<T> hamiltonian_integral(const CubicField<T>& f, double eps = 1e-12) {
  const Poly2<T> div = divergence(f);
  if (!approx_equal(div, Poly2<T>{}, eps)) throw NotHamiltonian("hamiltonian_integral: divergence is not zero");
  Poly2<T> h = f.fx().antiderivative(Var::y);
  const Poly2<T> rest = -f.fy() - h.diff(Var::x);
  // rest must be a function of x alone.
  Poly2<T> rest_x;
  for (const auto& [k, c] : rest.terms()) {
    if (k.second != 0) {
      if (!near_zero(c, 1.0, eps)) throw NotHamiltonian("hamiltonian_integral: cross-derivative mismatch");
      continue;
    }
    rest_x.add_term(k.first, 0, c);
  }
  h += rest_x.antiderivative(Var::x);
  Poly2<T> out;
  for (const auto& [k, c] : h.terms())
    if (k.first + k.second > 0) out.add_term(k.first, k.second, c);
  if (!approx_equal(out.diff(Var::y), f.fx(), eps) || !approx_equal(-out.diff(Var::x), f.fy(), eps))
    throw NotHamiltonian("hamiltonian_integral: reconstructed H fails the defining equations");
  return out;
}

enum class IntegralKind { RealEigen, ComplexEigen, RepeatedEigen, ZeroEigen, HamiltonianDegenerate };

inline std::string_view to_string(IntegralKind k) {
  switch (k) {
    case IntegralKind::RealEigen: return "RealEigen";
    case IntegralKind::ComplexEigen: return "ComplexEigen";
    case IntegralKind::RepeatedEigen: return "RepeatedEigen";
    case IntegralKind::ZeroEigen: return "ZeroEigen";
    case IntegralKind::HamiltonianDegenerate: return "HamiltonianDegenerate";
  }
  return "?";
}

/// Linear system  v' = 2u,  u' = -A - B v - C u  whose pull back by v = y^2
/// is the even Lienard quotient, with A = c1 - a0 b1, B = c3 - a1 b2,
/// C = a1 - 2 b2. Phase variables are ordered (v, u).
struct LinearQuotient {
  Rational A, B, C;
  /// v* = -A / B, present when B != 0.
  std::optional<Rational> equilibrium;
  /// Discriminant C^2 - 8B of mu^2 + C mu + 2B.
  Rational discriminant;
  IntegralKind kind = IntegralKind::HamiltonianDegenerate;

  /// B == 0: no equilibrium, one eigenvalue is zero.
  bool parabolic() const { return B.is_zero(); }
};

inline LinearQuotient make_linear_quotient(Rational A, Rational B, Rational C) {
  LinearQuotient lq;
  lq.A = std::move(A);
  lq.B = std::move(B);
  lq.C = std::move(C);
  if (lq.A.is_zero() && lq.B.is_zero()) throw DegenerateLinear("linear quotient: A = B = 0");
  if (!lq.B.is_zero()) lq.equilibrium = -lq.A / lq.B;
  lq.discriminant = lq.C * lq.C - Rational(8) * lq.B;
  if (lq.C.is_zero()) lq.kind = IntegralKind::HamiltonianDegenerate;
  else if (lq.B.is_zero()) lq.kind = IntegralKind::ZeroEigen;
  else if (lq.discriminant.sign() > 0) lq.kind = IntegralKind::RealEigen;
  else if (lq.discriminant.sign() < 0) lq.kind = IntegralKind::ComplexEigen;
  else lq.kind = IntegralKind::RepeatedEigen;
  return lq;
}

/// Reads A, B, C off a Cherkas form whose p has no constant term and whose
/// q has no y^2 term (the pull-back situation).
inline LinearQuotient build_linear_quotient(const CherkasForm<Rational>& c) {
  if (!c.p.coeff(0).is_zero() || !c.q.coeff(2).is_zero())
    throw PreconditionViolation("build_linear_quotient: Lienard form is not even in y");
  return make_linear_quotient(c.q.coeff(1), c.q.coeff(3), c.p.coeff(1));
}

/// The linear quotient as a numeric field in (v, u).
inline NumericField linear_field(const LinearQuotient& lq) {
  Poly2<Rational> fv = Poly2<Rational>::monomial(Rational(2), 0, 1);
  Poly2<Rational> fu;
  fu.add_term(0, 0, -lq.A);
  fu.add_term(1, 0, -lq.B);
  fu.add_term(0, 1, -lq.C);
  return NumericField(fv, fu);
}

/// I = 2u^2 + 2A v + B v^2 (C = 0).
struct PolynomialIntegral {
  Poly2<Rational> poly;
  double value(double v, double u) const { return poly(v, u); }
};

/// alpha log|l1| + beta log|l2| with l_i = -B (v - v*) + mu_i u,
/// alpha = mu2, beta = -mu1, all in Q(sqrt(C^2 - 8B)).
struct RealLogIntegral {
  Poly2<QuadSurd> l1, l2;
  QuadSurd mu1, mu2, alpha, beta;
  double value(double v, double u) const {
    return alpha.to_double() * std::log(std::fabs(l1(v, u))) + beta.to_double() * std::log(std::fabs(l2(v, u)));
  }
};

/// w / l - log|l| / mu for a double eigenvalue mu with left Jordan chain (l, w).
struct RepeatedIntegral {
  Poly2<Rational> l, w;
  Rational mu;
  double value(double v, double u) const {
    const double lv = l(v, u);
    return w(v, u) / lv - std::log(std::fabs(lv)) / mu.to_double();
  }
};

/// tau log|l|^2 - 2 sigma arg(l) for l = -B (v - v*) + (sigma + i tau) u.
/// Multivalued; `value` returns the principal branch.
struct ComplexLogIntegral {
  double B = 0, vstar = 0, sigma = 0, tau = 0;
  double re(double v, double u) const { return -B * (v - vstar) + sigma * u; }
  double im(double u) const { return tau * u; }
  double arg(double v, double u) const { return std::atan2(im(u), re(v, u)); }
  double value(double v, double u) const {
    const double r = re(v, u), i = im(u);
    return tau * std::log(r * r + i * i) - 2.0 * sigma * std::atan2(i, r);
  }
};

/// v + 2u / C - (2A / C^2) log|A + C u| for B = 0, C != 0.
struct ParabolicIntegral {
  Rational A, C;
  double value(double v, double u) const {
    const double a = A.to_double(), c = C.to_double();
    return v + 2.0 * u / c - 2.0 * a / (c * c) * std::log(std::fabs(a + c * u));
  }
};

struct DarbouxIntegral {
  IntegralKind kind;
  LinearQuotient quotient;
  std::variant<PolynomialIntegral, RealLogIntegral, RepeatedIntegral, ComplexLogIntegral, ParabolicIntegral> form;

  double value(double v, double u) const {
    return std::visit([&](const auto& f) { return f.value(v, u); }, form);
  }

  /// Exact vanishing of the Lie derivative along the linear field, after
  /// clearing denominators. Not available for the complex case.
  std::optional<bool> lie_derivative_vanishes() const;

  /// Integral values along a (v, u) path with the argument unwrapped
  /// continuously in the complex case.
  std::vector<double> along(const std::vector<std::array<double, 2>>& path) const {
    std::vector<double> out;
    out.reserve(path.size());
    if (const auto* c = std::get_if<ComplexLogIntegral>(&form)) {
      double prev = 0.0, offset = 0.0;
      bool first = true;
      for (const auto& p : path) {
        double a = c->arg(p[0], p[1]);
        if (!first) {
          while (a + offset - prev > std::numbers::pi) offset -= 2 * std::numbers::pi;
          while (a + offset - prev < -std::numbers::pi) offset += 2 * std::numbers::pi;
        }
        first = false;
        prev = a + offset;
        const double r = c->re(p[0], p[1]), i = c->im(p[1]);
        out.push_back(c->tau * std::log(r * r + i * i) - 2.0 * c->sigma * prev);
      }
    } else {
      for (const auto& p : path) out.push_back(value(p[0], p[1]));
    }
    return out;
  }

  bool logarithmic() const { return kind != IntegralKind::HamiltonianDegenerate; }
};

namespace detail {

template <class S>
Poly2<S> linear_vector_dot(const Poly2<S>& g, const LinearQuotient& lq) {
  // grad g . (2u, -A - B v - C u) in (v, u)
  Poly2<S> fv = Poly2<S>::monomial(S(Rational(2)), 0, 1);
  Poly2<S> fu;
  fu.add_term(0, 0, S(-lq.A));
  fu.add_term(1, 0, S(-lq.B));
  fu.add_term(0, 1, S(-lq.C));
  return g.diff(Var::x) * fv + g.diff(Var::y) * fu;
}

}  // namespace detail

inline std::optional<bool> DarbouxIntegral::lie_derivative_vanishes() const {
  if (const auto* p = std::get_if<PolynomialIntegral>(&form))
    return detail::linear_vector_dot(p->poly, quotient).is_zero();
  if (const auto* r = std::get_if<RealLogIntegral>(&form)) {
    // alpha l1'/l1 + beta l2'/l2 = 0  <=>  alpha l1' l2 + beta l2' l1 = 0
    const Poly2<QuadSurd> d1 = detail::linear_vector_dot(r->l1, quotient);
    const Poly2<QuadSurd> d2 = detail::linear_vector_dot(r->l2, quotient);
    return (d1 * r->l2 * r->alpha + d2 * r->l1 * r->beta).is_zero();
  }
  if (const auto* j = std::get_if<RepeatedIntegral>(&form)) {
    // (w/l)' - l'/(mu l) = 0  <=>  w' l - w l' - l' l / mu = 0
    const Poly2<Rational> dl = detail::linear_vector_dot(j->l, quotient);
    const Poly2<Rational> dw = detail::linear_vector_dot(j->w, quotient);
    return (dw * j->l - j->w * dl - dl * j->l * (Rational(1) / j->mu)).is_zero();
  }
  if (const auto* z = std::get_if<ParabolicIntegral>(&form)) {
    // times C^2 (A + C u):  C^2 (A + C u) v' + 2C (A + C u) u' - 2A C u' = 0
    using P = Poly2<Rational>;
    const P l = P::constant(z->A) + P::monomial(z->C, 0, 1);
    const P dv = detail::linear_vector_dot(P::x(), quotient), du = detail::linear_vector_dot(P::y(), quotient);
    return (l * dv * (z->C * z->C) + l * du * (Rational(2) * z->C) - du * (Rational(2) * z->A * z->C)).is_zero();
  }
  return std::nullopt;
}

/// First integral of the linear quotient: polynomial when C = 0, otherwise
/// built from the invariant lines (real) or the complex eigen-covector.
inline DarbouxIntegral darboux_integral(const LinearQuotient& lq) {
  using R = Rational;
  DarbouxIntegral di{lq.kind, lq, PolynomialIntegral{}};
  if (lq.kind == IntegralKind::HamiltonianDegenerate) {
    Poly2<R> h;
    h.add_term(0, 2, R(2));
    h.add_term(1, 0, R(2) * lq.A);
    h.add_term(2, 0, lq.B);
    di.form = PolynomialIntegral{std::move(h)};
    return di;
  }
  if (lq.parabolic()) throw DegenerateLinear("darboux_integral: zero eigenvalue (B = 0, C != 0)");
  const R vstar = *lq.equilibrium;

  if (lq.kind == IntegralKind::RealEigen) {
    const QuadSurd root = QuadSurd::sqrt_of(lq.discriminant);
    const QuadSurd half = QuadSurd(R(1, 2));
    const QuadSurd mu1 = (QuadSurd(-lq.C) + root) * half;
    const QuadSurd mu2 = (QuadSurd(-lq.C) - root) * half;
    auto line = [&](const QuadSurd& mu) {
      Poly2<QuadSurd> l;
      l.add_term(1, 0, QuadSurd(-lq.B));
      l.add_term(0, 0, QuadSurd(lq.B * vstar));
      l.add_term(0, 1, mu);
      return l;
    };
    di.form = RealLogIntegral{line(mu1), line(mu2), mu1, mu2, mu2, -mu1};
    return di;
  }
  if (lq.kind == IntegralKind::RepeatedEigen) {
    // M = [[0, 2], [-B, -C]], mu = -C/2, left eigenvector l = (-B, mu).
    // Generalised w = (wv, wu) with w (M - mu) = l; wu = 0 gives wv = B / mu,
    // consistent because mu^2 = 2B when C^2 = 8B.
    const R mu = -lq.C / R(2);
    const R wv = lq.B / mu;
    Poly2<R> l, w;
    l.add_term(1, 0, -lq.B);
    l.add_term(0, 0, lq.B * vstar);
    l.add_term(0, 1, mu);
    w.add_term(1, 0, wv);
    w.add_term(0, 0, -wv * vstar);
    di.form = RepeatedIntegral{std::move(l), std::move(w), mu};
    return di;
  }
  ComplexLogIntegral c;
  c.B = lq.B.to_double();
  c.vstar = vstar.to_double();
  c.sigma = -lq.C.to_double() / 2.0;
  c.tau = std::sqrt(-lq.discriminant.to_double()) / 2.0;
  di.form = c;
  return di;
}

/// First integral of the linear quotient including the zero-eigenvalue case
/// B = 0, C != 0, where u' = -(A + C u) separates.
inline DarbouxIntegral linear_first_integral(const LinearQuotient& lq) {
  if (lq.kind != IntegralKind::ZeroEigen) return darboux_integral(lq);
  return DarbouxIntegral{lq.kind, lq, ParabolicIntegral{lq.A, lq.C}};
}

/// (x, y) -> (u, v) = (x^2 - 1 + P2(y), y^2), P2 = (b11 y + b12 y^2) / (b30 - 1).
template <class T>
struct PullbackMap {
  Poly2<T> u, v;
};

template <class T>
PullbackMap<T> make_pullback_map(const ReversibleParams<T>& p) {
  require_regular(p);
  using P = Poly2<T>;
  const T g = p.b30 - T(1);
  P u = P::monomial(T(1), 2, 0) - P::constant(T(1));
  u.add_term(0, 1, p.b11 / g);
  u.add_term(0, 2, p.b12 / g);
  return {std::move(u), P::monomial(T(1), 0, 2)};
}

/// Darboux integral of the linear quotient composed with the pull-back map.
class PullbackIntegral {
 public:
  PullbackIntegral(PullbackMap<Rational> map, DarbouxIntegral integral)
      : map_(std::move(map)), integral_(std::move(integral)) {}

  const PullbackMap<Rational>& map() const { return map_; }
  const DarbouxIntegral& integral() const { return integral_; }

  std::array<double, 2> mapped(double x, double y) const { return {map_.v(x, y), map_.u(x, y)}; }
  double value(double x, double y) const {
    const auto vu = mapped(x, y);
    return integral_.value(vu[0], vu[1]);
  }
  std::vector<double> along(const Trajectory& tr) const {
    std::vector<std::array<double, 2>> path;
    path.reserve(tr.samples.size());
    for (const auto& s : tr.samples) path.push_back(mapped(s.x, s.y));
    return integral_.along(path);
  }

 private:
  PullbackMap<Rational> map_;
  DarbouxIntegral integral_;
};

inline PullbackIntegral pullback_integral(const ReversibleParams<Rational>& params) {
  const CenterVerdict<Rational> v = classify_reversible(params);
  if (v.stratum != Stratum::PullBack && v.stratum != Stratum::Both)
    throw PreconditionViolation("pullback_integral: parameters are not on the pull-back stratum");
  const CherkasForm<Rational> c = to_cherkas(reduce_quotient(params));
  return PullbackIntegral(make_pullback_map(params), linear_first_integral(build_linear_quotient(c)));
}

/// Checks, as a polynomial identity, that the derivative of the pull-back
/// map along the cubic field equals the linear quotient at the image point
/// times the rescaling unit mu(x, y) = -(1 - b30) x y, which comes from
/// dxi = 2x dx and v' = 2y y'.
template <class T>
bool verify_pullback_conjugacy(const ReversibleParams<T>& params, double eps = 1e-10) {
  using P = Poly2<T>;
  const CubicField<T> f = build(params);
  const PullbackMap<T> m = make_pullback_map(params);
  const CherkasForm<T> c = to_cherkas(reduce_quotient(params));
  const T A = c.q.coeff(1), B = c.q.coeff(3), C = c.p.coeff(1);
  const P udot = m.u.diff(Var::x) * f.fx() + m.u.diff(Var::y) * f.fy();
  const P vdot = m.v.diff(Var::x) * f.fx() + m.v.diff(Var::y) * f.fy();
  const P unit = P::monomial(-(T(1) - params.b30), 1, 1);
  const P lin_v = m.u * T(2);
  const P lin_u = P::constant(-A) - m.v * B - m.u * C;
  return approx_equal(vdot, unit * lin_v, eps) && approx_equal(udot, unit * lin_u, eps);
}

/// Worst conservation error of an integral sampled along an orbit: relative
/// change |I - I0| / |I0| for polynomial integrals, relative change of the
/// product form exp(I) for logarithmic (Darboux) integrals.
inline double conservation_drift(const std::vector<double>& values, bool logarithmic) {
  if (values.empty()) return 0.0;
  const double i0 = values.front();
  double worst = 0.0;
  for (double v : values) {
    const double e = logarithmic ? std::fabs(std::expm1(v - i0)) : std::fabs(v - i0) / std::fabs(i0);
    worst = std::max(worst, e);
  }
  return worst;
}

}  // namespace centerkit
