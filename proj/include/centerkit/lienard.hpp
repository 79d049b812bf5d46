#pragma once

#include <string>

#include "centerkit/field.hpp"

namespace centerkit {

/// Quotient system  xi' = P3(y) + P1(y) xi,  y' = -xi - P2(y)  with
///   P1 = a0 + a1 y,  P2 = b1 y + b2 y^2,  P3 = c1 y + c2 y^2 + c3 y^3.
/// Its orbit foliation is (xi + P2) dxi + (P3 + P1 xi) dy = 0.
template <class T>
struct LienardSystem {
  Poly1<T> p1, p2, p3;

  /// Which substitution produced the system, and the constant `unit` with
  /// (quotient 1-form pulled back) = unit * (fx dy - fy dx).
  struct Provenance {
    std::string substitution;
    T unit{0};
  };
  Provenance provenance;

  T a0() const { return p1.coeff(0); }
  T a1() const { return p1.coeff(1); }
  T b1() const { return p2.coeff(1); }
  T b2() const { return p2.coeff(2); }
  T c1() const { return p3.coeff(1); }
  T c2() const { return p3.coeff(2); }
  T c3() const { return p3.coeff(3); }

  static LienardSystem from_coefficients(T a0, T a1, T b1, T b2, T c1, T c2, T c3) {
    LienardSystem l;
    l.p1 = Poly1<T>({a0, a1});
    l.p2 = Poly1<T>({T(0), b1, b2});
    l.p3 = Poly1<T>({T(0), c1, c2, c3});
    return l;
  }
};

/// The seven coefficients of the quotient system as closed-form functions of
/// the normal-form parameters.
template <class T>
struct LienardCoefficients {
  T a0, a1, b1, b2, c1, c2, c3;
};

template <class T>
void require_regular(const ReversibleParams<T>& p, double eps = 1e-10) {
  const T gap = T(1) - p.b30;
  if (near_zero(gap, 1.0, eps)) throw SingularReduction("b30 = 1: quotient reduction is singular");
}

template <class T>
LienardCoefficients<T> lienard_coefficients(const ReversibleParams<T>& p) {
  require_regular(p);
  const T g = T(1) - p.b30;
  return {T(2) * p.a20 / g, T(2) * p.a21 / g, -p.b11 / g, -p.b12 / g,
          T(2) * (T(1) + p.a01 + p.a21) / g, T(2) * p.a02 / g, T(2) * p.a03 / g};
}

/// Reduction by xi = x^2 - 1, folding the field onto the quotient by the
/// involution x -> -x.
template <class T>
LienardSystem<T> reduce_quotient(const ReversibleParams<T>& p) {
  require_regular(p);
  const T g = T(1) - p.b30;
  LienardSystem<T> l;
  l.p1 = Poly1<T>({T(2) * p.a20 / g, T(2) * p.a21 / g});
  l.p2 = Poly1<T>({T(0), p.b11 / (p.b30 - T(1)), p.b12 / (p.b30 - T(1))});
  l.p3 = Poly1<T>({T(0), T(2) * (T(1) + p.a01 + p.a21) / g, T(2) * p.a02 / g, T(2) * p.a03 / g});
  l.provenance = {"xi = x^2 - 1, dxi = 2x dx", T(2) / g};
  return l;
}

/// Checks that substituting xi = x^2 - 1 into the quotient 1-form gives a
/// nonzero constant multiple of fx dy - fy dx. The multiple is recovered
/// from the data, not assumed.
template <class T>
bool verify_quotient_identity(const ReversibleParams<T>& params, const LienardSystem<T>& l, double eps = 1e-10) {
  using P = Poly2<T>;
  const CubicField<T> f = build(params);
  const P xi = P::monomial(T(1), 2, 0) - P::constant(T(1));
  const P p1 = P::lift(l.p1, Var::y), p2 = P::lift(l.p2, Var::y), p3 = P::lift(l.p3, Var::y);
  const P dx_coeff = (xi + p2) * P::monomial(T(2), 1, 0);
  const P dy_coeff = p3 + p1 * xi;

  // fx always carries a nonzero y-linear or other term unless fx == 0.
  const P& ref = f.fx().is_zero() ? f.fy() : f.fx();
  if (ref.is_zero()) return dx_coeff.is_zero() && dy_coeff.is_zero();
  const auto& [key, ref_coeff] = *ref.terms().begin();
  const T numer = f.fx().is_zero() ? -dx_coeff.coeff(key.first, key.second) : dy_coeff.coeff(key.first, key.second);
  const T unit = numer / ref_coeff;
  if (near_zero(unit, 1.0, eps)) return false;
  return approx_equal(dy_coeff, f.fx() * unit, eps) && approx_equal(dx_coeff, -(f.fy() * unit), eps);
}

/// Lienard form  y' = u,  u' = -q(y) - u p(y)  obtained by xi = u - P2(y),
/// with primitives P = int p, Q = int q (zero constant terms).
template <class T>
struct CherkasForm {
  Poly1<T> p, q;
  Poly1<T> p_prim, q_prim;
  LienardSystem<T> source;
};

template <class T>
CherkasForm<T> to_cherkas(const LienardSystem<T>& l) {
  const T a0 = l.a0(), a1 = l.a1(), b1 = l.b1(), b2 = l.b2();
  CherkasForm<T> c;
  c.p = Poly1<T>({a0 - b1, a1 - T(2) * b2});
  c.q = Poly1<T>({T(0), l.c1() - a0 * b1, l.c2() - a0 * b2 - a1 * b1, l.c3() - a1 * b2});
  c.p_prim = c.p.antiderivative();
  c.q_prim = c.q.antiderivative();
  c.source = l;
  return c;
}

/// Replays the shear in (u, y): the quotient 1-form with xi = u - P2(y)
/// must equal u du + (q + u p) dy.
template <class T>
bool verify_shear_identity(const CherkasForm<T>& c, double eps = 1e-10) {
  using P = Poly2<T>;  // x slot: u, y slot: y
  const LienardSystem<T>& l = c.source;
  const P u = P::x();
  const P p1 = P::lift(l.p1, Var::y), p2 = P::lift(l.p2, Var::y), p3 = P::lift(l.p3, Var::y);
  const P dp2 = P::lift(l.p2.derivative(), Var::y);
  const P xi = u - p2;
  // (xi + P2) dxi + (P3 + P1 xi) dy with dxi = du - P2' dy
  const P du_coeff = xi + p2;
  const P dy_coeff = p3 + p1 * xi - (xi + p2) * dp2;
  const P want_dy = P::lift(c.q, Var::y) + u * P::lift(c.p, Var::y);
  return approx_equal(du_coeff, u, eps) && approx_equal(dy_coeff, want_dy, eps);
}

}  // namespace centerkit
