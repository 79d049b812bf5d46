#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "centerkit/field.hpp"

namespace centerkit {

/// Obstructions to a formal first integral at the anti-saddle (1, 0).
/// eta[i] is the coefficient at degree 2(i + 2), i.e. eta_4, eta_6, ...
struct FocusQuantities {
  Rational trace;
  Rational determinant;
  std::vector<Rational> eta;

  static constexpr int degree_of(std::size_t i) { return 2 * (static_cast<int>(i) + 2); }
  bool all_vanish() const {
    for (const auto& e : eta)
      if (!e.is_zero()) return false;
    return true;
  }
};

namespace detail {

/// Solves the square system a * x = b exactly; throws if singular.
inline std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::logic_error("solve_exact: singular homological system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

}  // namespace detail

/// Builds F = (c u^2 + v^2)/2 + F_3 + F_4 + ... around (1, 0) after an exact
/// shear bringing the linear part to u' = v, v' = -c u, and records the
/// coefficient eta_{2m} of (c u^2 + v^2)^m that no choice of F_{2m} can
/// remove from dF/dt. Everything stays in Q; `order` N yields eta_4..eta_{2N}.
inline FocusQuantities focus_quantities(const CubicField<Rational>& f, int order = 4) {
  using R = Rational;
  using P = Poly2<R>;
  if (order < 2) throw std::invalid_argument("focus_quantities: order must be >= 2");
  if (!f.fx()(R(1), R(0)).is_zero() || !f.fy()(R(1), R(0)).is_zero())
    throw ShiftNotRational("focus_quantities: (1, 0) is not an exact singular point");

  const Matrix2<R> j = jacobian_at(f, R(1), R(0));
  FocusQuantities out;
  out.trace = j.trace();
  out.determinant = j.det();
  if (!out.trace.is_zero()) throw NotCenterType("focus_quantities: nonzero trace at (1, 0)");
  if (out.determinant.sign() <= 0) throw NotCenterType("focus_quantities: determinant <= 0 at (1, 0)");

  // Shift to the origin, then U = u, V = alpha u + beta v (beta != 0 since det > 0).
  const R alpha = j.a, beta = j.b, c = out.determinant;
  const P uu = P::x(), vv = P::y();
  const P sx = uu + P::constant(R(1));
  const P v_of = (vv - uu * alpha) * (R(1) / beta);
  const P g1 = compose(f.fx(), sx, v_of);
  const P g2 = compose(f.fy(), sx, v_of);
  const P udot = g1;
  const P vdot = g1 * alpha + g2 * beta;
  const P nl_u = udot - vv;
  const P nl_v = vdot + uu * c;
  if (nl_u.total_degree() >= 0 && (!nl_u.homogeneous_part(1).is_zero() || !nl_u.homogeneous_part(0).is_zero()))
    throw std::logic_error("focus_quantities: shear left a linear residue");
  if (!nl_v.homogeneous_part(1).is_zero() || !nl_v.homogeneous_part(0).is_zero())
    throw std::logic_error("focus_quantities: shear left a linear residue");

  const P w = uu * uu * c + vv * vv;  // c u^2 + v^2
  P integral = w * R(1, 2);
  const int top = 2 * order;
  for (int n = 3; n <= top; ++n) {
    // Degree-n part of the nonlinear contribution to dF/dt.
    const P drift = (integral.diff(Var::x) * nl_u + integral.diff(Var::y) * nl_v).homogeneous_part(n);
    const bool even = n % 2 == 0;
    // Unknowns: coefficients phi_a of u^a v^(n-a), a = 0..n, with phi_0
    // (pure v^n) pinned to zero on even degrees, plus eta when even.
    const std::size_t unknowns = static_cast<std::size_t>(n) + 1;
    std::vector<std::vector<R>> a(unknowns, std::vector<R>(unknowns, R(0)));
    std::vector<R> b(unknowns, R(0));
    // Row r <-> monomial u^r v^(n-r). L(u^a v^b) = a u^(a-1) v^(b+1) - c b u^(a+1) v^(b-1).
    for (int e = 0; e <= n; ++e) {
      const int col = e;  // column index of phi_e
      if (even && e == 0) continue;
      const int bexp = n - e;
      if (e >= 1) a[static_cast<std::size_t>(e - 1)][static_cast<std::size_t>(col)] += R(e);
      if (bexp >= 1) a[static_cast<std::size_t>(e + 1)][static_cast<std::size_t>(col)] -= c * R(bexp);
    }
    P wm;
    if (even) {
      wm = pow(w, n / 2);
      for (int r = 0; r <= n; ++r) a[static_cast<std::size_t>(r)][0] = -wm.coeff(r, n - r);
    }
    for (int r = 0; r <= n; ++r) b[static_cast<std::size_t>(r)] = -drift.coeff(r, n - r);
    const std::vector<R> sol = detail::solve_exact(std::move(a), std::move(b));
    for (int e = even ? 1 : 0; e <= n; ++e) integral.add_term(e, n - e, sol[static_cast<std::size_t>(e)]);
    if (even && n >= 4) out.eta.push_back(sol[0]);
  }
  return out;
}

/// Index (4, 6, 8, ...) and value of the first nonvanishing eta, if any.
inline std::optional<std::pair<int, Rational>> first_nonzero_quantity(const CubicField<Rational>& f, int order = 4) {
  const FocusQuantities fq = focus_quantities(f, order);
  for (std::size_t i = 0; i < fq.eta.size(); ++i)
    if (!fq.eta[i].is_zero()) return std::make_pair(FocusQuantities::degree_of(i), fq.eta[i]);
  return std::nullopt;
}

}  // namespace centerkit
