#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include "centerkit/lienard.hpp"

namespace centerkit {

enum class Stratum { Hamiltonian, PullBack, Both, Focus, Degenerate };

inline std::string_view to_string(Stratum s) {
  switch (s) {
    case Stratum::Hamiltonian: return "Hamiltonian";
    case Stratum::PullBack: return "PullBack";
    case Stratum::Both: return "Both";
    case Stratum::Focus: return "Focus";
    case Stratum::Degenerate: return "Degenerate";
  }
  return "?";
}

inline bool is_center(Stratum s) {
  return s == Stratum::Hamiltonian || s == Stratum::PullBack || s == Stratum::Both;
}

/// Raw values of the center conditions; zero (resp. positive for
/// nondegeneracy) means the condition holds.
template <class T>
struct CenterConditions {
  T trace{0};
  T hamiltonian{0};
  T pullback{0};
  T nondegeneracy{0};
};

template <class T>
struct CenterVerdict {
  Stratum stratum = Stratum::Focus;
  bool trace_ok = false;
  bool nondegenerate = false;
  CenterConditions<T> conditions;
  /// Names the first integral for centers, or the failing condition.
  std::string witness;

  bool center() const { return is_center(stratum); }
};

struct ClassifyOptions {
  /// Relative tolerance for floating-point parameters; ignored when exact.
  double eps = 1e-9;
};

namespace detail {

template <class T>
CenterVerdict<T> decide(const CenterConditions<T>& c, double trace_scale, double ham_scale, double pb_scale,
                        double nd_scale, const ClassifyOptions& opt) {
  CenterVerdict<T> v;
  v.conditions = c;
  if constexpr (is_exact_v<T>) {
    v.nondegenerate = c.nondegeneracy.sign() > 0;
  } else {
    v.nondegenerate = c.nondegeneracy > opt.eps * nd_scale;
  }
  v.trace_ok = near_zero(c.trace, trace_scale, opt.eps);
  const bool ham = near_zero(c.hamiltonian, ham_scale, opt.eps);
  const bool pb = near_zero(c.pullback, pb_scale, opt.eps);
  if (!v.nondegenerate) {
    v.stratum = Stratum::Degenerate;
    v.witness = "linear part is not of center type (nondegeneracy value <= 0)";
  } else if (!v.trace_ok) {
    v.stratum = Stratum::Focus;
    v.witness = "nonzero trace at the anti-saddle";
  } else if (ham && pb) {
    v.stratum = Stratum::Both;
    v.witness = "polynomial Hamiltonian; also pull back of a linear system";
  } else if (ham) {
    v.stratum = Stratum::Hamiltonian;
    v.witness = "polynomial Hamiltonian first integral";
  } else if (pb) {
    v.stratum = Stratum::PullBack;
    v.witness = "Darboux first integral pulled back from a linear system";
  } else {
    v.stratum = Stratum::Focus;
    v.witness = "trace vanishes but both the Hamiltonian and pull-back conditions fail";
  }
  return v;
}

}  // namespace detail

/// Center test for the Lienard quotient: a0 - b1 = 0, c1 - a0 b1 > 0 and
/// either a1 - 2 b2 = 0 or c2 - a0 (a1 + b2) = 0.
template <class T>
CenterVerdict<T> classify_lienard(const CherkasForm<T>& c, const ClassifyOptions& opt = {}) {
  const LienardSystem<T>& l = c.source;
  const T a0 = l.a0(), a1 = l.a1(), b1 = l.b1(), b2 = l.b2(), c1 = l.c1(), c2 = l.c2();
  CenterConditions<T> k{a0 - b1, a1 - T(2) * b2, c2 - a0 * (a1 + b2), c1 - a0 * b1};
  auto ad = [](const T& v) { return abs_double(v); };
  return detail::decide(k, ad(a0) + ad(b1), ad(a1) + 2 * ad(b2), ad(c2) + ad(a0) * (ad(a1) + ad(b2)),
                        ad(c1) + ad(a0) * ad(b1), opt);
}

/// Center test on the normalised reversible parameters:
///   2 a20 + b11 = 0 and either a21 + b12 = 0 or (1 - b30) a02 = a20 (2 a21 - b12).
/// Nondegeneracy is read off the quotient coefficients as c1 - a0 b1 > 0.
template <class T>
CenterVerdict<T> classify_reversible(const ReversibleParams<T>& p, const ClassifyOptions& opt = {}) {
  const LienardCoefficients<T> d = lienard_coefficients(p);
  CenterConditions<T> k{T(2) * p.a20 + p.b11, p.a21 + p.b12,
                        (T(1) - p.b30) * p.a02 - p.a20 * (T(2) * p.a21 - p.b12), d.c1 - d.a0 * d.b1};
  auto ad = [](const T& v) { return abs_double(v); };
  return detail::decide(k, 2 * ad(p.a20) + ad(p.b11), ad(p.a21) + ad(p.b12),
                        ad(T(1) - p.b30) * ad(p.a02) + ad(p.a20) * (2 * ad(p.a21) + ad(p.b12)),
                        ad(d.c1) + ad(d.a0) * ad(d.b1), opt);
}

}  // namespace centerkit
