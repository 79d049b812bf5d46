#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <thread>
#include <vector>

#include "centerkit/field.hpp"

namespace centerkit {

/// Double-precision evaluator for a polynomial field, stored as flat term lists.
class NumericField {
 public:
  struct Term {
    int i, j;
    double c;
  };

  NumericField() = default;

  template <class T>
  explicit NumericField(const CubicField<T>& f) : fx_(terms_of(f.fx())), fy_(terms_of(f.fy())) {}

  template <class T>
  NumericField(const Poly2<T>& fx, const Poly2<T>& fy) : fx_(terms_of(fx)), fy_(terms_of(fy)) {}

  std::array<double, 2> operator()(double x, double y) const {
    std::array<double, 4> px{1.0, x, x * x, x * x * x};
    std::array<double, 4> py{1.0, y, y * y, y * y * y};
    return {eval(fx_, px, py, x, y), eval(fy_, px, py, x, y)};
  }

  /// Time-reversed field.
  NumericField reversed() const {
    NumericField r = *this;
    for (auto& t : r.fx_) t.c = -t.c;
    for (auto& t : r.fy_) t.c = -t.c;
    return r;
  }

 private:
  template <class T>
  static std::vector<Term> terms_of(const Poly2<T>& p) {
    std::vector<Term> out;
    for (const auto& [k, c] : p.terms()) out.push_back({k.first, k.second, scalar_cast<double>(c)});
    return out;
  }

  static double eval(const std::vector<Term>& ts, const std::array<double, 4>& px, const std::array<double, 4>& py,
                     double x, double y) {
    double acc = 0.0;
    for (const auto& t : ts) {
      const double a = t.i < 4 ? px[static_cast<std::size_t>(t.i)] : std::pow(x, t.i);
      const double b = t.j < 4 ? py[static_cast<std::size_t>(t.j)] : std::pow(y, t.j);
      acc += t.c * a * b;
    }
    return acc;
  }

  std::vector<Term> fx_, fy_;
};

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 0.0;  // 0: automatic
  double h_min = 1e-14;
  std::size_t max_steps = 2'000'000;
  /// Stop early once |x| or |y| exceeds this bound (infinity: never).
  double window = std::numeric_limits<double>::infinity();
};

struct IntegratorStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  double max_error = 0.0;  // largest accepted scaled error estimate
};

struct Sample {
  double t, x, y;
};

/// Continuous extension of one accepted step, valid on [t0, t0 + h].
struct DenseSegment {
  double t0 = 0.0, h = 0.0;
  std::array<std::array<double, 2>, 5> r{};

  std::array<double, 2> at(double t) const {
    const double th = (t - t0) / h, th1 = 1.0 - th;
    std::array<double, 2> out{};
    for (std::size_t k = 0; k < 2; ++k)
      out[k] = r[0][k] + th * (r[1][k] + th1 * (r[2][k] + th * (r[3][k] + th1 * r[4][k])));
    return out;
  }
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<DenseSegment> segments;
  IntegratorStats stats;
  bool left_window = false;

  /// Dense-output state at time t within the integrated span.
  std::array<double, 2> at(double t) const {
    if (samples.empty()) throw std::out_of_range("Trajectory::at: empty trajectory");
    if (segments.empty()) return {samples.front().x, samples.front().y};
    const bool forward = segments.front().h > 0;
    auto it = std::lower_bound(segments.begin(), segments.end(), t, [forward](const DenseSegment& s, double v) {
      return forward ? s.t0 + s.h < v : s.t0 + s.h > v;
    });
    if (it == segments.end()) it = std::prev(segments.end());
    return it->at(t);
  }
};

/// Dormand-Prince 5(4) stepper with the standard 4th-order dense output.
class Dopri5 {
 public:
  using State = std::array<double, 2>;
  using Rhs = std::function<State(double, double)>;

  Dopri5(Rhs rhs, double t0, State y0, double direction, IntegratorOptions opt)
      : rhs_(std::move(rhs)), opt_(opt), t_(t0), y_(y0), dir_(direction >= 0 ? 1.0 : -1.0) {
    k1_ = rhs_(y_[0], y_[1]);
    h_ = opt_.h_init > 0 ? opt_.h_init : initial_step();
  }

  double t() const { return t_; }
  const State& y() const { return y_; }
  const IntegratorStats& stats() const { return stats_; }
  const DenseSegment& last_segment() const { return seg_; }

  /// Advances by one accepted step, never past t_end.
  void step(double t_end) {
    for (;;) {
      if (h_ < opt_.h_min * std::max(1.0, std::fabs(t_))) throw StepUnderflow("Dopri5: step size collapsed");
      const double h = std::min(h_, std::fabs(t_end - t_));
      const double hs = dir_ * h;
      State k2 = lin<1>(hs, {a21}, {k1_});
      State k3 = lin<2>(hs, {a31, a32}, {k1_, k2});
      State k4 = lin<3>(hs, {a41, a42, a43}, {k1_, k2, k3});
      State k5 = lin<4>(hs, {a51, a52, a53, a54}, {k1_, k2, k3, k4});
      State k6 = lin<5>(hs, {a61, a62, a63, a64, a65}, {k1_, k2, k3, k4, k5});
      State y1;
      for (std::size_t i = 0; i < 2; ++i)
        y1[i] = y_[i] + hs * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      State k7 = rhs_(y1[0], y1[1]);
      ++stats_.steps;

      double err = 0.0;
      for (std::size_t i = 0; i < 2; ++i) {
        const double e = hs * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = opt_.atol + opt_.rtol * std::max(std::fabs(y_[i]), std::fabs(y1[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / 2.0);
      if (!std::isfinite(err)) {
        ++stats_.rejected;
        h_ = 0.2 * h;
        continue;
      }
      const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        seg_.t0 = t_;
        seg_.h = hs;
        for (std::size_t i = 0; i < 2; ++i) {
          const double ydiff = y1[i] - y_[i];
          const double bspl = hs * k1_[i] - ydiff;
          seg_.r[0][i] = y_[i];
          seg_.r[1][i] = ydiff;
          seg_.r[2][i] = bspl;
          seg_.r[3][i] = ydiff - hs * k7[i] - bspl;
          seg_.r[4][i] = hs * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
        stats_.max_error = std::max(stats_.max_error, err);
        t_ = (h == std::fabs(t_end - t_)) ? t_end : t_ + hs;
        y_ = y1;
        k1_ = k7;
        h_ = h * fac;
        return;
      }
      ++stats_.rejected;
      h_ = h * std::min(1.0, fac);
    }
  }

 private:
  template <std::size_t N>
  State lin(double hs, const std::array<double, N>& a, const std::array<State, N>& k) {
    State y = y_;
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t i = 0; i < 2; ++i) y[i] += hs * a[j] * k[j][i];
    return rhs_(y[0], y[1]);
  }

  double initial_step() const {
    const double sc0 = opt_.atol + opt_.rtol * std::max(std::fabs(y_[0]), std::fabs(y_[1]));
    const double d0 = std::hypot(y_[0], y_[1]) / sc0, d1n = std::hypot(k1_[0], k1_[1]) / sc0;
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    return std::clamp(h0, 1e-8, 0.1);
  }

  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                          a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                          e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  Rhs rhs_;
  IntegratorOptions opt_;
  double t_;
  State y_;
  State k1_{};
  double h_ = 0.0;
  double dir_;
  IntegratorStats stats_;
  DenseSegment seg_;
};

/// Integrates from (x0, y0) over [0, T] (T < 0 integrates backwards).
inline Trajectory integrate(const NumericField& f, double x0, double y0, double T, const IntegratorOptions& opt = {}) {
  if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(T))
    throw std::invalid_argument("integrate: non-finite input");
  if (!(opt.rtol > 0) || !(opt.atol > 0)) throw std::invalid_argument("integrate: tolerances must be positive");
  Trajectory tr;
  tr.samples.push_back({0.0, x0, y0});
  if (T == 0.0) return tr;
  Dopri5 stepper([&f](double x, double y) { return f(x, y); }, 0.0, {x0, y0}, T, opt);
  while (stepper.t() != T) {
    if (tr.stats.steps >= opt.max_steps) throw StepUnderflow("integrate: step budget exhausted");
    stepper.step(T);
    tr.segments.push_back(stepper.last_segment());
    tr.samples.push_back({stepper.t(), stepper.y()[0], stepper.y()[1]});
    tr.stats = stepper.stats();
    if (std::fabs(stepper.y()[0]) > opt.window || std::fabs(stepper.y()[1]) > opt.window) {
      tr.left_window = true;
      break;
    }
  }
  return tr;
}

template <class T>
Trajectory integrate(const CubicField<T>& f, double x0, double y0, double T_end, const IntegratorOptions& opt = {}) {
  return integrate(NumericField(f), x0, y0, T_end, opt);
}

/// CSV with columns t,x,y (and an optional extra column), 17 significant digits.
inline void write_csv(std::ostream& os, const Trajectory& tr, const std::vector<double>* extra = nullptr,
                      const char* extra_name = "I") {
  os << "t,x,y";
  if (extra) os << ',' << extra_name;
  os << '\n';
  char buf[128];
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    const auto& s = tr.samples[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", s.t, s.x, s.y);
    os << buf;
    if (extra) {
      std::snprintf(buf, sizeof buf, ",%.17g", extra->at(i));
      os << buf;
    }
    os << '\n';
  }
}

namespace detail {

/// Bisects a sign change of component `comp` of the dense output of `seg`
/// down to `time_tol`. Returns (t, x, y) at the crossing.
inline Sample locate_crossing(const DenseSegment& seg, std::size_t comp, double time_tol = 1e-12) {
  double lo = seg.t0, hi = seg.t0 + seg.h;
  double flo = seg.at(lo)[comp];
  for (int i = 0; i < 200 && std::fabs(hi - lo) > time_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = seg.at(mid)[comp];
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  const auto s = seg.at(t);
  return {t, s[0], s[1]};
}

/// Steps until component `comp` changes sign `count` times (ignoring the
/// start point). Returns the crossings, or nullopt if t_max is reached.
/// Throws NoReturn when the orbit leaves the square window.
inline std::optional<std::vector<Sample>> crossings(const NumericField& f, double x0, double y0, std::size_t comp,
                                                     std::size_t count, double t_max, double window,
                                                     const IntegratorOptions& opt) {
  Dopri5 stepper([&f](double x, double y) { return f(x, y); }, 0.0, {x0, y0}, 1.0, opt);
  std::vector<Sample> out;
  double prev = (comp == 0 ? x0 : y0);
  while (stepper.t() < t_max) {
    if (stepper.stats().steps >= opt.max_steps) throw StepUnderflow("crossings: step budget exhausted");
    stepper.step(t_max);
    const auto& y = stepper.y();
    if (std::fabs(y[0]) > window || std::fabs(y[1]) > window)
      throw NoReturn("orbit left the integration window");
    const double cur = y[comp];
    if (prev != 0.0 && cur != 0.0 && (prev > 0) != (cur > 0)) {
      out.push_back(locate_crossing(stepper.last_segment(), comp));
      if (out.size() == count) return out;
    }
    if (cur != 0.0) prev = cur;
  }
  return std::nullopt;
}

}  // namespace detail

struct DisplacementSample {
  double r = 0.0;
  double d = std::numeric_limits<double>::quiet_NaN();
  bool returned = false;
  double return_time = 0.0;
};

struct DisplacementOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double window = 3.0;
  double t_max = 200.0;
  /// Half-return must land right of the saddle by at least this margin.
  double saddle_gap = 1e-3;
};

/// x-coordinate of the saddle near the origin (Newton from (0, 0)).
inline double saddle_x(const NumericField& f) {
  double x = 0.0, y = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto g = f(x, y);
    const double h = 1e-7;
    const auto gx = f(x + h, y), gy = f(x, y + h);
    const double j00 = (gx[0] - g[0]) / h, j01 = (gy[0] - g[0]) / h;
    const double j10 = (gx[1] - g[1]) / h, j11 = (gy[1] - g[1]) / h;
    const double det = j00 * j11 - j01 * j10;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dx = (g[0] * j11 - j01 * g[1]) / det, dy = (j00 * g[1] - j10 * g[0]) / det;
    x -= dx;
    y -= dy;
    if (std::hypot(dx, dy) < 1e-14) break;
  }
  return std::isfinite(x) ? x : 0.0;
}

/// Return-map displacement on y = 0 for the orbit through (1 + r, 0): the
/// second crossing of y = 0 after leaving the start point, minus 1 + r.
inline DisplacementSample displacement(const NumericField& f, double r, const DisplacementOptions& opt = {}) {
  if (!(r > 0)) throw std::invalid_argument("displacement: r must be positive");
  IntegratorOptions io;
  io.rtol = opt.rtol;
  io.atol = opt.atol;
  DisplacementSample s;
  s.r = r;
  const auto cr = detail::crossings(f, 1.0 + r, 0.0, 1, 2, opt.t_max, opt.window, io);
  if (!cr) return s;
  const double xs = saddle_x(f);
  if ((*cr)[0].x <= xs + opt.saddle_gap || (*cr)[1].x <= xs + opt.saddle_gap)
    throw NoReturn("displacement: start point lies outside the interior period annulus");
  s.returned = true;
  s.d = (*cr)[1].x - (1.0 + r);
  s.return_time = (*cr)[1].t;
  return s;
}

template <class T>
DisplacementSample displacement(const CubicField<T>& f, double r, const DisplacementOptions& opt = {}) {
  return displacement(NumericField(f), r, opt);
}

/// Runs fn over items with at most `threads` workers; results keep input order.
template <class Item, class Fn>
auto parallel_map(std::span<const Item> items, Fn fn, unsigned threads = 1) {
  using R = decltype(fn(items[0]));
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < items.size(); i += stride) {
      try {
        slots[i] = fn(items[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items.size())));
  if (n == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(work, k, n);
  }
  std::vector<R> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

/// True iff every radius returns with |d| < tol. NoReturn propagates.
inline bool check_center_numeric(const NumericField& f, std::span<const double> radii, double tol,
                                 const DisplacementOptions& opt = {}, unsigned threads = 1) {
  if (radii.empty()) throw std::invalid_argument("check_center_numeric: no radii");
  const auto samples = parallel_map(radii, [&](double r) { return displacement(f, r, opt); }, threads);
  return std::all_of(samples.begin(), samples.end(),
                     [tol](const DisplacementSample& s) { return s.returned && std::fabs(s.d) < tol; });
}

struct AnnulusOptions {
  double tol = 1e-7;
  double rtol = 1e-12;
  double atol = 1e-14;
  double window = 10.0;
  double t_max = 200.0;
};

/// Follows the orbit through (0, y_start) once around the exterior period
/// annulus (two crossings of x = 0) and reports whether it closes up.
inline bool exterior_annulus_closed(const NumericField& f, double y_start, const AnnulusOptions& opt = {}) {
  // Outside the separatrix loop of the base field: level H = y^2 / 2 well above the saddle level 0.
  if (!(0.5 * y_start * y_start > 0.25))
    throw std::invalid_argument("exterior_annulus_closed: start point is not in the exterior annulus");
  IntegratorOptions io;
  io.rtol = opt.rtol;
  io.atol = opt.atol;
  const auto cr = detail::crossings(f, 0.0, y_start, 0, 2, opt.t_max, opt.window, io);
  if (!cr) throw NoReturn("exterior_annulus_closed: orbit did not come back within t_max");
  if ((*cr)[0].y >= 0.0) return false;
  return std::fabs((*cr)[1].y - y_start) < opt.tol;
}

template <class T>
bool exterior_annulus_closed(const CubicField<T>& f, double y_start, const AnnulusOptions& opt = {}) {
  return exterior_annulus_closed(NumericField(f), y_start, opt);
}

}  // namespace centerkit
