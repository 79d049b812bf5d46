#pragma once

// Deterministic parameter samplers shared by the unit tests and the
// acceptance binary.

#include <cstdint>
#include <random>

#include "centerkit/centerkit.hpp"

namespace centerkit::testing {

using Params = ReversibleParams<Rational>;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform rational k / den in [-bound, bound], den in [1, max_den].
  Rational coefficient(const Rational& bound = Rational(1, 4), long max_den = 40) {
    std::uniform_int_distribution<long> dd(1, max_den);
    const long den = dd(rng_);
    const Rational top = bound * Rational(den);
    const long kmax = static_cast<long>(top.to_double() + 1e-9);
    std::uniform_int_distribution<long> kd(-kmax, kmax);
    return Rational(kd(rng_), den);
  }

  Params any(const Rational& bound = Rational(1, 4)) {
    Params p;
    for (std::size_t i = 0; i < Params::size; ++i) p[i] = coefficient(bound);
    return p;
  }

  /// Trace-free draw; a20, a21, a01, a03, b30 free.
  Params trace_free(const Rational& bound = Rational(1, 4)) {
    Params p = any(bound);
    p.b11 = Rational(-2) * p.a20;
    return p;
  }

  Params hamiltonian(const Rational& bound = Rational(1, 4)) {
    for (;;) {
      Params p = trace_free(bound);
      p.b12 = -p.a21;
      if (!pullback_value(p).is_zero()) return p;
    }
  }

  Params pullback(const Rational& bound = Rational(1, 4)) {
    for (;;) {
      Params p = trace_free(bound);
      if ((p.a21 + p.b12).is_zero() || p.a20.is_zero()) continue;
      p.a02 = p.a20 * (Rational(2) * p.a21 - p.b12) / (Rational(1) - p.b30);
      return p;
    }
  }

  Params both(const Rational& bound = Rational(1, 4)) {
    Params p = trace_free(bound);
    p.b12 = -p.a21;
    p.a02 = p.a20 * (Rational(2) * p.a21 - p.b12) / (Rational(1) - p.b30);
    return p;
  }

  /// Trace zero with both alternatives violated by a clear margin.
  Params focus(const Rational& bound = Rational(1, 4)) {
    for (;;) {
      Params p = trace_free(bound);
      if ((p.a21 + p.b12).abs() < bound * Rational(2, 5)) continue;
      if (pullback_value(p).abs() < bound / Rational(5)) continue;
      return p;
    }
  }

  std::mt19937_64& engine() { return rng_; }

  static Rational pullback_value(const Params& p) {
    return (Rational(1) - p.b30) * p.a02 - p.a20 * (Rational(2) * p.a21 - p.b12);
  }

 private:
  std::mt19937_64 rng_;
};

inline Params make(std::initializer_list<std::pair<const char*, Rational>> kv) {
  Params p;
  for (const auto& [name, v] : kv) {
    std::size_t i = 0;
    while (i < Params::size && Params::names[i] != std::string_view(name)) ++i;
    if (i == Params::size) throw std::invalid_argument(std::string("make: no coefficient ") + name);
    p[i] = v;
  }
  return p;
}

}  // namespace centerkit::testing
