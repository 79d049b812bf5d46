#pragma once

// Phase portraits as SVG polylines or CSV.
//
// Seeds:
//   interior  (+-(1 + r), 0)          r = 0.1, 0.25, 0.4, 0.55
//   exterior  (0, y0)                 y0 = 0.8, 1.2, 1.6, 2.0
//   separatrix  saddle +- 0.01 in x and in y
// Every seed is integrated forward and backward for t_max, stopping at the
// window edge.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "centerkit/flow.hpp"

namespace centerkit::cli {

struct PortraitOptions {
  double t_max = 30.0;
  double rtol = 1e-9;
  double window = 3.0;
};

struct PortraitSeed {
  std::string label;
  double x, y;
};

struct PortraitOrbit {
  PortraitSeed seed;
  /// Backward branch reversed, then the forward branch: increasing t.
  std::vector<Sample> points;
};

inline std::vector<PortraitSeed> portrait_seeds(const NumericField& f) {
  std::vector<PortraitSeed> seeds;
  for (double r : {0.1, 0.25, 0.4, 0.55}) {
    seeds.push_back({"interior+", 1.0 + r, 0.0});
    seeds.push_back({"interior-", -1.0 - r, 0.0});
  }
  for (double y0 : {0.8, 1.2, 1.6, 2.0}) seeds.push_back({"exterior", 0.0, y0});
  const double xs = saddle_x(f), h = 0.01;
  seeds.push_back({"separatrix", xs + h, 0.0});
  seeds.push_back({"separatrix", xs - h, 0.0});
  seeds.push_back({"separatrix", xs, h});
  seeds.push_back({"separatrix", xs, -h});
  return seeds;
}

inline std::vector<PortraitOrbit> trace_portrait(const NumericField& f, const PortraitOptions& opt = {}) {
  IntegratorOptions io;
  io.rtol = opt.rtol;
  io.atol = opt.rtol * 1e-2;
  io.window = opt.window;
  std::vector<PortraitOrbit> out;
  for (const auto& s : portrait_seeds(f)) {
    PortraitOrbit o{s, {}};
    Trajectory back, fwd;
    try {
      back = integrate(f, s.x, s.y, -opt.t_max, io);
    } catch (const StepUnderflow&) {
    }
    try {
      fwd = integrate(f, s.x, s.y, opt.t_max, io);
    } catch (const StepUnderflow&) {
    }
    for (auto it = back.samples.rbegin(); it != back.samples.rend(); ++it)
      if (it + 1 != back.samples.rend()) o.points.push_back(*it);
    for (const auto& p : fwd.samples) o.points.push_back(p);
    if (o.points.empty()) o.points.push_back({0.0, s.x, s.y});
    out.push_back(std::move(o));
  }
  return out;
}

inline void write_portrait_csv(std::ostream& os, const std::vector<PortraitOrbit>& orbits) {
  os << "orbit,kind,t,x,y\n";
  char buf[128];
  for (std::size_t k = 0; k < orbits.size(); ++k)
    for (const auto& p : orbits[k].points) {
      std::snprintf(buf, sizeof buf, "%zu,%s,%.17g,%.17g,%.17g\n", k, orbits[k].seed.label.c_str(), p.t, p.x, p.y);
      os << buf;
    }
}

inline void write_portrait_svg(std::ostream& os, const std::vector<PortraitOrbit>& orbits, double saddle) {
  auto colour = [](const std::string& label) {
    if (label.rfind("interior", 0) == 0) return "#1f77b4";
    if (label == "exterior") return "#2ca02c";
    return "#d62728";
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-3 -3 6 6\" width=\"600\" height=\"600\">\n";
  os << "<rect x=\"-3\" y=\"-3\" width=\"6\" height=\"6\" fill=\"white\"/>\n";
  // Flip so that y points up.
  os << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"0.01\">\n";
  os << "<line x1=\"-3\" y1=\"0\" x2=\"3\" y2=\"0\" stroke=\"#cccccc\"/>\n";
  os << "<line x1=\"0\" y1=\"-3\" x2=\"0\" y2=\"3\" stroke=\"#cccccc\"/>\n";
  char buf[64];
  for (const auto& o : orbits) {
    os << "<polyline stroke=\"" << colour(o.seed.label) << "\" points=\"";
    for (const auto& p : o.points) {
      std::snprintf(buf, sizeof buf, "%.5f,%.5f ", p.x, p.y);
      os << buf;
    }
    os << "\"/>\n";
  }
  for (double x : {-1.0, 1.0}) os << "<circle cx=\"" << x << "\" cy=\"0\" r=\"0.04\" fill=\"black\"/>\n";
  std::snprintf(buf, sizeof buf, "%.6f", saddle);
  os << "<circle cx=\"" << buf << "\" cy=\"0\" r=\"0.04\" fill=\"none\" stroke=\"black\"/>\n";
  os << "</g>\n</svg>\n";
}

}  // namespace centerkit::cli
