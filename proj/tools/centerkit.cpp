// centerkit: classify, reduce, verify and draw reversible cubic perturbations
// of x' = y, y' = x - x^3 around the anti-saddles (+-1, 0).
//
//   centerkit classify FILE [--json]
//   centerkit reduce   FILE [--json]
//   centerkit verify   FILE [--order N] [--rtol X] [--radii a,b,c] [--threads K] [--json]
//   centerkit portrait FILE [--svg out.svg] [--csv out.csv]
//
// Exit codes: 0 center (or success), 1 focus (or oracle disagreement),
// 2 degenerate or numerical failure, 3 unreadable input.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "centerkit/centerkit.hpp"
#include "centerkit/cli/paramfile.hpp"
#include "centerkit/cli/portrait.hpp"

using namespace centerkit;
using centerkit::cli::ParamFile;
using centerkit::cli::ParamFileError;
using nlohmann::json;

namespace {

enum Exit { kCenter = 0, kFocus = 1, kDegenerate = 2, kParse = 3 };

struct Flags {
  std::string file;
  bool json = false;
  int order = 0;
  double rtol = 0.0;
  std::vector<double> radii;
  unsigned threads = 0;
  std::string svg, csv;
};

ParamFile load(const Flags& fl) {
  std::ifstream in(fl.file);
  if (!in) throw ParamFileError("cannot open " + fl.file);
  std::stringstream ss;
  ss << in.rdbuf();
  ParamFile pf = cli::parse_param_text(ss.str());
  if (fl.order) {
    if (fl.order < 2) throw ParamFileError("--order must be >= 2");
    pf.options.order = fl.order;
  }
  if (fl.rtol > 0) pf.options.rtol = fl.rtol;
  if (!fl.radii.empty()) {
    for (double r : fl.radii)
      if (!(r > 0)) throw ParamFileError("--radii must be positive");
    pf.options.radii = fl.radii;
  }
  if (fl.threads) pf.options.threads = fl.threads;
  return pf;
}

Rational exact_of(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return Rational::parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

/// Normal-form parameters: exact when the input is, otherwise the
/// double-precision normalisation.
struct Resolved {
  std::optional<ReversibleParams<Rational>> exact;
  ReversibleParams<double> approx;
  std::optional<Normalization> normalization;
};

Resolved resolve(const ParamFile& pf) {
  Resolved r;
  if (!pf.raw()) {
    r.exact = std::get<ReversibleParams<Rational>>(pf.params);
    r.approx = r.exact->convert<double>();
    return r;
  }
  r.normalization = normalize(std::get<ReversibleParamsRaw<Rational>>(pf.params));
  r.exact = r.normalization->exact;
  r.approx = r.normalization->approx;
  return r;
}

/// Normalised parameters as a ParamFile, so --json output can be fed back in.
ParamFile normalized_file(const Resolved& r, const cli::RunOptions& opt) {
  ParamFile out;
  if (r.exact) {
    out.params = *r.exact;
  } else {
    ReversibleParams<Rational> q;
    for (std::size_t i = 0; i < q.size; ++i) q[i] = exact_of(r.approx[i]);
    out.params = q;
  }
  out.options = opt;
  return out;
}

std::string num(const Rational& v) { return v.str(); }
std::string num(double v) { return scalar_traits<double>::to_string(v); }

template <class T>
json verdict_json(const CenterVerdict<T>& v) {
  return {{"stratum", std::string(to_string(v.stratum))},
          {"center", v.center()},
          {"trace", num(v.conditions.trace)},
          {"hamiltonian", num(v.conditions.hamiltonian)},
          {"pullback", num(v.conditions.pullback)},
          {"nondegeneracy", num(v.conditions.nondegeneracy)},
          {"witness", v.witness}};
}

template <class T>
void print_verdict(const CenterVerdict<T>& v) {
  std::cout << "stratum:        " << to_string(v.stratum) << "\n"
            << "center:         " << (v.center() ? "yes" : "no") << "\n"
            << "2a20+b11:       " << num(v.conditions.trace) << "\n"
            << "a21+b12:        " << num(v.conditions.hamiltonian) << "\n"
            << "(1-b30)a02-a20(2a21-b12): " << num(v.conditions.pullback) << "\n"
            << "c1-a0b1:        " << num(v.conditions.nondegeneracy) << "\n"
            << "witness:        " << v.witness << "\n";
}

int exit_for(Stratum s) {
  if (is_center(s)) return kCenter;
  return s == Stratum::Degenerate ? kDegenerate : kFocus;
}

int cmd_classify(const Flags& fl) {
  const ParamFile pf = load(fl);
  const Resolved r = resolve(pf);
  Stratum s;
  json report;
  if (r.exact) {
    const auto v = classify_reversible(*r.exact);
    s = v.stratum;
    report = verdict_json(v);
    if (!fl.json) print_verdict(v);
  } else {
    const auto v = classify_reversible(r.approx);
    s = v.stratum;
    report = verdict_json(v);
    if (!fl.json) print_verdict(v);
  }
  report["exact"] = r.exact.has_value();
  if (fl.json) {
    json out = cli::to_json(normalized_file(r, pf.options));
    out["report"] = report;
    std::cout << out.dump(2) << "\n";
  } else if (!r.exact) {
    std::cout << "note:           parameters are floating point after normalisation\n";
  }
  return exit_for(s);
}

template <class T>
json poly_json(const Poly1<T>& p) {
  json a = json::array();
  for (int i = 0; i <= std::max(p.degree(), 0); ++i) a.push_back(num(p.coeff(i)));
  return a;
}

template <class T>
int reduce_with(const ParamFile& pf, const Resolved& r, const ReversibleParams<T>& params, bool as_json) {
  const LienardSystem<T> l = reduce_quotient(params);
  const CherkasForm<T> c = to_cherkas(l);
  const T A = c.q.coeff(1), B = c.q.coeff(3), C = c.p.coeff(1);
  const bool linear = near_zero(c.p.coeff(0), 1.0, 1e-12) && near_zero(c.q.coeff(2), 1.0, 1e-12);
  if (as_json) {
    json out = cli::to_json(normalized_file(r, pf.options));
    out["report"] = {{"P1", poly_json(l.p1)},     {"P2", poly_json(l.p2)},         {"P3", poly_json(l.p3)},
                     {"p", poly_json(c.p)},       {"q", poly_json(c.q)},           {"P", poly_json(c.p_prim)},
                     {"Q", poly_json(c.q_prim)},  {"A", num(A)},                   {"B", num(B)},
                     {"C", num(C)},               {"linear_quotient", linear},     {"unit", num(l.provenance.unit)},
                     {"exact", r.exact.has_value()}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "quotient (" << l.provenance.substitution << ", unit " << num(l.provenance.unit) << ")\n"
            << "  P1(y) = " << l.p1.str() << "\n"
            << "  P2(y) = " << l.p2.str() << "\n"
            << "  P3(y) = " << l.p3.str() << "\n"
            << "Lienard form y' = u, u' = -q(y) - u p(y)\n"
            << "  p(y) = " << c.p.str() << "\n"
            << "  q(y) = " << c.q.str() << "\n"
            << "  P(y) = " << c.p_prim.str() << "\n"
            << "  Q(y) = " << c.q_prim.str() << "\n"
            << "linear quotient v' = 2u, u' = -A - B v - C u\n"
            << "  A = " << num(A) << "\n"
            << "  B = " << num(B) << "\n"
            << "  C = " << num(C) << "\n"
            << "  applies: " << (linear ? "yes" : "no (p(0) or q''(0) nonzero)") << "\n";
  return 0;
}

int cmd_reduce(const Flags& fl) {
  const ParamFile pf = load(fl);
  const Resolved r = resolve(pf);
  return r.exact ? reduce_with(pf, r, *r.exact, fl.json) : reduce_with(pf, r, r.approx, fl.json);
}

struct OracleRow {
  std::string name;
  bool ran = false;
  bool center = false;
  bool conclusive = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int cmd_verify(const Flags& fl) {
  const ParamFile pf = load(fl);
  const Resolved r = resolve(pf);
  const cli::RunOptions& opt = pf.options;
  std::vector<OracleRow> rows;

  // Algebra.
  Stratum stratum;
  {
    OracleRow row{"algebraic", true, false, true, {}};
    if (r.exact) {
      const auto v = classify_reversible(*r.exact);
      stratum = v.stratum;
      const auto lv = classify_lienard(to_cherkas(reduce_quotient(*r.exact)));
      rows.push_back({"lienard", true, lv.center(), true, std::string(to_string(lv.stratum))});
    } else {
      const auto v = classify_reversible(r.approx);
      stratum = v.stratum;
      const auto lv = classify_lienard(to_cherkas(reduce_quotient(r.approx)));
      rows.push_back({"lienard", true, lv.center(), true, std::string(to_string(lv.stratum))});
    }
    row.center = is_center(stratum);
    row.detail = std::string(to_string(stratum));
    rows.insert(rows.begin(), row);
  }
  if (stratum == Stratum::Degenerate) {
    std::cerr << "centerkit: linear part at (1, 0) is not of center type; oracles do not apply\n";
    return kDegenerate;
  }

  // Focus quantities.
  {
    OracleRow row{"focus quantities", false, false, true, {}};
    if (r.exact) {
      row.ran = true;
      try {
        const FocusQuantities fq = focus_quantities(build(*r.exact), opt.order);
        row.center = fq.all_vanish();
        row.detail = "order " + std::to_string(opt.order) + ":";
        for (std::size_t i = 0; i < fq.eta.size(); ++i)
          row.detail += " eta" + std::to_string(FocusQuantities::degree_of(i)) + "=" + fq.eta[i].str();
      } catch (const NotCenterType&) {
        row.center = false;
        row.detail = "nonzero trace";
      }
    } else {
      row.detail = "skipped: parameters are not exact";
    }
    rows.push_back(row);
  }

  // Displacement.
  const NumericField field(build(r.approx));
  {
    OracleRow row{"displacement", true, false, true, {}};
    std::vector<double> radii = opt.radii;
    if (const char* seed = std::getenv("CENTERKIT_SEED")) {
      std::mt19937_64 rng(std::strtoull(seed, nullptr, 10));
      std::shuffle(radii.begin(), radii.end(), rng);
    }
    DisplacementOptions dopt;
    dopt.rtol = opt.rtol;
    dopt.atol = opt.rtol * 1e-2;
    try {
      auto samples = parallel_map(std::span<const double>(radii),
                                  [&](double rr) { return displacement(field, rr, dopt); }, opt.threads);
      std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.r < b.r; });
      bool all_small = true, some_large = false;
      double worst = 0.0;
      for (const auto& s : samples) {
        if (!s.returned) {
          all_small = false;
          continue;
        }
        worst = std::max(worst, std::fabs(s.d));
        if (!(std::fabs(s.d) < opt.tol)) all_small = false;
        if (std::fabs(s.d) > opt.focus_tol) some_large = true;
      }
      row.center = all_small;
      row.conclusive = all_small || some_large;
      row.detail = "max |d| = " + fmt(worst) + " over " + std::to_string(samples.size()) + " radii";
      if (!row.conclusive) row.detail += " (inconclusive)";
    } catch (const NoReturn& e) {
      row.conclusive = false;
      row.detail = e.what();
    } catch (const StepUnderflow& e) {
      row.conclusive = false;
      row.detail = e.what();
    }
    rows.push_back(row);
  }

  // Conservation of the constructed first integral.
  {
    OracleRow row{"first integral", false, false, true, {}};
    const double r0 = opt.radii.back();
    IntegratorOptions io;
    io.rtol = 1e-10;
    io.atol = 1e-12;
    const bool ham = stratum == Stratum::Hamiltonian || stratum == Stratum::Both;
    if (r.exact && (ham || stratum == Stratum::PullBack)) {
      row.ran = true;
      try {
        double drift;
        if (ham) {
          const Poly2<double> h = hamiltonian_integral(build(*r.exact)).convert<double>();
          const Trajectory tr = integrate(field, 1.0 + r0, 0.0, 100.0, io);
          std::vector<double> vals;
          for (const auto& s : tr.samples) vals.push_back(h(s.x, s.y));
          drift = conservation_drift(vals, false);
          row.detail = "polynomial H, T=100, drift " + fmt(drift);
        } else {
          const PullbackIntegral pb = pullback_integral(*r.exact);
          const Trajectory tr = integrate(field, 1.0 + r0, 0.0, 50.0, io);
          drift = conservation_drift(pb.along(tr), pb.integral().logarithmic());
          row.detail = std::string("pulled-back ") + std::string(to_string(pb.integral().kind)) +
                       " integral, T=50, drift " + fmt(drift);
        }
        row.center = drift < 1e-8;
      } catch (const Error& e) {
        row.center = false;
        row.detail = e.what();
      }
    } else {
      row.detail = r.exact ? "skipped: no integral on this stratum" : "skipped: parameters are not exact";
    }
    rows.push_back(row);
  }

  const bool expected = is_center(stratum);
  bool agree = true;
  for (const auto& row : rows)
    if (row.ran && (!row.conclusive || row.center != expected)) agree = false;

  if (fl.json) {
    json out = cli::to_json(normalized_file(r, opt));
    json matrix = json::array();
    for (const auto& row : rows)
      matrix.push_back({{"oracle", row.name},
                        {"ran", row.ran},
                        {"verdict", !row.ran ? "skipped" : !row.conclusive ? "inconclusive" : row.center ? "center" : "focus"},
                        {"detail", row.detail}});
    out["report"] = {{"stratum", std::string(to_string(stratum))}, {"oracles", matrix}, {"agree", agree}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& row : rows) {
      const char* verdict = !row.ran ? "-" : !row.conclusive ? "inconclusive" : row.center ? "center" : "focus";
      std::printf("%-17s %-13s %s\n", row.name.c_str(), verdict, row.detail.c_str());
    }
    std::printf("agreement: %s\n", agree ? "yes" : "NO");
  }
  return agree ? 0 : 1;
}

int cmd_portrait(const Flags& fl) {
  const ParamFile pf = load(fl);
  const Resolved r = resolve(pf);
  if (fl.svg.empty() && fl.csv.empty()) throw ParamFileError("portrait needs --svg and/or --csv");
  const NumericField field(build(r.approx));
  cli::PortraitOptions po;
  po.rtol = std::min(1e-9, pf.options.rtol * 1e3);
  const auto orbits = cli::trace_portrait(field, po);
  if (!fl.svg.empty()) {
    std::ofstream os(fl.svg);
    if (!os) throw std::runtime_error("cannot write " + fl.svg);
    cli::write_portrait_svg(os, orbits, saddle_x(field));
  }
  if (!fl.csv.empty()) {
    std::ofstream os(fl.csv);
    if (!os) throw std::runtime_error("cannot write " + fl.csv);
    cli::write_portrait_csv(os, orbits);
  }
  std::size_t n = 0;
  for (const auto& o : orbits) n += o.points.size();
  std::cout << orbits.size() << " orbits, " << n << " points\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Center classification for reversible cubic perturbations of x' = y, y' = x - x^3"};
  app.require_subcommand(1);
  Flags fl;

  auto common = [&fl](CLI::App* sub) {
    sub->add_option("file", fl.file, "parameter file (JSON)")->required();
    sub->add_flag("--json", fl.json, "machine-readable output");
  };
  auto* classify = app.add_subcommand("classify", "stratum verdict and center conditions");
  common(classify);
  auto* reduce = app.add_subcommand("reduce", "quotient, Lienard and linear-quotient coefficients");
  common(reduce);
  auto* verify = app.add_subcommand("verify", "run every oracle and print the agreement matrix");
  common(verify);
  verify->add_option("--order", fl.order, "focus quantities up to eta_{2N}");
  verify->add_option("--rtol", fl.rtol, "integrator relative tolerance");
  verify->add_option("--radii", fl.radii, "displacement radii")->delimiter(',');
  verify->add_option("--threads", fl.threads, "worker threads for the radius sweep");
  auto* portrait = app.add_subcommand("portrait", "phase portrait as SVG and/or CSV");
  common(portrait);
  portrait->add_option("--svg", fl.svg, "SVG output path");
  portrait->add_option("--csv", fl.csv, "CSV output path");
  portrait->add_option("--rtol", fl.rtol, "integrator relative tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*classify) return cmd_classify(fl);
    if (*reduce) return cmd_reduce(fl);
    if (*verify) return cmd_verify(fl);
    return cmd_portrait(fl);
  } catch (const ParamFileError& e) {
    std::cerr << "centerkit: " << e.what() << "\n";
    return kParse;
  } catch (const DegreeBoundExceeded& e) {
    std::cerr << "centerkit: " << e.what() << "\n";
    return kParse;
  } catch (const SingularReduction& e) {
    std::cerr << "centerkit: SingularReduction: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "centerkit: " << e.what() << "\n";
    return kDegenerate;
  }
}
