// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.  Exits nonzero if any criterion
// fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "muhs/elliptic.hpp"
#include "muhs/evolution.hpp"
#include "muhs/geometry.hpp"
#include "muhs/hierarchy.hpp"
#include "muhs/initspec.hpp"
#include "muhs/spectral.hpp"
#include "muhs/waves.hpp"

using namespace muhs;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTcritCos1 = 0.27706321198978599;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void require_le(double value, double bound, const std::string& what) {
    std::ostringstream os;
    os << what << " = " << value << " (bound " << bound << ")";
    require(value <= bound, os.str());
  }
  void info(const std::string& what) { notes.push_back("note: " + what); }
};

RealField from_text(const std::string& text, int n) {
  return parse_init(text).build(PeriodicGrid(n));
}

WaveStats stats_oracle(double c, double m, double M, double mu) {
  WaveStats out;
  const double top = M < c ? M : c;
  if (M < c) {
    auto f = [&](double p, double da, double db) {
      return std::sqrt((c - p) / (db * da));
    };
    out.period = std::sqrt(2.0 / mu) * testutil::tanh_sinh(f, m, top);
    out.mean_integral = std::sqrt(2.0 / mu) *
                        testutil::tanh_sinh(
                            [&](double p, double da, double db) {
                              return p * f(p, da, db);
                            },
                            m, top);
  } else {
    auto f = [&](double, double da, double db) {
      return std::sqrt(db / ((M - c + db) * da));
    };
    out.period = std::sqrt(2.0 / mu) * testutil::tanh_sinh(f, m, top);
    out.mean_integral = std::sqrt(2.0 / mu) *
                        testutil::tanh_sinh(
                            [&](double p, double da, double db) {
                              return p * f(p, da, db);
                            },
                            m, top);
  }
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MUHS_CLI_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---- criteria ----

void c1_operator_identities(Check& c) {
  const PeriodicGrid g(128);
  std::mt19937_64 rng(2024);
  double rt = 0, agree = 0, id1 = 0, id2 = 0;
  for (int i = 0; i < 50; ++i) {
    const RealField w = testutil::random_band_limited(g, 21, rng, 1.0);
    const double scale = std::max(1.0, max_abs(w));
    const RealField inv_s = apply_A_inverse(w, InverseMethod::Spectral);
    const RealField inv_q = apply_A_inverse(w, InverseMethod::Quadrature);
    rt = std::max({rt, max_abs(apply_A(inv_s) - w) / scale,
                   max_abs(apply_A(inv_q) - w) / scale});
    agree = std::max(agree, max_abs(inv_s - inv_q) / scale);
    id1 = std::max(id1, max_abs(ainv_dx(w) - derivative(inv_s, 1)) / scale);
    id2 = std::max(id2, max_abs(apply_A_inverse(derivative(w, 2)) -
                                (-1.0 * w + mean(w))) /
                            scale);
  }
  c.require_le(rt, 1e-10, "A round-trip");
  c.require_le(agree, 1e-10, "two-inverse agreement");
  c.require_le(id1, 1e-10, "first-derivative identity");
  c.require_le(id2, 1e-10, "second-derivative identity");
}

void c2_conservation(Check& c) {
  EvolutionConfig cfg;
  cfg.n = 256;
  cfg.t_end = 0.5;
  const Trajectory tr = integrate(from_text("1 + cos(1, 0.3)", 256), cfg);
  c.require(tr.verdict.tag == TrajectoryVerdict::Tag::Completed,
            "run did not complete");
  const auto& d0 = tr.diagnostics.front();
  double dmu = 0, dh1 = 0, dr0 = 0;
  for (const auto& d : tr.diagnostics) {
    dmu = std::max(dmu, std::abs(d.mu - d0.mu));
    dh1 = std::max(dh1, std::abs(d.h1 - d0.h1) / std::abs(d0.h1));
    dr0 = std::max(dr0, std::abs(d.r0 - d0.r0));
  }
  c.require_le(dmu, 1e-9, "mu drift");
  c.require_le(dh1, 1e-7, "H1 relative drift");
  c.require_le(dr0, 1e-7, "r0 drift");
}

void c3_threshold_family(Check& c) {
  for (double a : {0.0, 0.5, 1.11}) {
    std::ostringstream init;
    init << a << " + cos(1)";
    const Verdict v = classify_initial(from_text(init.str(), 512));
    std::ostringstream what;
    what << "a = " << a << " must certify blow-up, got " << to_string(v.tag);
    c.require(v.certifies_blowup(), what.str());
    if (a == 0.0 && v.tag == Verdict::Tag::BlowupHS) {
      c.info("a = 0 has zero mean, so the reduction verdict BlowupHS (exact "
             "critical time) applies instead of the inequality certificate");
    }
  }
  for (const char* init : {"4pi2 + cos(1)", "50 + cos(1)"}) {
    const Verdict v = classify_initial(from_text(init, 512));
    c.require(v.tag == Verdict::Tag::Global,
              std::string(init) + " must classify Global, got " +
                  to_string(v.tag));
  }

  {
    EvolutionConfig cfg;
    cfg.n = 2048;
    cfg.t_end = 1.0;
    cfg.blowup_slope_threshold = 50.0;
    const Trajectory tr = integrate(from_text("0.2 + cos(1)", 2048), cfg);
    c.require(tr.verdict.tag == TrajectoryVerdict::Tag::NumericalBlowup,
              "a = 0.2 simulation must detect blow-up");
    c.require_le(tr.verdict.t_est, 1.1 / kPi, "a = 0.2 t_est");
  }
  {
    EvolutionConfig cfg;
    cfg.n = 256;
    cfg.t_end = 2.0;
    // the fast rotation at |u| ~ 4 pi^2 needs a smaller CFL number for the
    // energy-drift rate to hold over two time units
    cfg.cfl = 0.15;
    const Trajectory tr = integrate(from_text("4pi2 + cos(1)", 256), cfg);
    c.require(tr.verdict.tag == TrajectoryVerdict::Tag::Completed,
              "a = 4pi^2 simulation must reach t = 2");
    const auto& d0 = tr.diagnostics.front();
    double dmu = 0, dh1 = 0, dr0 = 0;
    for (const auto& d : tr.diagnostics) {
      dmu = std::max(dmu, std::abs(d.mu - d0.mu));
      dh1 = std::max(dh1, std::abs(d.h1 - d0.h1) / std::abs(d0.h1));
      dr0 = std::max(dr0, std::abs(d.r0 - d0.r0) / std::abs(d0.r0));
    }
    c.require_le(dmu, 1e-9, "a = 4pi^2 mu drift");
    c.require_le(dh1, 2e-7, "a = 4pi^2 H1 relative drift over t = 2");
    c.require_le(dr0, 2e-7, "a = 4pi^2 r0 relative drift over t = 2");
  }
}

void c4_hs_reduction(Check& c) {
  EvolutionConfig cfg;
  cfg.n = 2048;
  cfg.t_end = 1.0;
  cfg.blowup_slope_threshold = 50.0;
  const Trajectory tr = integrate(from_text("cos(1)", 2048), cfg);
  c.require(tr.verdict.tag == TrajectoryVerdict::Tag::NumericalBlowup,
            "blow-up not detected");
  c.require_le(std::abs(tr.verdict.t_est - kTcritCos1) / kTcritCos1, 0.05,
               "relative error of t_est vs analytic critical time");
}

void c5_local_conservation(Check& c) {
  EvolutionConfig cfg;
  cfg.n = 256;
  cfg.t_end = 0.2;
  const Trajectory tr = integrate(from_text("1 + cos(1, 0.01)", 256), cfg);
  const FlowMap fm = flow_map(tr);
  c.require_le(local_conservation_residual(tr, fm), 1e-5,
               "local conservation residual");
}

void c6_hierarchy(Check& c) {
  const RealField m = from_text("1 + cos(1, 0.3)", 256);
  const RealField u = apply_A_inverse(m);
  const RealField kernel(m.grid(), 0.5 / m.samples().sqrt());
  c.require_le(max_abs(b1(m, kernel)), 1e-9, "kernel identity");

  const auto [r1, r2] = bihamiltonian_residual(u);
  c.require_le(r1, 1e-7, "bihamiltonian residual (via dH2)");
  c.require_le(r2, 1e-7, "bihamiltonian residual (direct)");

  c.require_le(std::abs(hn_from_gradient(1, u) - functional_value(-1, u)),
               1e-8, "ladder identity n = 1");
  c.require_le(std::abs(hn_from_gradient(2, u) - functional_value(-2, u)),
               1e-8, "ladder identity n = 2");

  const RealField lowered = lower(gradient(-2, u), m);
  const RealField diff = lowered - gradient(-3, u);
  const RealField kdir(m.grid(), 1.0 / m.samples().sqrt());
  const double alpha = integral(diff * kdir) / integral(kdir * kdir);
  c.require_le(max_abs(diff - alpha * kdir), 1e-6,
               "lowering recursion after kernel fit");
}

void c7_gradients(Check& c) {
  const PeriodicGrid g(128);
  const RealField u = from_text("2 + cos(1, 0.02) + sin(2, 0.005)", 128);
  std::mt19937_64 rng(777);
  for (int id = -2; id <= 2; ++id) {
    double worst = 0.0;
    for (int dir = 0; dir < 10; ++dir) {
      RealField v = testutil::random_band_limited(g, 4, rng);
      // unit-size momentum perturbation keeps the FD truncation term small
      v = (1.0 / max_abs(apply_A(v))) * v;
      const double eps = 1e-5;
      const double fd = (functional_value(id, u + eps * v) -
                         functional_value(id, u - eps * v)) /
                        (2.0 * eps);
      const double pred = integral(apply_A(gradient(id, u)) * v);
      worst =
          std::max(worst, std::abs(fd - pred) / std::max(1.0, std::abs(fd)));
    }
    c.require_le(worst, 1e-5,
                 "gradient " + std::to_string(id) + " vs finite differences");
  }
}

void c8_traveling_waves(Check& c) {
  double worst_smooth = 0, worst_cusped = 0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double m = 0.05 + 0.15 * i;
      {
        const double M = m + (0.95 - m) * (j + 1) / 6.0;
        const WaveStats ws = wave_stats(1.0, m, M, 1.0);
        const WaveStats os = stats_oracle(1.0, m, M, 1.0);
        worst_smooth = std::max({worst_smooth, std::abs(ws.period - os.period),
                                 std::abs(ws.mean_integral - os.mean_integral)});
      }
      {
        const double M = 1.2 + 0.9 * j;
        const WaveStats ws = wave_stats(1.0, m, M, 1.0);
        const WaveStats os = stats_oracle(1.0, m, M, 1.0);
        worst_cusped = std::max({worst_cusped, std::abs(ws.period - os.period),
                                 std::abs(ws.mean_integral - os.mean_integral)});
      }
    }
  }
  c.require_le(worst_smooth, 1e-9, "smooth stats vs quadrature oracle (5x5)");
  c.require_le(worst_cusped, 1e-9, "cusped stats vs quadrature oracle (5x5)");

  const WaveStats base = wave_stats(1.0, 0.2, 0.6, 1.0);
  for (double mu : {0.25, 4.0}) {
    const WaveStats s = wave_stats(1.0, 0.2, 0.6, mu);
    c.require_le(std::abs(s.period - base.period / std::sqrt(mu)), 1e-13,
                 "period scaling at mu = " + std::to_string(mu));
    c.require_le(std::abs(s.mean_integral - base.mean_integral / std::sqrt(mu)),
                 1e-13, "mean-integral scaling at mu = " + std::to_string(mu));
  }

  // Period-one solves exactly as stated.  The smooth anchor 0.3 lies outside
  // the admissible window at c = 1 (the constrained period over M in
  // (0.3, 1) stays in [2.19, 3.59]), so this sub-check reports the honest
  // failure; an admissible smooth anchor is exercised alongside.
  try {
    const WaveParams p = solve_period_one(1.0, WaveFamily::Smooth, 0.3);
    c.require_le(std::abs(muhs_period(1.0, p.m_lo, p.M_hi) - 1.0), 1e-10,
                 "smooth period-one at m_anchor = 0.3");
    c.require_le(std::abs(profile(p, 8192).mean - p.mu), 1e-6,
                 "smooth a-posteriori mean at m_anchor = 0.3");
  } catch (const NoBracket& e) {
    c.require(false,
              std::string("smooth period-one at m_anchor = 0.3: ") + e.what());
  }
  try {
    const WaveParams p = solve_period_one(1.0, WaveFamily::Smooth, 0.92);
    std::ostringstream os;
    os << "smooth period-one exists at admissible anchors: m_anchor = 0.92 "
          "gives M = "
       << p.M_hi << ", |period - 1| = "
       << std::abs(muhs_period(1.0, p.m_lo, p.M_hi) - 1.0)
       << ", |profile mean - mu| = "
       << std::abs(profile(p, 8192).mean - p.mu);
    c.info(os.str());
  } catch (const Error& e) {
    c.require(false, std::string("smooth period-one at 0.92: ") + e.what());
  }

  const WaveParams cusped = solve_period_one(1.0, WaveFamily::Cusped, 0.3);
  c.require_le(std::abs(muhs_period(1.0, cusped.m_lo, cusped.M_hi) - 1.0),
               1e-10, "cusped period-one at m_anchor = 0.3");
  const WaveProfile pc = profile(cusped, 8192);
  c.require_le(std::abs(pc.mean - cusped.mu), 1e-6,
               "cusped a-posteriori mean");

  {
    const double xc = pc.cusp_xs.at(0);
    const double h = pc.period / 8192;
    std::vector<double> xs, ys;
    for (int j = 0; j < pc.xs.size(); ++j) {
      const double d = std::abs(pc.xs[j] - xc);
      if (d >= 3 * h && d <= 0.02) {
        xs.push_back(d);
        ys.push_back(cusped.c - pc.phis[j]);
      }
    }
    const double slope = testutil::loglog_slope(xs, ys);
    c.require(slope > 0.63 && slope < 0.70,
              "cusp exponent fit " + std::to_string(slope) +
                  " outside [0.63, 0.70]");
  }

  const WaveProfile sol_cusp = solitary_profile(1.0, -1.0, 4096);
  c.require(sol_cusp.mean > 0.0,
            "solitary wave (mu < 0) mean-integral must be positive");
  const WaveProfile sol_anti = solitary_profile(-1.0, 1.0, 4096);
  c.require(sol_anti.mean < 0.0,
            "solitary wave (mu > 0) mean-integral must be negative");
}

void c9_wave_evolution(Check& c) {
  const WaveParams p = solve_period_one(1.0, WaveFamily::Smooth, 0.92);
  const ShapeError e = shape_preservation_error(p, 512, 1.0);
  c.require_le(e.rel_error, 1e-3, "shape-preservation relative error");
  const double target = 1.0 * 1.0 - std::floor(1.0 * 1.0);  // c t mod 1
  const double dist =
      std::min(std::abs(e.shift - target),
               1.0 - std::abs(e.shift - target));
  c.require_le(dist, 1e-3, "optimal shift vs c t mod 1");
}

void c10_curvature(Check& c) {
  const PeriodicGrid g(128);
  std::mt19937_64 rng(10);
  double agree = 0;
  for (int i = 0; i < 20; ++i) {
    const RealField u = testutil::random_band_limited(g, 8, rng, 0.7);
    const RealField v = testutil::random_band_limited(g, 8, rng, -0.2);
    agree = std::max(agree,
                     std::abs(curvature_quadratic(u, v) -
                              curvature_expanded(u, v)));
  }
  c.require_le(agree, 1e-10, "two-formula agreement (20 pairs)");

  double ident = 0;
  bool bound_ok = true;
  const double bound = 0.25 * (1.0 - 3.0 / (kPi * kPi));
  for (int i = 0; i < 200; ++i) {
    RealField u = testutil::random_band_limited(g, 8, rng);
    RealField v = testutil::random_band_limited(g, 8, rng);
    u = u - mean(u);
    v = v - mean(v);
    const TangentPair p = orthonormal_pair(u, v);
    const double k = curvature_quadratic(p.u, p.v);
    const double tw = mean(derivative(p.u, 1) * p.v);
    ident = std::max(ident, std::abs(k - (0.25 - 3.0 * tw * tw)));
    bound_ok = bound_ok && k >= bound - 1e-9;
  }
  c.require_le(ident, 1e-9, "zero-mean plane identity (200 pairs)");
  c.require(bound_ok, "positive lower bound violated on a zero-mean plane");

  const RealField one = RealField::constant(g, 1.0);
  double p75 = 0;
  for (int i = 0; i < 10; ++i) {
    RealField v = testutil::random_band_limited(g, 6, rng);
    v = v - mean(v);
    v = (1.0 / std::sqrt(metric_inner(v, v))) * v;
    p75 = std::max(p75, std::abs(curvature_quadratic(one, v) -
                                 integral(v * v)));
  }
  c.require_le(p75, 1e-9, "constant-direction plane curvature K(1,v)");

  double seq = 0;
  for (int n = 1; n <= 5; ++n) {
    const RealField vn = RealField::from_function(g, [n](double x) {
      return std::sqrt(2.0) * std::sin(2 * kPi * n * x) / (2 * kPi * n);
    });
    seq = std::max(seq,
                   std::abs(sectional(one, vn) - 1.0 / (4 * kPi * kPi * n * n)));
  }
  c.require_le(seq, 1e-9, "vanishing-curvature sequence n = 1..5");
}

void c11_isospectrality(Check& c) {
  EvolutionConfig cfg;
  cfg.n = 256;
  cfg.t_end = 0.2;
  const Trajectory tr = integrate(from_text("1 + cos(1, 0.01)", 256), cfg);
  c.require(tr.verdict.tag == TrajectoryVerdict::Tag::Completed,
            "run did not complete");
  c.require_le(isospectrality_drift(tr, 5), 1e-4,
               "relative drift of the first 5 nonzero eigenvalues");
}

void c12_virasoro(Check& c) {
  const RealField u = from_text("1 + cos(1, 0.1)", 256);
  c.require_le(virasoro_equivalence_residual(u, 0.0), 1e-7,
               "three-way m_t agreement at k = 0");
  c.require_le(virasoro_equivalence_residual(u, 0.5), 1e-7,
               "three-way m_t agreement at k = 0.5");
}

void c13_cli(Check& c) {
  const fs::path base = fs::temp_directory_path() / "muhs_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);

  const std::string sim =
      "simulate --init \"1 + cos(1, 0.2)\" --n 128 --t-end 0.05 --out ";
  c.require(run_cli(sim + (base / "a").string()) == 0, "simulate exit code");
  c.require(run_cli(sim + (base / "b").string()) == 0, "simulate rerun");
  for (const char* f : {"diagnostics.csv", "snapshots.csv"}) {
    c.require(slurp(base / "a" / f) == slurp(base / "b" / f) &&
                  !slurp(base / "a" / f).empty(),
              std::string("byte-identical rerun of ") + f);
  }

  c.require(run_cli("classify --init \"cos(1\"") == 2,
            "parse error must exit 2");
  c.require(run_cli("wave --c 1 --family smooth --m-anchor 0.3 --out " +
                    (base / "w").string()) == 4,
            "unsatisfiable constraint must exit 4");
  c.require(run_cli("selftest --seed 12345") == 0, "selftest exit code");

  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> nterms(1, 5), kindd(0, 2), kdist(0, 9);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  bool ok = true;
  for (int i = 0; i < 100 && ok; ++i) {
    InitSpec spec;
    const int nt = nterms(rng);
    for (int j = 0; j < nt; ++j) {
      InitTerm t;
      const int kd = kindd(rng);
      t.kind = kd == 0 ? InitTerm::Kind::Const
                       : (kd == 1 ? InitTerm::Kind::Cos : InitTerm::Kind::Sin);
      t.k = t.kind == InitTerm::Kind::Const ? 0 : kdist(rng);
      t.amp = coef(rng);
      t.phase = t.kind == InitTerm::Kind::Const ? 0.0 : coef(rng);
      spec.terms.push_back(t);
    }
    ok = parse_init(spec.render()).terms == spec.terms;
  }
  c.require(ok, "init-grammar round trip on 100 generated specs");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "operator identities", c1_operator_identities},
      {2, "conservation along the flow", c2_conservation},
      {3, "threshold family classification and simulation", c3_threshold_family},
      {4, "zero-mean reduction blow-up time", c4_hs_reduction},
      {5, "local conservation law", c5_local_conservation},
      {6, "hierarchy identities", c6_hierarchy},
      {7, "gradient correctness", c7_gradients},
      {8, "traveling waves", c8_traveling_waves},
      {9, "wave-evolution cross-check", c9_wave_evolution},
      {10, "curvature", c10_curvature},
      {11, "isospectrality", c11_isospectrality},
      {12, "Virasoro three-way agreement", c12_virasoro},
      {13, "CLI determinism and contracts", c13_cli},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("unexpected exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %2d: %s (%.1fs)\n",
                check.ok ? "PASS" : "FAIL", cr.id, cr.name, secs);
    for (const auto& note : check.notes) {
      std::printf("         - %s\n", note.c_str());
    }
    if (!check.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
