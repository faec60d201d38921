// Command-line driver: simulate / classify / wave / hierarchy / curvature /
// spectrum / selftest.  Results go to stdout; MUHS_LOG in {error,info,debug}
// controls stderr verbosity.  Outputs are deterministic: CSV floats carry 17
// significant digits and manifests have a fixed key order.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "muhs/errors.hpp"
#include "muhs/evolution.hpp"
#include "muhs/geometry.hpp"
#include "muhs/hierarchy.hpp"
#include "muhs/initspec.hpp"
#include "muhs/selftest.hpp"
#include "muhs/spectral.hpp"
#include "muhs/version.hpp"
#include "muhs/waves.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("MUHS_LOG");
    if (!env) return LogLevel::Error;
    const std::string v(env);
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "[muhs] " << msg << "\n";
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw muhs::InvalidInput("cannot open " + path.string());
    out_ << header << "\n";
  }
  void row(const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) out_ << ",";
      out_ << fmt17(vals[i]);
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

struct ManifestWriter {
  std::string command;
  json config = json::object();
  json inputs = json::object();
  std::vector<std::string> outputs;
  json summary = json::object();
  json verdict = json::object();
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void write(const fs::path& dir) {
    summary["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    json m;
    m["command"] = command;
    m["version"] = std::string(muhs::kVersion);
    m["config"] = config;
    m["inputs"] = inputs;
    json outs = json::array();
    for (const auto& o : outputs) outs.push_back(o);
    outs.push_back("manifest.json");
    m["outputs"] = outs;
    m["summary"] = summary;
    m["verdict"] = verdict;
    std::ofstream f(dir / "manifest.json", std::ios::binary);
    if (!f) {
      throw muhs::InvalidInput("cannot open manifest.json in " + dir.string());
    }
    f << m.dump(2) << "\n";
  }
};

std::string verdict_line(const muhs::TrajectoryVerdict& v) {
  using Tag = muhs::TrajectoryVerdict::Tag;
  using Reason = muhs::TrajectoryVerdict::Reason;
  if (v.tag == Tag::Completed) return "Completed";
  std::string why = v.reason == Reason::SlopeThreshold ? "slope threshold"
                    : v.reason == Reason::DtCollapse   ? "dt collapse"
                                                       : "non-finite state";
  return "NumericalBlowup t_est=" + fmt17(v.t_est) + " (" + why + ")";
}

int cmd_simulate(const std::string& init_text, int n, double t_end, double k,
                 double cfl, double slope_threshold,
                 const std::string& out_dir) {
  const muhs::InitSpec spec = muhs::parse_init(init_text);
  const muhs::PeriodicGrid grid(n);
  const muhs::RealField u0 = spec.build(grid);

  muhs::EvolutionConfig cfg;
  cfg.n = n;
  cfg.t_end = t_end;
  cfg.k = k;
  cfg.cfl = cfl;
  // A fixed n-grid cannot resolve slopes much beyond n/16, so an unset
  // threshold defaults to the largest value the grid can actually reach.
  cfg.blowup_slope_threshold =
      slope_threshold > 0.0 ? slope_threshold
                            : std::min(cfg.blowup_slope_threshold, n / 16.0);

  ManifestWriter man;
  man.command = "simulate";
  man.config = {{"n", cfg.n},
                {"t_end", cfg.t_end},
                {"k", cfg.k},
                {"cfl", cfg.cfl},
                {"dt_min", cfg.dt_min},
                {"dealias", cfg.dealias},
                {"blowup_slope_threshold", cfg.blowup_slope_threshold}};
  man.inputs = {{"init", init_text}};

  const muhs::Trajectory traj = muhs::integrate(u0, cfg);
  log_info("simulate: " + std::to_string(traj.diagnostics.size() - 1) +
           " steps, " + std::to_string(traj.times.size()) + " snapshots");

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  {
    CsvWriter csv(dir / "diagnostics.csv",
                  "t,mu,H1,H0,H2,Hm1_or_nan,r0,min_ux,max_abs_u,dt");
    for (const auto& d : traj.diagnostics) {
      csv.row({d.t, d.mu, d.h1, d.h0, d.h2, d.hm1, d.r0, d.min_ux,
               d.max_abs_u, d.dt});
    }
  }
  {
    CsvWriter csv(dir / "snapshots.csv", "t,x,u");
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      for (int j = 0; j < grid.n; ++j) {
        csv.row({traj.times[i], grid.node(j), traj.states[i][j]});
      }
    }
  }
  man.outputs = {"diagnostics.csv", "snapshots.csv"};
  man.summary = {{"steps", traj.diagnostics.size() - 1},
                 {"snapshots", traj.times.size()},
                 {"final_t", traj.times.back()},
                 {"mu_initial", traj.diagnostics.front().mu},
                 {"mu_final", traj.diagnostics.back().mu},
                 {"h1_initial", traj.diagnostics.front().h1},
                 {"h1_final", traj.diagnostics.back().h1},
                 {"r0_initial", traj.diagnostics.front().r0},
                 {"r0_final", traj.diagnostics.back().r0}};
  using Tag = muhs::TrajectoryVerdict::Tag;
  man.verdict = {
      {"tag",
       traj.verdict.tag == Tag::Completed ? "Completed" : "NumericalBlowup"}};
  if (traj.verdict.tag != Tag::Completed) {
    man.verdict["t_est"] = traj.verdict.t_est;
  }
  man.write(dir);

  std::cout << "verdict: " << verdict_line(traj.verdict) << "\n";
  return traj.verdict.reason == muhs::TrajectoryVerdict::Reason::NonFinite ? 3
                                                                           : 0;
}

int cmd_classify(const std::string& init_text, int n) {
  const muhs::RealField u0 =
      muhs::parse_init(init_text).build(muhs::PeriodicGrid(n));
  const muhs::Verdict v = muhs::classify_initial(u0);
  std::cout << muhs::to_string(v.tag) << ": " << v.justification << "\n";
  return 0;
}

int cmd_wave(double c, const std::string& family_name, double m_anchor,
             int samples, const std::string& out_dir) {
  const muhs::WaveFamily family = family_name == "smooth"
                                      ? muhs::WaveFamily::Smooth
                                      : muhs::WaveFamily::Cusped;
  ManifestWriter man;
  man.command = "wave";
  man.config = {{"c", c},
                {"family", family_name},
                {"m_anchor", m_anchor},
                {"samples", samples}};

  const muhs::WaveParams params = muhs::solve_period_one(c, family, m_anchor);
  const muhs::WaveProfile prof = muhs::profile(params, samples);

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  {
    CsvWriter csv(dir / "profile.csv", "x,phi");
    for (int j = 0; j < prof.xs.size(); ++j) {
      csv.row({prof.xs[j], prof.phis[j]});
    }
  }
  man.outputs = {"profile.csv"};
  man.summary = {{"c", params.c},       {"m", params.m_lo},
                 {"M", params.M_hi},    {"mu", params.mu},
                 {"period", prof.period}, {"mean", prof.mean}};
  man.verdict = {{"tag", "Solved"},
                 {"period_error", std::abs(prof.period - 1.0)}};
  man.write(dir);
  std::cout << "period-one " << family_name << " wave: c=" << fmt17(params.c)
            << " m=" << fmt17(params.m_lo) << " M=" << fmt17(params.M_hi)
            << " mu=" << fmt17(params.mu) << "\n";
  return 0;
}

int cmd_hierarchy(const std::string& init_text, const std::string& orders,
                  int n) {
  const muhs::RealField u =
      muhs::parse_init(init_text).build(muhs::PeriodicGrid(n));
  const muhs::RealField m = muhs::momentum(u);

  std::vector<int> ids;
  {
    std::stringstream ss(orders);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) ids.push_back(std::stoi(tok));
    }
  }
  if (ids.empty()) throw muhs::InvalidInput("hierarchy: empty --orders list");

  for (int id : ids) {
    if (id < -3 || id > 2) {
      throw muhs::InvalidInput("hierarchy: order out of range [-3, 2]");
    }
    const double value = id == -3 ? muhs::hn_from_gradient(3, u)
                                  : muhs::functional_value(id, u);
    std::cout << "H[" << id << "] = " << fmt17(value) << "\n";
  }

  const auto [r_b2, r_direct] = muhs::bihamiltonian_residual(u);
  std::cout << "residual biham_via_dH2 = " << fmt17(r_b2) << "\n";
  std::cout << "residual biham_direct  = " << fmt17(r_direct) << "\n";
  if (m.samples().minCoeff() > 0.0) {
    const muhs::RealField kernel(m.grid(), 0.5 / m.samples().sqrt());
    std::cout << "residual b1_kernel     = "
              << fmt17(muhs::max_abs(muhs::b1(m, kernel))) << "\n";
    std::cout << "residual ladder_n1     = "
              << fmt17(std::abs(muhs::hn_from_gradient(1, u) -
                                muhs::functional_value(-1, u)))
              << "\n";
    std::cout << "residual ladder_n2     = "
              << fmt17(std::abs(muhs::hn_from_gradient(2, u) -
                                muhs::functional_value(-2, u)))
              << "\n";
    // Lowering recursion vs the closed form, after fitting the kernel
    // direction 1/sqrt(m).
    const muhs::RealField lowered = muhs::lower(muhs::gradient(-2, u), m);
    const muhs::RealField diff = lowered - muhs::gradient(-3, u);
    const muhs::RealField kdir(m.grid(), 1.0 / m.samples().sqrt());
    const double alpha =
        muhs::integral(diff * kdir) / muhs::integral(kdir * kdir);
    std::cout << "residual lowering_fit  = "
              << fmt17(muhs::max_abs(diff - alpha * kdir)) << "\n";
  } else {
    std::cout << "momentum changes sign: ladder residuals skipped\n";
  }
  return 0;
}

int cmd_curvature(const std::string& u_text, const std::string& v_text,
                  int n) {
  const muhs::PeriodicGrid grid(n);
  const muhs::RealField u = muhs::parse_init(u_text).build(grid);
  const muhs::RealField v = muhs::parse_init(v_text).build(grid);
  const double q = muhs::curvature_quadratic(u, v);
  const double e = muhs::curvature_expanded(u, v);
  std::cout << "curvature_quadratic = " << fmt17(q) << "\n";
  std::cout << "curvature_expanded  = " << fmt17(e) << "\n";
  std::cout << "difference          = " << fmt17(std::abs(q - e)) << "\n";
  std::cout << "sectional           = " << fmt17(muhs::sectional(u, v))
            << "\n";
  return 0;
}

int cmd_spectrum(const std::string& init_text, int count, double t_end,
                 int n) {
  const muhs::PeriodicGrid grid(n);
  const muhs::RealField u0 = muhs::parse_init(init_text).build(grid);
  const auto ev0 = muhs::hill_spectrum(muhs::apply_A(u0), count + 1);
  std::cout << "t=0 eigenvalues:";
  for (double e : ev0) std::cout << " " << fmt17(e);
  std::cout << "\n";
  if (t_end > 0.0) {
    muhs::EvolutionConfig cfg;
    cfg.n = n;
    cfg.t_end = t_end;
    const muhs::Trajectory traj = muhs::integrate(u0, cfg);
    if (traj.verdict.tag != muhs::TrajectoryVerdict::Tag::Completed) {
      throw muhs::NumericalFailure("spectrum: evolution did not complete");
    }
    const auto ev1 =
        muhs::hill_spectrum(muhs::apply_A(traj.states.back()), count + 1);
    std::cout << "t=" << fmt17(t_end) << " eigenvalues:";
    for (double e : ev1) std::cout << " " << fmt17(e);
    std::cout << "\n";
    std::cout << "max relative drift over stored times = "
              << fmt17(muhs::isospectrality_drift(traj, count)) << "\n";
  }
  return 0;
}

int cmd_selftest(std::uint64_t seed) {
  const auto results = muhs::run_selftest(seed);
  int fails = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "[ok]   " : "[FAIL] ") << r.name << "  ("
              << r.detail << ")\n";
    if (!r.passed) ++fails;
  }
  std::cout << (fails == 0 ? "selftest passed" : "selftest FAILED") << " ("
            << results.size() << " checks, " << fails << " failures)\n";
  return fails == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the muHS equation on the circle"};
  app.require_subcommand(1);

  std::string init_text, out_dir = ".", family = "smooth", u_text, v_text;
  std::string orders = "-2,-1,0,1,2";
  int n = 256, samples = 2048, count = 5;
  double t_end = 1.0, k = 0.0, cfl = 0.3, c = 1.0, m_anchor = 0.3;
  double slope_threshold = -1.0;
  std::uint64_t seed = 12345;

  auto* sim = app.add_subcommand("simulate", "integrate the evolution");
  sim->add_option("--init", init_text, "initial condition")->required();
  sim->add_option("--n", n, "grid size")->required();
  sim->add_option("--t-end", t_end, "final time")->required();
  sim->add_option("--k", k, "central-term coefficient");
  sim->add_option("--cfl", cfl, "CFL number");
  sim->add_option("--slope-threshold", slope_threshold,
                  "slope magnitude declaring numerical blow-up "
                  "(default min(1e4, n/16))");
  sim->add_option("--out", out_dir, "output directory");

  auto* cls = app.add_subcommand("classify", "classify initial data");
  cls->add_option("--init", init_text)->required();
  cls->add_option("--n", n);

  auto* wav = app.add_subcommand("wave", "solve for a period-one wave");
  wav->add_option("--c", c, "wave speed")->required();
  wav->add_option("--family", family, "smooth|cusped")
      ->required()
      ->check(CLI::IsMember({"smooth", "cusped"}));
  wav->add_option("--m-anchor", m_anchor, "trough anchor")->required();
  wav->add_option("--samples", samples);
  wav->add_option("--out", out_dir);

  auto* hie = app.add_subcommand("hierarchy", "conserved functionals");
  hie->add_option("--init", init_text)->required();
  hie->add_option("--orders", orders, "comma-separated ids in [-3,2]");
  hie->add_option("--n", n);

  auto* cur = app.add_subcommand("curvature", "sectional curvature");
  cur->add_option("--u", u_text)->required();
  cur->add_option("--v", v_text)->required();
  cur->add_option("--n", n);

  auto* spc = app.add_subcommand("spectrum", "Hill-operator spectrum");
  spc->add_option("--init", init_text)->required();
  spc->add_option("--count", count)->required();
  spc->add_option("--t-end", t_end, "compare spectra after evolving");
  spc->add_option("--n", n);

  auto* slf = app.add_subcommand("selftest", "run the property suite");
  slf->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(init_text, n, t_end, k, cfl, slope_threshold,
                          out_dir);
    }
    if (cls->parsed()) return cmd_classify(init_text, n);
    if (wav->parsed()) return cmd_wave(c, family, m_anchor, samples, out_dir);
    if (hie->parsed()) return cmd_hierarchy(init_text, orders, n);
    if (cur->parsed()) return cmd_curvature(u_text, v_text, n);
    if (spc->parsed()) {
      return cmd_spectrum(init_text, count,
                          spc->count("--t-end") ? t_end : 0.0, n);
    }
    if (slf->parsed()) return cmd_selftest(seed);
  } catch (const muhs::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const muhs::ConstraintUnsatisfiable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const muhs::NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
