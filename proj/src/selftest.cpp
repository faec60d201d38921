#include "muhs/selftest.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "muhs/elliptic.hpp"
#include "muhs/evolution.hpp"
#include "muhs/geometry.hpp"
#include "muhs/hierarchy.hpp"
#include "muhs/initspec.hpp"
#include "muhs/spectral.hpp"
#include "muhs/waves.hpp"

namespace muhs {

namespace {

constexpr double kPi = std::numbers::pi;

RealField random_band_limited(PeriodicGrid g, int kmax, std::mt19937_64& rng,
                              double offset = 0.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::ArrayXd s = Eigen::ArrayXd::Constant(g.n, offset);
  const Eigen::ArrayXd x = g.nodes();
  for (int k = 1; k <= kmax; ++k) {
    const double decay = 1.0 / (1.0 + k * k);
    s += decay * gauss(rng) * (2.0 * kPi * k * x).cos();
    s += decay * gauss(rng) * (2.0 * kPi * k * x).sin();
  }
  return RealField(g, std::move(s));
}

struct Suite {
  std::vector<SelftestResult>& out;

  void check(const std::string& name, double value, double bound) {
    std::ostringstream os;
    os << "value " << value << ", bound " << bound;
    out.push_back({name, value <= bound, os.str()});
  }
  void check_true(const std::string& name, bool ok, const std::string& why) {
    out.push_back({name, ok, why});
  }
};

}  // namespace

std::vector<SelftestResult> run_selftest(std::uint64_t seed) {
  std::vector<SelftestResult> results;
  Suite s{results};
  std::mt19937_64 rng(seed);
  const PeriodicGrid g(128);

  {  // transform round-trip and Parseval
    double worst_rt = 0.0, worst_pa = 0.0;
    for (int i = 0; i < 10; ++i) {
      const RealField u = random_band_limited(g, 20, rng, 0.5);
      const RealField back = RealField::from_spectrum(g, u.spectrum());
      worst_rt = std::max(worst_rt,
                          max_abs(back - u) / std::max(1.0, max_abs(u)));
      worst_pa = std::max(worst_pa, std::abs(spectral_energy(u) -
                                             g.h * u.samples().square().sum()));
    }
    s.check("fft_round_trip", worst_rt, kEpsTransform);
    s.check("parseval", worst_pa, kEpsTransform);
  }

  {  // inertia operator identities
    double worst = 0.0, agree = 0.0, id1 = 0.0, id2 = 0.0, mn = 0.0;
    for (int i = 0; i < 10; ++i) {
      const RealField w = random_band_limited(g, 20, rng, 1.0);
      const double scale = max_abs(w);
      const RealField s1 = apply_A_inverse(w, InverseMethod::Spectral);
      const RealField s2 = apply_A_inverse(w, InverseMethod::Quadrature);
      worst = std::max(worst, max_abs(apply_A(s1) - w) / scale);
      worst = std::max(worst, max_abs(apply_A(s2) - w) / scale);
      agree = std::max(agree, max_abs(s1 - s2) / scale);
      id1 = std::max(id1,
                     max_abs(ainv_dx(w) - derivative(s1, 1)) / scale);
      id2 = std::max(id2, max_abs(apply_A_inverse(derivative(w, 2)) -
                                  (-1.0 * w + mean(w))) /
                              scale);
      mn = std::max(mn, std::abs(mean(apply_A(w)) - mean(w)));
    }
    s.check("A_roundtrip", worst, kEpsOperator);
    s.check("A_inverse_two_methods", agree, kEpsOperator);
    s.check("identity_ainv_dx", id1, kEpsOperator);
    s.check("identity_ainv_dxx", id2, kEpsOperator);
    s.check("mean_preserved_by_A", mn, kEpsTransform);
  }

  {  // Hamiltonian-operator skew symmetry and kernel
    double skew = 0.0, kern = 0.0;
    for (int i = 0; i < 6; ++i) {
      const RealField m = random_band_limited(g, 8, rng, 3.0);
      const RealField f = random_band_limited(g, 8, rng);
      const RealField h = random_band_limited(g, 8, rng);
      skew = std::max(skew,
                      std::abs(integral(f * b1(m, h)) + integral(h * b1(m, f))));
      skew = std::max(skew,
                      std::abs(integral(f * b2(h)) + integral(h * b2(f))));
      const RealField ker(
          g, 0.5 / m.samples().sqrt());
      kern = std::max(kern, max_abs(b1(m, ker)));
    }
    s.check("b1_b2_skew_symmetry", skew, 1e-10);
    s.check("b1_kernel", kern, 1e-9);
  }

  {  // gradients against central finite differences
    const RealField u = random_band_limited(g, 6, rng, 2.0);
    double worst = 0.0;
    for (int id : {1, 2}) {
      for (int dir = 0; dir < 3; ++dir) {
        const RealField v = random_band_limited(g, 4, rng);
        const double eps = 1e-5;
        const double fd = (functional_value(id, u + eps * v) -
                           functional_value(id, u - eps * v)) /
                          (2.0 * eps);
        const double pred = integral(apply_A(gradient(id, u)) * v);
        worst = std::max(worst, std::abs(fd - pred) /
                                    std::max(1.0, std::abs(fd)));
      }
    }
    s.check("gradient_fd_spot", worst, 1e-5);
  }

  {  // curvature: two independent formulas + zero-mean plane identity
    double agree = 0.0, ident = 0.0;
    bool bound_ok = true;
    for (int i = 0; i < 5; ++i) {
      const RealField u = random_band_limited(g, 6, rng, 0.7);
      const RealField v = random_band_limited(g, 6, rng, -0.2);
      agree = std::max(agree, std::abs(curvature_quadratic(u, v) -
                                       curvature_expanded(u, v)));
    }
    for (int i = 0; i < 10; ++i) {
      RealField u = random_band_limited(g, 6, rng);
      RealField v = random_band_limited(g, 6, rng);
      u = u - mean(u);
      v = v - mean(v);
      const TangentPair p = orthonormal_pair(u, v);
      const double k = curvature_quadratic(p.u, p.v);
      const double tw = mean(derivative(p.u, 1) * p.v);
      ident = std::max(ident, std::abs(k - (0.25 - 3.0 * tw * tw)));
      bound_ok = bound_ok && k >= 0.25 * (1.0 - 3.0 / (kPi * kPi)) - 1e-9;
    }
    s.check("curvature_two_formulas", agree, 1e-10);
    s.check("curvature_zero_mean_identity", ident, 1e-9);
    s.check_true("curvature_lower_bound", bound_ok,
                 "K >= (1 - 3/pi^2)/4 on zero-mean planes");
  }

  {  // Euler equation consistency and Virasoro three-way agreement
    const RealField u = random_band_limited(g, 6, rng, 1.0);
    s.check("euler_equation_consistency",
            max_abs(rhs(u, 0.0) + coadjoint(u, u)), 1e-10);
    s.check("virasoro_three_way_k0", virasoro_equivalence_residual(u, 0.0),
            1e-7);
    s.check("virasoro_three_way_k05", virasoro_equivalence_residual(u, 0.5),
            1e-7);
    s.check("integrated_form", integrated_form_residual(u), 1e-8);
  }

  {  // elliptic integrals: pinned values
    s.check("elliptic_K0", std::abs(ellint_K(0.0) - kPi / 2), 1e-14);
    s.check("elliptic_E1", std::abs(ellint_E(1.0) - 1.0), 1e-14);
    s.check("elliptic_F_eq_K",
            std::abs(ellint_F(kPi / 2, 0.5) - ellint_K(0.5)), 1e-14);
    s.check("elliptic_K_half",
            std::abs(ellint_K(0.5) - 1.8540746773013719), 1e-13);
    s.check("elliptic_E_half",
            std::abs(ellint_E(0.5) - 1.3506438810476755), 1e-13);
  }

  {  // wave statistics: pinned values and the mu-scaling law
    const WaveStats sm = wave_stats(1.0, 0.2, 0.6, 1.0);
    const WaveStats cu = wave_stats(1.0, 0.2, 1.5, 1.0);
    const WaveStats an = wave_stats(0.1, 0.2, 0.6, 1.0);
    s.check("wave_smooth_period",
            std::abs(sm.period - 3.4168887775041457), 1e-12);
    s.check("wave_smooth_meanint",
            std::abs(sm.mean_integral - 1.3087749749476585), 1e-12);
    s.check("wave_cusped_period",
            std::abs(cu.period - 1.7210096812587376), 1e-12);
    s.check("wave_cusped_meanint",
            std::abs(cu.mean_integral - 0.72635443403650016), 1e-12);
    s.check("wave_anticusped_period",
            std::abs(an.period - 0.34117708102935005), 1e-12);
    const WaveStats sm4 = wave_stats(1.0, 0.2, 0.6, 4.0);
    s.check("wave_mu_scaling",
            std::abs(sm4.period - sm.period / 2.0) +
                std::abs(sm4.mean_integral - sm.mean_integral / 2.0),
            1e-15);
  }

  {  // init grammar round-trip
    std::uniform_int_distribution<int> nterms(1, 5), kind(0, 2), kdist(0, 9);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    bool ok = true;
    std::string bad;
    for (int i = 0; i < 100 && ok; ++i) {
      InitSpec spec;
      const int nt = nterms(rng);
      for (int j = 0; j < nt; ++j) {
        InitTerm t;
        const int kd = kind(rng);
        t.kind = kd == 0 ? InitTerm::Kind::Const
                         : (kd == 1 ? InitTerm::Kind::Cos : InitTerm::Kind::Sin);
        t.k = t.kind == InitTerm::Kind::Const ? 0 : kdist(rng);
        t.amp = coef(rng);
        t.phase = t.kind == InitTerm::Kind::Const ? 0.0 : coef(rng);
        spec.terms.push_back(t);
      }
      const std::string text = spec.render();
      const InitSpec reparsed = parse_init(text);
      if (reparsed.terms != spec.terms) {
        ok = false;
        bad = text;
      }
    }
    s.check_true("init_grammar_round_trip", ok,
                 ok ? "100 specs round-tripped" : "failed on: " + bad);
  }

  return results;
}

}  // namespace muhs
