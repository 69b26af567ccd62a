#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "hypertrace/decompositions.hpp"
#include "hypertrace/geodesic_cycles.hpp"
#include "hypertrace/io.hpp"
#include "test_support.hpp"

using namespace hypertrace;
using hypertrace::testing::data_path;
using hypertrace::testing::random_g0;

namespace {

Vector random_u(const CycleConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1, 1);
  Vector u(cfg.n() - 1);
  for (int i = 0; i < u.size(); ++i) u(i) = U(rng);
  return u;
}

const std::pair<int, int> kConfigs[] = {{3, 2}, {4, 2}, {4, 3}, {5, 2}, {5, 3}};

}  // namespace

TEST_CASE("the identity sits on the cycle") {
  for (auto [d, n] : kConfigs) {
    const CycleConfig cfg(d, n);
    const CycleInvariants inv = cycle_invariants(LorentzMatrix::identity(d), Vector::Zero(n - 1), cfg);
    CHECK(inv.M == 0.0);
    CHECK(inv.N_u == 0.0);
    CHECK(inv.Q_u == 1.0);
    CHECK(f_gamma(inv, 2.0) == 1.0);
    CHECK(r_star(inv) == std::numeric_limits<double>::infinity());
    CHECK(delta_u(LorentzMatrix::identity(d), Vector::Zero(n - 1), cfg) == 1.0);
  }
}

TEST_CASE("f is a sum of squares plus one and delta is its infimum") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [d, n] = kConfigs[trial % 5];
    const CycleConfig cfg(d, n);
    const LorentzMatrix g = random_word(d, 3, rng);
    const Vector u = random_u(cfg, rng);
    const CycleInvariants inv = cycle_invariants(g, u, cfg);
    for (double r : {0.1, 0.9, 3.0}) {
      const double f = f_gamma(inv, r);
      CHECK(f == doctest::Approx(1.0 + f_gamma_minus_one(inv, r)).epsilon(1e-10));
      CHECK(f >= 1.0 - 1e-12);
    }
    // Cauchy-Schwarz: |Q - 1| = 2|m.n| <= 2 sqrt(M N)
    CHECK(std::abs(inv.Q_u - 1.0) <= 2.0 * std::sqrt(inv.M * inv.N_u) * (1 + 1e-12) + 1e-14);
    CHECK(inv.delta_raw() >= 1.0 - 1e-10);
    CHECK(0.5 * (1.0 + inv.u11) + inv.beta >= -1e-12);
    if (inv.M > 1e-8 && inv.N_u > 1e-8) {
      const double rs = r_star(inv);
      CHECK(f_gamma(inv, rs) == doctest::Approx(inv.delta_raw()).epsilon(1e-9));
      CHECK(f_gamma(inv, rs * 1.01) >= f_gamma(inv, rs));
      CHECK(f_gamma(inv, rs / 1.01) >= f_gamma(inv, rs));
    }
  }
}

TEST_CASE("closed-form distance matches direct minimization") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const auto [d, n] = kConfigs[trial % 5];
    const CycleConfig cfg(d, n);
    const LorentzMatrix g = random_word(d, 2, rng);
    const GeometricCheck c = verify_f_geometric(g, random_u(cfg, rng), 0.7, cfg);
    CHECK(c.gap < 1e-6);
  }
}

TEST_CASE("s(u, r) agrees with the horospherical height of the cycle point") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [d, n] = kConfigs[trial % 5];
    const CycleConfig cfg(d, n);
    const LorentzMatrix g = random_word(d, 3, rng);
    const Vector u = random_u(cfg, rng);
    const CycleInvariants inv = cycle_invariants(g, u, cfg);
    const double r = 0.5 + trial * 0.02;
    const HorospherVector h = to_horospherical(cycle_point(g, u, r, cfg));
    CHECK(h.r == doctest::Approx(inv.r0 / inv.s_inverse(r)).epsilon(1e-8));
  }
}

TEST_CASE("f is invariant under G0 on the left") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [d, n] = kConfigs[trial % 5];
    const CycleConfig cfg(d, n);
    const LorentzMatrix g = random_word(d, 3, rng);
    const LorentzMatrix h = random_g0(cfg, rng);
    const Vector u = random_u(cfg, rng);
    const CycleInvariants a = cycle_invariants(g, u, cfg);
    const CycleInvariants b = cycle_invariants(h * g, u, cfg);
    for (double r : {0.3, 1.0, 2.5})
      CHECK(f_gamma(b, r) == doctest::Approx(f_gamma(a, r)).epsilon(1e-7));
  }
}

TEST_CASE("cycle_distance") {
  CHECK(cycle_distance(1.0) == 0.0);
  CHECK(cycle_distance(0.99) == 0.0);
  const double t = 1e-7;
  CHECK(cycle_distance(std::cosh(t) * std::cosh(t)) == doctest::Approx(t).epsilon(1e-6));
  CHECK(cycle_distance(std::cosh(3.0) * std::cosh(3.0)) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("G0 elements have M = N = 0") {
  std::mt19937_64 rng(35);
  const CycleConfig cfg(4, 2);
  for (int i = 0; i < 20; ++i) {
    const CycleInvariants inv = cycle_invariants(random_g0(cfg, rng), random_u(cfg, rng), cfg);
    CHECK(inv.M < 1e-20);
    CHECK(inv.N_u < 1e-20);
  }
}

TEST_CASE("direction and dimension validation") {
  const CycleConfig cfg(4, 2);
  CHECK_THROWS_AS(cycle_invariants(LorentzMatrix::identity(4), Vector::Zero(2), cfg), InvalidInput);
  CHECK_THROWS_AS(cycle_invariants(LorentzMatrix::identity(3), Vector::Zero(1), cfg), InvalidInput);
  const CycleInvariants inv = cycle_invariants(LorentzMatrix::identity(4), Vector::Zero(1), cfg);
  CHECK_THROWS_AS(f_gamma(inv, 0.0), InvalidInput);
}

TEST_CASE("u11 gap report on the Picard generators") {
  const GeneratorSet gens = load_generators(data_path("picard.json"));
  const CycleConfig cfg(3, 2);
  const U11Report rep = check_u11_gap(gens.matrices(), cfg);
  CHECK(rep.examined >= 1);
  // the unipotent U fixes the cusp, so its rotation part has u11 = 1
  CHECK_FALSE(rep.violations.empty());
  CHECK(check_u11_gap({LorentzMatrix::identity(3)}, cfg).vacuous());
}
