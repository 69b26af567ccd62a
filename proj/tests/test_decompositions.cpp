#include <random>

#include "doctest.h"
#include "hypertrace/decompositions.hpp"
#include "test_support.hpp"

using namespace hypertrace;
using hypertrace::testing::max_abs;

namespace {

HorospherVector random_horo(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-3, 3);
  Vector u(d - 1);
  for (int i = 0; i < d - 1; ++i) u(i) = U(rng);
  return HorospherVector(u, std::exp(U(rng)));
}

}  // namespace

TEST_CASE("NAK, ANK and KAK reconstruct the element") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 4;
    const LorentzMatrix g = random_word(d, 1 + trial % 7, rng);
    const double tol = 1e-10 * g.scale() * g.scale();

    const NakFactors nak = iwasawa_nak(g);
    CHECK(max_abs((nak.n * nak.a * nak.k).matrix() - g.matrix()) < tol);
    CHECK(check_membership(nak.n, Subgroup::N));
    CHECK(check_membership(nak.a, Subgroup::A));
    CHECK(check_membership(nak.k, Subgroup::K));
    CHECK(max_abs(nak.n.matrix() - make_unipotent(nak.w).matrix()) < 1e-12 * g.scale());

    const AnkFactors ank = iwasawa_ank(g);
    CHECK(max_abs((ank.a * ank.n * ank.k).matrix() - g.matrix()) < tol);
    CHECK(ank.r0 > 0.0);
    CHECK(check_membership(ank.k, Subgroup::K));

    const KakFactors kak = cartan_kak(g);
    CHECK(max_abs((kak.k1 * make_boost(kak.t, d) * kak.k2).matrix() - g.matrix()) < tol);
    CHECK(kak.t >= 0.0);
    CHECK(check_membership(kak.k1, Subgroup::K));
    CHECK(check_membership(kak.k2, Subgroup::K));
    CHECK(kak.t == doctest::Approx(dist(apply_to_origin(g), HyperboloidPoint::origin(d))).epsilon(1e-12));
  }
}

TEST_CASE("KAK of a pure boost and of the identity") {
  CHECK(cartan_kak(make_boost(2.5, 3)).t == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(cartan_kak(make_boost(-2.5, 3)).t == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(cartan_kak(LorentzMatrix::identity(4)).t == 0.0);
}

TEST_CASE("boost distance is exact for small and large parameters") {
  const HyperboloidPoint o = HyperboloidPoint::origin(3);
  for (double t : {1e-9, 1e-5, 0.3, 4.0, 30.0})
    CHECK(dist(apply_to_origin(make_boost(t, 3)), o) == doctest::Approx(t).epsilon(1e-13));
  CHECK(dist(o, o) == 0.0);
}

TEST_CASE("horospherical coordinates round trip") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 4;
    const HorospherVector h = random_horo(d, rng);
    const HyperboloidPoint p = from_horospherical(h);
    CHECK(std::abs(minkowski_pairing(p.coords(), p.coords()) - 1.0) < 1e-12 * p[0] * p[0]);
    const HorospherVector back = to_horospherical(p);
    CHECK(back.r == doctest::Approx(h.r).epsilon(1e-10));
    CHECK((back.u - h.u).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + h.u.norm()));
    // p = n_u a_r xi_0 by construction
    const Vector q = (make_unipotent(h.u) * make_boost(std::log(h.r), d)).matrix().col(0);
    CHECK((q - p.coords()).cwiseAbs().maxCoeff() < 1e-12 * p[0]);
  }
}

TEST_CASE("horospherical distance formula matches hyperboloid distance") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 4;
    const HorospherVector a = random_horo(d, rng), b = random_horo(d, rng);
    const double direct = dist(from_horospherical(a), from_horospherical(b));
    CHECK(dist_horospherical(a, b) == doctest::Approx(direct).epsilon(1e-10).scale(1e-10));
    CHECK(dist_horospherical(a, b) == doctest::Approx(dist_horospherical(b, a)).epsilon(1e-14));
  }
  Vector u(2);
  u << 0.0, 0.0;
  const HorospherVector a(u, 1.0), b(u, std::exp(1.7));
  CHECK(dist_horospherical(a, b) == doctest::Approx(1.7).epsilon(1e-14));
  CHECK(dist_horospherical(a, a) == 0.0);
}

TEST_CASE("distance is invariant under the group") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 4;
    const HyperboloidPoint p = from_horospherical(random_horo(d, rng));
    const HyperboloidPoint q = from_horospherical(random_horo(d, rng));
    const LorentzMatrix g = random_word(d, 3, rng);
    const HyperboloidPoint gp(g * p.coords(), LorentzMatrix::Unchecked{});
    const HyperboloidPoint gq(g * q.coords(), LorentzMatrix::Unchecked{});
    CHECK(dist(gp, gq) == doctest::Approx(dist(p, q)).epsilon(1e-9).scale(1e-9));
  }
}

TEST_CASE("arccosh_plus clamps") {
  CHECK(arccosh_plus(0.5) == 0.0);
  CHECK(arccosh_plus(1.0) == 0.0);
  CHECK(arccosh_plus(std::cosh(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
}
