#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "hypertrace/geodesic_cycles.hpp"
#include "hypertrace/io.hpp"
#include "hypertrace/lattice_orbits.hpp"
#include "test_support.hpp"

using namespace hypertrace;
using hypertrace::testing::data_path;
using hypertrace::testing::max_abs;

namespace {

const GeneratorSet& picard() {
  static const GeneratorSet g = load_generators(data_path("picard.json"));
  return g;
}

LorentzMatrix eval_word(const GeneratorSet& gens, const std::string& word) {
  LorentzMatrix g = LorentzMatrix::identity(gens.d());
  if (word == "e") return g;
  const auto sym = gens.symmetric();
  std::size_t start = 0;
  while (start <= word.size()) {
    const std::size_t dot = std::min(word.find('.', start), word.size());
    const std::string tok = word.substr(start, dot - start);
    const auto it = std::find_if(sym.begin(), sym.end(), [&](const auto& p) { return p.first == tok; });
    REQUIRE(it != sym.end());
    g = g * it->second;
    start = dot + 1;
  }
  return g;
}

}  // namespace

TEST_CASE("a cyclic group gives a line of powers") {
  const GeneratorSet gens(3, {"B"}, {make_boost(0.9, 3).matrix()});
  const Ball ball = ball_enumerate(gens, 3);
  CHECK(ball.elements.size() == 7);
  CHECK(ball.elements[0].word == "e");
  for (std::size_t i = 1; i < ball.elements.size(); ++i)
    CHECK(ball.elements[i].length >= ball.elements[i - 1].length);
}

TEST_CASE("Picard ball sizes and class counts") {
  const Ball b4 = ball_enumerate(picard(), 4);
  CHECK(b4.elements.size() == 196);
  CHECK(b4.audit_merges == 0);
  CHECK(ball_enumerate(picard(), 2).elements.size() == 22);
  const CycleConfig cfg(3, 2);
  CHECK(coset_reduce(b4.elements, cfg, CosetMode::Left).class_count() == 39);
  CHECK(coset_reduce(b4.elements, cfg, CosetMode::Double, 4).class_count() == 15);
}

TEST_CASE("words evaluate to their matrices and elements are distinct") {
  const Ball b = ball_enumerate(picard(), 4);
  for (const auto& e : b.elements) {
    CAPTURE(e.word);
    CHECK(max_abs(eval_word(picard(), e.word).matrix() - e.matrix.matrix()) < 1e-12 * e.matrix.scale());
    const int tokens = e.word == "e" ? 0 : 1 + static_cast<int>(std::count(e.word.begin(), e.word.end(), '.'));
    CHECK(tokens == e.length);
  }
  for (std::size_t i = 0; i < b.elements.size(); ++i)
    for (std::size_t j = i + 1; j < b.elements.size(); ++j)
      CHECK(max_abs(b.elements[i].matrix.matrix() - b.elements[j].matrix.matrix()) > 1e-8);
}

TEST_CASE("ball is closed under right multiplication below the radius") {
  const Ball b = ball_enumerate(picard(), 4);
  const auto sym = picard().symmetric();
  for (const auto& e : b.elements) {
    if (e.length >= 4) continue;
    for (const auto& [label, s] : sym) {
      const Matrix p = (e.matrix * s).matrix();
      const bool found = std::any_of(b.elements.begin(), b.elements.end(), [&](const BallElement& o) {
        return max_abs(o.matrix.matrix() - p) < 1e-9 * o.matrix.scale();
      });
      CHECK(found);
    }
  }
}

TEST_CASE("left classes agree with the pairwise block test") {
  const Ball b = ball_enumerate(picard(), 4);
  const CycleConfig cfg(3, 2);
  const OrbitTable t = coset_reduce(b.elements, cfg, CosetMode::Left);
  REQUIRE(t.entries.size() == b.elements.size());
  CHECK(t.trivial_class == 0);
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < t.entries.size(); ++j) {
      const bool same = check_membership(t.entries[i].matrix * t.entries[j].matrix.inverse(), Subgroup::G0, cfg);
      CHECK(same == (t.entries[i].coset_id == t.entries[j].coset_id));
    }
  }
  // representatives are minimal by (length, word) and ids follow that order
  for (int c = 1; c < t.class_count(); ++c) {
    const auto& prev = t.entries[t.representative[c - 1]];
    const auto& cur = t.entries[t.representative[c]];
    CHECK(std::pair(prev.length, prev.word) < std::pair(cur.length, cur.word));
  }
}

TEST_CASE("double classes coarsen left classes") {
  const Ball b = ball_enumerate(picard(), 4);
  const CycleConfig cfg(3, 2);
  const OrbitTable left = coset_reduce(b.elements, cfg, CosetMode::Left);
  const OrbitTable dbl = coset_reduce(b.elements, cfg, CosetMode::Double, 4);
  std::map<int, int> image;
  for (std::size_t i = 0; i < left.entries.size(); ++i) {
    const int l = left.entries[i].coset_id;
    const int d = dbl.entries[i].coset_id;
    if (image.count(l)) CHECK(image[l] == d);
    image[l] = d;
  }
}

TEST_CASE("delta is constant on left classes") {
  const Ball b = ball_enumerate(picard(), 6);
  const CycleConfig cfg(3, 2);
  const OrbitTable t = coset_reduce(b.elements, cfg, CosetMode::Left);
  for (double u0 : {0.0, 0.3, -0.45}) {
    Vector u(1);
    u << u0;
    std::map<int, double> first;
    for (const auto& e : t.entries) {
      const double dl = delta_u(e.matrix, u, cfg);
      auto [it, fresh] = first.emplace(e.coset_id, dl);
      if (!fresh) CHECK(std::abs(dl - it->second) <= 1e-8 * std::max(1.0, it->second));
    }
  }
}

TEST_CASE("delta spectrum is sorted, nontrivial, and pi is monotone") {
  const Ball b = ball_enumerate(picard(), 6);
  const CycleConfig cfg(3, 2);
  const OrbitTable sk = coset_reduce(b.elements, cfg, CosetMode::Left);
  const OrbitTable t = delta_spectrum(sk, Vector::Zero(1), cfg);
  CHECK(static_cast<int>(t.entries.size()) == sk.class_count() - 1);
  for (std::size_t i = 1; i < t.entries.size(); ++i) CHECK(t.entries[i].delta >= t.entries[i - 1].delta);
  for (const auto& e : t.entries) {
    CHECK(e.delta >= 1.0);
    CHECK(e.delta == doctest::Approx(std::max(1.0, 2 * std::sqrt(e.M * e.N) + e.Q)).epsilon(1e-12));
  }
  const CountingResult c = counting_function(t, default_x_grid(t));
  for (std::size_t i = 1; i < c.count.size(); ++i) CHECK(c.count[i] >= c.count[i - 1]);
  CHECK(c.count.back() == static_cast<long>(t.entries.size()));
  CHECK(std::isfinite(c.slope));
  CHECK(ordering_statistic(t, cfg) > 0.0);
}

TEST_CASE("the modular subgroup lies in G0") {
  const GeneratorSet gens = load_generators(data_path("modular.json"));
  const CycleConfig cfg(3, 2);
  const OrbitTable t = coset_reduce(ball_enumerate(gens, 5).elements, cfg, CosetMode::Left);
  CHECK(t.class_count() == 1);
  CHECK(delta_spectrum(t, Vector::Zero(1), cfg).entries.empty());
}

TEST_CASE("enumeration and spectrum do not depend on the worker count") {
  EnumerateOptions one, four;
  four.workers = 4;
  const Ball a = ball_enumerate(picard(), 6, one);
  const Ball b = ball_enumerate(picard(), 6, four);
  REQUIRE(a.elements.size() == b.elements.size());
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    CHECK(a.elements[i].word == b.elements[i].word);
    CHECK(max_abs(a.elements[i].matrix.matrix() - b.elements[i].matrix.matrix()) == 0.0);
  }
  const CycleConfig cfg(3, 2);
  const OrbitTable sk = coset_reduce(a.elements, cfg, CosetMode::Left);
  Vector u(1);
  u << 0.2;
  const OrbitTable s1 = delta_spectrum(sk, u, cfg, 1);
  const OrbitTable s4 = delta_spectrum(sk, u, cfg, 4);
  REQUIRE(s1.entries.size() == s4.entries.size());
  for (std::size_t i = 0; i < s1.entries.size(); ++i) {
    CHECK(s1.entries[i].word == s4.entries[i].word);
    CHECK(s1.entries[i].delta == s4.entries[i].delta);
  }
}

TEST_CASE("generator validation") {
  CHECK_THROWS_AS(GeneratorSet(3, {"e"}, {Matrix::Identity(4, 4)}), InvalidInput);
  CHECK_THROWS_AS(GeneratorSet(3, {"a-b"}, {Matrix::Identity(4, 4)}), InvalidInput);
  CHECK_THROWS_AS(GeneratorSet(3, {"A", "A"}, {Matrix::Identity(4, 4), Matrix::Identity(4, 4)}), InvalidInput);
  CHECK_THROWS_AS(GeneratorSet(3, {"A"}, {Matrix::Identity(3, 3)}), InvalidInput);
  CHECK_THROWS_AS(ball_enumerate(picard(), 13), InvalidInput);
  CHECK_THROWS_AS(ball_enumerate(picard(), -1), InvalidInput);
  CHECK(ball_enumerate(picard(), 0).elements.size() == 1);
}
