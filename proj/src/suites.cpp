#include "hypertrace/suites.hpp"

#include <algorithm>
#include <cmath>

#include "hypertrace/decompositions.hpp"
#include "hypertrace/selberg.hpp"

namespace hypertrace {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void record(SuiteResult& s, double err) {
  ++s.cases;
  if (!(err <= s.tol)) ++s.failures;
  if (std::isnan(err) || err > s.worst) s.worst = err;
}

double recon_err(const Matrix& g, const Matrix& prod) {
  return (g - prod).cwiseAbs().maxCoeff() / std::max(1.0, g.cwiseAbs().maxCoeff());
}

}  // namespace

Matrix random_rotation(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix a(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

LorentzMatrix random_word(int d, int length, std::mt19937_64& rng) {
  LorentzMatrix g = LorentzMatrix::identity(d);
  for (int i = 0; i < length; ++i) {
    switch (rng() % 3) {
      case 0:
        g = g * make_boost(uniform(rng, -1.5, 1.5), d);
        break;
      case 1: {
        Vector u(d - 1);
        for (int k = 0; k < d - 1; ++k) u(k) = uniform(rng, -1.5, 1.5);
        g = g * make_unipotent(u);
        break;
      }
      default:
        g = g * make_rotation(random_rotation(d, rng));
    }
  }
  return g;
}

SuiteResult distance_duality_suite(int pairs, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  SuiteResult s{"distance_duality", 0, 0, 0.0, tol};
  for (int i = 0; i < pairs; ++i) {
    const int d = 2 + static_cast<int>(rng() % 4);
    auto draw = [&] {
      Vector u(d - 1);
      for (int k = 0; k < d - 1; ++k) u(k) = uniform(rng, -3.0, 3.0);
      return HorospherVector(u, std::exp(uniform(rng, -3.0, 3.0)));
    };
    const HorospherVector a = draw();
    const HorospherVector b = draw();
    const double horo = dist_horospherical(a, b);
    const double mink = dist(from_horospherical(a), from_horospherical(b));
    record(s, std::abs(horo - mink) / std::max(1.0, mink));
  }
  return s;
}

SuiteResult decomposition_roundtrip_suite(int words, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  SuiteResult s{"decomposition_roundtrip", 0, 0, 0.0, tol};
  for (int i = 0; i < words; ++i) {
    const int d = 2 + static_cast<int>(rng() % 4);
    const int len = 1 + static_cast<int>(rng() % 6);
    const LorentzMatrix g = random_word(d, len, rng);
    const NakFactors nak = iwasawa_nak(g);
    record(s, recon_err(g.matrix(), (nak.n * nak.a * nak.k).matrix()));
    const AnkFactors ank = iwasawa_ank(g);
    record(s, recon_err(g.matrix(), (ank.a * ank.n * ank.k).matrix()));
    const KakFactors kak = cartan_kak(g);
    record(s, recon_err(g.matrix(), (kak.k1 * make_boost(kak.t, d) * kak.k2).matrix()));
  }
  return s;
}

std::vector<SuiteResult> gr_identity_suite(int draws, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  SuiteResult s1{"gr_3.471.9", 0, 0, 0.0, tol};
  SuiteResult s2{"gr_6.726.4", 0, 0, 0.0, tol};
  SuiteResult s3{"gr_6.592.12", 0, 0, 0.0, tol};
  for (int i = 0; i < draws; ++i) {
    const double alpha = uniform(rng, 0.2, 3.0);
    const double beta = uniform(rng, 0.2, 3.0);
    const Complex o1 = (rng() % 2) ? Complex(uniform(rng, -2.5, 2.5), 0.0)
                                   : Complex(uniform(rng, -2.5, 2.5), uniform(rng, -4.0, 4.0));
    record(s1, gr_identity_3_471_9(alpha, beta, o1).rel_err);

    const double a = uniform(rng, 0.5, 3.0);
    const double b = uniform(rng, 0.3, 2.0);
    const double c = uniform(rng, 0.0, 3.0);
    const Complex o2(uniform(rng, -1.5, 1.5), uniform(rng, -3.0, 3.0));
    const Sign sg = (rng() % 2) ? Sign::Plus : Sign::Minus;
    record(s2, gr_identity_6_726_4(a, b, c, o2, sg).rel_err);

    const double a3 = uniform(rng, 0.5, 3.0);
    const double b3 = uniform(rng, -1.5, 1.5);
    const double c3 = uniform(rng, 0.3, 2.0);
    const double z = (rng() % 2) ? b3 : -b3;
    record(s3, gr_identity_6_592_12(a3, b3, c3, Complex(z, 0.0)).rel_err);
  }
  return {s1, s2, s3};
}

std::vector<TransformCase> transform_grid(const std::vector<int>& ds, const std::vector<double>& mus,
                                          const std::vector<Complex>& nus) {
  std::vector<TransformCase> out;
  for (int d : ds)
    for (double mu : mus)
      for (Complex nu : nus) {
        if (nu.imag() == 0.0 && std::abs(nu.real()) >= 0.5 * (d - 1)) continue;
        const SpectralParam sp(nu, d);
        TransformCase c;
        c.d = d;
        c.mu = mu;
        c.nu = nu;
        c.closed = selberg_transform_closed(d, mu, sp);
        c.quadrature = selberg_transform_quadrature(d, mu, sp);
        c.rel_err = std::abs(c.quadrature - c.closed) / std::abs(c.closed);
        out.push_back(c);
      }
  return out;
}

SuiteResult summarize_transform(const std::vector<TransformCase>& cases, double tol) {
  SuiteResult s{"transform", 0, 0, 0.0, tol};
  for (const auto& c : cases) record(s, c.rel_err);
  return s;
}

}  // namespace hypertrace
