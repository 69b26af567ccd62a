#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypertrace/bessel.hpp"
#include "hypertrace/lorentz.hpp"

namespace hypertrace {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  // largest error seen
  double tol = 0.0;
  bool pass() const { return cases > 0 && failures == 0; }
};

/// Haar-ish rotation in SO(k) from the QR factor of a Gaussian matrix.
Matrix random_rotation(int k, std::mt19937_64& rng);

/// Product of `length` random boosts, unipotents and rotations in SO_0(1,d).
LorentzMatrix random_word(int d, int length, std::mt19937_64& rng);

/// dist_horospherical against the Minkowski-pairing distance, error
/// |a - b| / max(1, b), over random pairs in d in {2..5}.
SuiteResult distance_duality_suite(int pairs, std::uint64_t seed, double tol);

/// NAK, ANK and KAK reconstructions over random words; error is
/// max |g - product| / max(1, max |g_ij|). One case per (word, decomposition).
SuiteResult decomposition_roundtrip_suite(int words, std::uint64_t seed, double tol);

/// `draws` random parameter sets for each of the three integral identities.
std::vector<SuiteResult> gr_identity_suite(int draws, std::uint64_t seed, double tol);

struct TransformCase {
  int d = 3;
  double mu = 1.0;
  Complex nu;
  Complex closed;
  Complex quadrature;
  double rel_err = 0.0;
};

/// Closed transform against quadrature on the product grid; nu values with
/// |Re nu| >= rho for some d are skipped for that d.
std::vector<TransformCase> transform_grid(const std::vector<int>& ds, const std::vector<double>& mus,
                                          const std::vector<Complex>& nus);
SuiteResult summarize_transform(const std::vector<TransformCase>& cases, double tol);

}  // namespace hypertrace
