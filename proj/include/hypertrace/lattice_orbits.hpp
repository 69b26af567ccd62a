#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hypertrace/lorentz.hpp"

namespace hypertrace {

/// Finite generating set of a discrete subgroup. Labels are [A-Za-z0-9_]+
/// and may not be "e"; inverses are labelled "L^-1".
class GeneratorSet {
 public:
  GeneratorSet(int d, std::vector<std::string> labels, const std::vector<Matrix>& matrices,
               bool includes_inverses = false, double tol = kGroupTol);

  int d() const { return d_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<LorentzMatrix>& matrices() const { return matrices_; }
  bool includes_inverses() const { return includes_inverses_; }

  /// Generators followed by their inverses unless the set already holds them.
  std::vector<std::pair<std::string, LorentzMatrix>> symmetric() const;

 private:
  int d_;
  std::vector<std::string> labels_;
  std::vector<LorentzMatrix> matrices_;
  bool includes_inverses_;
};

struct BallElement {
  std::string word;  // "e" for the identity, tokens joined by '.'
  int length = 0;
  LorentzMatrix matrix;
};

struct EnumerateOptions {
  int max_length_guard = 12;
  double quantum = 1e-9;
  double audit_tol = 1e-8;
  int workers = 1;
};

struct Ball {
  std::vector<BallElement> elements;  // BFS order: nondecreasing length
  int audit_merges = 0;     // quantization misses caught by the audit pass
  int near_collisions = 0;  // distinct elements closer than audit_tol
};

Ball ball_enumerate(const GeneratorSet& gens, int max_word_length,
                    const EnumerateOptions& opt = {});

enum class CosetMode { Left, Double };

struct OrbitEntry {
  std::string word;
  int length = 0;
  LorentzMatrix matrix;
  int coset_id = -1;
  double delta = std::numeric_limits<double>::quiet_NaN();
  double M = std::numeric_limits<double>::quiet_NaN();
  double N = std::numeric_limits<double>::quiet_NaN();
  double Q = std::numeric_limits<double>::quiet_NaN();
};

struct OrbitTable {
  std::vector<OrbitEntry> entries;
  std::vector<int> representative;  // entry index per class id
  CosetMode mode = CosetMode::Left;
  int gamma0_radius = 0;  // Gamma_0-ball word length used by the double mode
  int trivial_class = -1;
  int class_count() const { return static_cast<int>(representative.size()); }
};

/// Left mode: gamma ~ gamma' iff gamma' gamma^-1 is block diagonal. The key
/// R^T R (R = rows n+1..d of gamma) is a complete invariant of the left
/// G0-coset; bucket members are confirmed with the block test.
/// Double mode: left classes are further merged when gamma h lands in another
/// class for h in the Gamma_0-ball of word length <= gamma0_radius.
/// Class ids follow the representatives ordered by (length, word); the
/// identity's class is therefore 0.
OrbitTable coset_reduce(const std::vector<BallElement>& ball, const CycleConfig& cfg,
                        CosetMode mode, int gamma0_radius = 4, double tol = kGroupTol);

/// One entry per nontrivial class (its representative) with delta_u, M, N_u,
/// Q_u filled in; sorted by (delta, word).
OrbitTable delta_spectrum(const OrbitTable& skeleton, const Vector& u, const CycleConfig& cfg,
                          int workers = 1);

struct CountingResult {
  std::vector<double> x;
  std::vector<long> count;
  double slope = std::numeric_limits<double>::quiet_NaN();
  double fit_lo = 0.0;
  double fit_hi = 0.0;
  int fit_points = 0;
};

/// pi(x) = #{entries with delta <= x} on the grid, and the least-squares slope
/// of log pi against log x over the top decade of the grid.
CountingResult counting_function(const OrbitTable& table, const std::vector<double>& x_grid);

/// Geometric grid from 1 to the largest delta in the table.
std::vector<double> default_x_grid(const OrbitTable& table, int points = 60);

/// min_j delta_j j^{-1/((d-n)/2 + beta)} over the sorted table.
double ordering_statistic(const OrbitTable& table, const CycleConfig& cfg, double beta = 0.5);

}  // namespace hypertrace
