#include "hypertrace/lattice_orbits.hpp"

#include <algorithm>
#include <boost/container_hash/hash.hpp>
#include <cctype>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "hypertrace/geodesic_cycles.hpp"
#include "parallel.hpp"

namespace hypertrace {

namespace {

using Key = std::vector<long long>;

struct KeyHash {
  std::size_t operator()(const Key& k) const { return boost::hash_range(k.begin(), k.end()); }
};

Key quantize(const Matrix& m, double quantum) {
  Key k(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.size(); ++i)
    k[static_cast<std::size_t>(i)] = std::llround(m.data()[i] / quantum);
  return k;
}

bool valid_label(const std::string& s) {
  if (s.empty() || s == "e") return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::string extend(const std::string& word, const std::string& token) {
  return word == "e" ? token : word + "." + token;
}

bool shorter(const BallElement& a, const BallElement& b) {
  if (a.length != b.length) return a.length < b.length;
  return a.word < b.word;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

GeneratorSet::GeneratorSet(int d, std::vector<std::string> labels,
                           const std::vector<Matrix>& matrices, bool includes_inverses, double tol)
    : d_(d), labels_(std::move(labels)), includes_inverses_(includes_inverses) {
  if (d < 2) throw InvalidInput("generator set needs d >= 2");
  if (labels_.size() != matrices.size())
    throw InvalidInput("generator labels and matrices differ in count");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!valid_label(labels_[i]))
      throw InvalidInput("generator label '" + labels_[i] + "' must match [A-Za-z0-9_]+ and not be 'e'");
    for (std::size_t j = 0; j < i; ++j)
      if (labels_[i] == labels_[j]) throw InvalidInput("duplicate generator label '" + labels_[i] + "'");
    if (matrices[i].rows() != d + 1 || matrices[i].cols() != d + 1)
      throw InvalidInput("generator '" + labels_[i] + "' is not (d+1)x(d+1)");
    const std::string why = describe_group_violation(matrices[i], tol);
    if (!why.empty()) throw InvalidInput("generator '" + labels_[i] + "' fails G-membership: " + why);
    matrices_.emplace_back(matrices[i], LorentzMatrix::Unchecked{});
  }
}

std::vector<std::pair<std::string, LorentzMatrix>> GeneratorSet::symmetric() const {
  std::vector<std::pair<std::string, LorentzMatrix>> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) out.emplace_back(labels_[i], matrices_[i]);
  if (!includes_inverses_)
    for (std::size_t i = 0; i < labels_.size(); ++i)
      out.emplace_back(labels_[i] + "^-1", matrices_[i].inverse());
  return out;
}

Ball ball_enumerate(const GeneratorSet& gens, int max_word_length, const EnumerateOptions& opt) {
  if (max_word_length < 0) throw InvalidInput("max word length must be >= 0");
  if (max_word_length > opt.max_length_guard)
    throw InvalidInput("max word length exceeds the configured guard");
  const auto sym = gens.symmetric();
  const std::size_t ng = sym.size();

  Ball ball;
  auto& el = ball.elements;
  std::unordered_map<Key, std::size_t, KeyHash> seen;
  el.push_back({"e", 0, LorentzMatrix::identity(gens.d())});
  seen.emplace(quantize(el[0].matrix.matrix(), opt.quantum), 0);

  std::vector<std::size_t> frontier{0};
  for (int len = 1; len <= max_word_length && !frontier.empty(); ++len) {
    const std::size_t total = frontier.size() * ng;
    std::vector<Matrix> prod(total);
    std::vector<Key> keys(total);
    detail::parallel_for(total, opt.workers, [&](std::size_t t) {
      const std::size_t f = t / ng;
      const std::size_t g = t % ng;
      prod[t] = el[frontier[f]].matrix.matrix() * sym[g].second.matrix();
      keys[t] = quantize(prod[t], opt.quantum);
    });
    std::vector<std::size_t> next;
    for (std::size_t t = 0; t < total; ++t) {
      const std::size_t f = t / ng;
      const std::size_t g = t % ng;
      std::string word = extend(el[frontier[f]].word, sym[g].first);
      auto it = seen.find(keys[t]);
      if (it == seen.end()) {
        seen.emplace(std::move(keys[t]), el.size());
        next.push_back(el.size());
        el.push_back({std::move(word), len, LorentzMatrix(std::move(prod[t]), LorentzMatrix::Unchecked{})});
      } else if (el[it->second].length == len && word < el[it->second].word) {
        el[it->second].word = std::move(word);
      }
    }
    frontier = std::move(next);
  }

  // Audit: elements sharing a coarse cell are compared directly, catching
  // pairs that straddled a boundary of the fine grid.
  const double coarse = opt.audit_tol * 100.0;
  std::vector<std::pair<Key, std::size_t>> cells;
  cells.reserve(el.size());
  for (std::size_t i = 0; i < el.size(); ++i) cells.emplace_back(quantize(el[i].matrix.matrix(), coarse), i);
  std::sort(cells.begin(), cells.end());
  std::vector<char> dropped(el.size(), 0);
  for (std::size_t lo = 0; lo < cells.size();) {
    std::size_t hi = lo + 1;
    while (hi < cells.size() && cells[hi].first == cells[lo].first) ++hi;
    for (std::size_t a = lo; a < hi; ++a) {
      for (std::size_t b = a + 1; b < hi; ++b) {
        const std::size_t i = cells[a].second;
        const std::size_t j = cells[b].second;
        if (dropped[i] || dropped[j]) continue;
        const Matrix& mi = el[i].matrix.matrix();
        const Matrix& mj = el[j].matrix.matrix();
        const double diff = max_abs_diff(mi, mj);
        const double scale = std::max(el[i].matrix.scale(), el[j].matrix.scale());
        if (diff <= 1e-12 * scale) {
          dropped[shorter(el[i], el[j]) ? j : i] = 1;
          ++ball.audit_merges;
        } else if (diff <= opt.audit_tol) {
          ++ball.near_collisions;
        }
      }
    }
    lo = hi;
  }
  if (ball.audit_merges > 0) {
    std::vector<BallElement> kept;
    kept.reserve(el.size());
    for (std::size_t i = 0; i < el.size(); ++i)
      if (!dropped[i]) kept.push_back(std::move(el[i]));
    el = std::move(kept);
  }
  return ball;
}

namespace {

Key coset_key(const Matrix& g, int n) {
  const int d = static_cast<int>(g.rows()) - 1;
  const Matrix r = g.bottomRows(d - n);
  const Matrix gram = r.transpose() * r;
  const double quantum = 1e-7 * std::max(1.0, gram.cwiseAbs().maxCoeff());
  Key k;
  k.reserve(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  for (int i = 0; i <= d; ++i)
    for (int j = i; j <= d; ++j) k.push_back(std::llround(gram(i, j) / quantum));
  return k;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

OrbitTable coset_reduce(const std::vector<BallElement>& ball, const CycleConfig& cfg,
                        CosetMode mode, int gamma0_radius, double tol) {
  OrbitTable table;
  table.mode = mode;
  table.gamma0_radius = mode == CosetMode::Double ? gamma0_radius : 0;
  if (ball.empty()) return table;
  for (const auto& b : ball)
    if (b.matrix.dim() != cfg.d()) throw InvalidInput("ball element dimension does not match (d, n)");

  const int n = cfg.n();
  auto same_left_coset = [&](const LorentzMatrix& a, const LorentzMatrix& b) {
    return check_membership(a * b.inverse(), Subgroup::G0, cfg, tol);
  };

  // Left classes, in order of first appearance.
  std::unordered_map<Key, std::vector<int>, KeyHash> buckets;
  std::vector<int> first_member;
  std::vector<int> class_of(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    auto& bucket = buckets[coset_key(ball[i].matrix.matrix(), n)];
    int found = -1;
    for (int c : bucket)
      if (same_left_coset(ball[i].matrix, ball[first_member[c]].matrix)) {
        found = c;
        break;
      }
    if (found < 0) {
      found = static_cast<int>(first_member.size());
      first_member.push_back(static_cast<int>(i));
      bucket.push_back(found);
    }
    class_of[i] = found;
  }
  const int nclass = static_cast<int>(first_member.size());

  UnionFind uf(nclass);
  if (mode == CosetMode::Double) {
    std::vector<int> h_ball;
    for (std::size_t i = 0; i < ball.size(); ++i)
      if (ball[i].length >= 1 && ball[i].length <= gamma0_radius &&
          check_membership(ball[i].matrix, Subgroup::G0, cfg, tol))
        h_ball.push_back(static_cast<int>(i));
    for (int c = 0; c < nclass; ++c) {
      const LorentzMatrix& g = ball[first_member[c]].matrix;
      for (int h : h_ball) {
        const LorentzMatrix gh = g * ball[h].matrix;
        auto it = buckets.find(coset_key(gh.matrix(), n));
        if (it == buckets.end()) continue;
        for (int c2 : it->second)
          if (same_left_coset(gh, ball[first_member[c2]].matrix)) {
            uf.unite(c, c2);
            break;
          }
      }
    }
  }

  // Best member per merged class, then ids by representative order.
  std::vector<int> best(static_cast<std::size_t>(nclass), -1);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const int root = uf.find(class_of[i]);
    if (best[root] < 0 || shorter(ball[i], ball[best[root]])) best[root] = static_cast<int>(i);
  }
  std::vector<int> roots;
  for (int c = 0; c < nclass; ++c)
    if (uf.find(c) == c) roots.push_back(c);
  std::sort(roots.begin(), roots.end(),
            [&](int a, int b) { return shorter(ball[best[a]], ball[best[b]]); });
  std::vector<int> id_of_root(static_cast<std::size_t>(nclass), -1);
  for (std::size_t k = 0; k < roots.size(); ++k) id_of_root[roots[k]] = static_cast<int>(k);

  table.entries.reserve(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    OrbitEntry e;
    e.word = ball[i].word;
    e.length = ball[i].length;
    e.matrix = ball[i].matrix;
    e.coset_id = id_of_root[uf.find(class_of[i])];
    table.entries.push_back(std::move(e));
  }
  table.representative.resize(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) table.representative[k] = best[roots[k]];
  for (std::size_t i = 0; i < ball.size(); ++i)
    if (ball[i].word == "e") table.trivial_class = table.entries[i].coset_id;
  if (table.trivial_class < 0) {
    // no identity in the ball: the trivial class is whichever meets G0
    for (std::size_t i = 0; i < ball.size(); ++i)
      if (check_membership(ball[i].matrix, Subgroup::G0, cfg, tol)) {
        table.trivial_class = table.entries[i].coset_id;
        break;
      }
  }
  return table;
}

OrbitTable delta_spectrum(const OrbitTable& skeleton, const Vector& u, const CycleConfig& cfg,
                          int workers) {
  OrbitTable out;
  out.mode = skeleton.mode;
  out.gamma0_radius = skeleton.gamma0_radius;
  std::vector<int> reps;
  for (int c = 0; c < skeleton.class_count(); ++c)
    if (c != skeleton.trivial_class) reps.push_back(skeleton.representative[c]);

  out.entries.resize(reps.size());
  detail::parallel_for(reps.size(), workers, [&](std::size_t k) {
    OrbitEntry e = skeleton.entries[reps[k]];
    const CycleInvariants inv = cycle_invariants(e.matrix, u, cfg);
    e.M = inv.M;
    e.N = inv.N_u;
    e.Q = inv.Q_u;
    e.delta = std::max(1.0, inv.delta_raw());
    out.entries[k] = std::move(e);
  });
  std::stable_sort(out.entries.begin(), out.entries.end(), [](const OrbitEntry& a, const OrbitEntry& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    return a.word < b.word;
  });
  out.representative.resize(out.entries.size());
  std::iota(out.representative.begin(), out.representative.end(), 0);
  return out;
}

CountingResult counting_function(const OrbitTable& table, const std::vector<double>& x_grid) {
  if (table.entries.empty()) throw InvalidInput("counting function needs a nonempty table");
  std::vector<double> deltas;
  deltas.reserve(table.entries.size());
  for (const auto& e : table.entries) deltas.push_back(e.delta);
  std::sort(deltas.begin(), deltas.end());

  CountingResult res;
  res.x = x_grid;
  for (double x : x_grid)
    res.count.push_back(static_cast<long>(std::upper_bound(deltas.begin(), deltas.end(), x) - deltas.begin()));

  double top = 0.0;
  for (std::size_t i = 0; i < x_grid.size(); ++i)
    if (res.count[i] > 0) top = std::max(top, x_grid[i]);
  if (top <= 0.0) return res;
  res.fit_hi = top;
  res.fit_lo = top / 10.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (res.count[i] <= 0 || x_grid[i] < res.fit_lo || x_grid[i] > res.fit_hi) continue;
    const double lx = std::log(x_grid[i]);
    const double ly = std::log(static_cast<double>(res.count[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  res.fit_points = k;
  const double den = k * sxx - sx * sx;
  if (k >= 2 && den > 0) res.slope = (k * sxy - sx * sy) / den;
  return res;
}

std::vector<double> default_x_grid(const OrbitTable& table, int points) {
  double top = 1.0;
  for (const auto& e : table.entries) top = std::max(top, e.delta);
  std::vector<double> grid;
  if (points < 2 || top <= 1.0) return {1.0};
  const double step = std::log(top) / (points - 1);
  for (int i = 0; i < points; ++i) grid.push_back(i + 1 == points ? top : std::exp(step * i));
  return grid;
}

double ordering_statistic(const OrbitTable& table, const CycleConfig& cfg, double beta) {
  if (table.entries.empty()) throw InvalidInput("ordering statistic needs a nonempty table");
  const double expo = -1.0 / (0.5 * (cfg.d() - cfg.n()) + beta);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < table.entries.size(); ++j)
    best = std::min(best, table.entries[j].delta * std::pow(static_cast<double>(j + 1), expo));
  return best;
}

}  // namespace hypertrace
