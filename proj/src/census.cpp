#include "ttrose/census.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/pending/disjoint_sets.hpp>

#include "ttrose/error.hpp"
#include "ttrose/folds.hpp"
#include "ttrose/spectral.hpp"

namespace ttrose {
namespace {

std::string matrix_key(const TransitionMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << m(i, j) << ',';
    os << ';';
  }
  return os.str();
}

std::string poly_key(const std::vector<BigInt>& p) {
  std::ostringstream os;
  for (const auto& c : p) os << c << ' ';
  return os.str();
}

long count_buckets(std::vector<double> values, double tol) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  long buckets = 1;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] - values[i - 1] > tol * std::max(1.0, values[i])) ++buckets;
  return buckets;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

WordOutcome examine_word(int r, const Word& z, const CensusOptions& options) {
  WordOutcome out;
  out.inner = z;
  const Certificate cert = certify(r, wrap_word(r, z), options.certify);
  out.inconclusive = cert.inconclusive;
  out.certified = cert.lone_axis;
  if (!out.certified) return out;
  const auto m = transition_matrix(cert.map);
  out.norm = norm(cert.map);
  out.lambda = cert.lambda;
  out.matrix_key = matrix_key(m);
  out.charpoly = poly_key(char_poly(m));
  if (options.classes) out.u_set = unmarked_representatives(cert.map, &cert);
  return out;
}

std::vector<int> partition_by_u_sets(const std::vector<WordOutcome>& words) {
  const std::size_t n = words.size();
  std::vector<std::size_t> rank(n), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (std::size_t i = 0; i < n; ++i) sets.make_set(i);
  std::unordered_map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < n; ++i) {
    if (!words[i].certified) continue;
    for (const auto& u : words[i].u_set) {
      auto [it, inserted] = owner.emplace(u, i);
      if (!inserted) sets.union_set(it->second, i);
    }
  }
  std::vector<int> cls(n, -1);
  std::map<std::size_t, int> ids;
  for (std::size_t i = 0; i < n; ++i) {
    if (!words[i].certified) continue;
    const auto root = sets.find_set(i);
    auto [it, inserted] = ids.emplace(root, static_cast<int>(ids.size()));
    cls[i] = it->second;
  }
  return cls;
}

std::vector<int> partition_pairwise(const std::vector<WordOutcome>& words) {
  const std::size_t n = words.size();
  auto meets = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    for (const auto& x : a)
      for (const auto& y : b)
        if (x == y) return true;
    return false;
  };
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (words[i].certified && words[j].certified && meets(words[i].u_set, words[j].u_set)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  std::vector<int> cls(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!words[s].certified || cls[s] >= 0) continue;
    std::queue<std::size_t> q;
    q.push(s);
    cls[s] = next;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      for (auto u : adj[v])
        if (cls[u] < 0) {
          cls[u] = next;
          q.push(u);
        }
    }
    ++next;
  }
  return cls;
}

CensusRow summarize(int r, int n, const std::vector<WordOutcome>& words, double tol, bool classes) {
  CensusRow row;
  row.rank = r;
  row.n = n;
  row.tested = static_cast<long>(words.size());
  row.composition_bound =
      static_cast<long>(std::llround(boost::math::binomial_coefficient<double>(n + r - 2, r - 2)));
  std::set<std::string> matrices, polys;
  std::vector<double> lambdas;
  for (const auto& w : words) {
    if (w.inconclusive) ++row.inconclusive;
    if (!w.certified) continue;
    ++row.certified;
    matrices.insert(w.matrix_key);
    polys.insert(w.charpoly);
    lambdas.push_back(w.lambda);
    row.max_norm = std::max(row.max_norm, w.norm);
    row.max_log_lambda = std::max(row.max_log_lambda, std::log(w.lambda));
    row.max_u_size = std::max(row.max_u_size, static_cast<long>(w.u_set.size()));
    if (static_cast<long>(w.u_set.size()) > w.norm) row.u_bound_ok = false;
  }
  row.distinct_matrices = static_cast<long>(matrices.size());
  row.distinct_charpolys = static_cast<long>(polys.size());
  row.lambda_buckets = count_buckets(lambdas, tol);
  if (classes && row.certified > 0) {
    const auto cls = partition_by_u_sets(words);
    std::map<int, std::string> reps;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (cls[i] < 0) continue;
      const auto s = word_string(words[i].inner);
      auto [it, inserted] = reps.emplace(cls[i], s);
      if (!inserted && s < it->second) it->second = s;
    }
    row.classes = static_cast<long>(reps.size());
    for (const auto& [id, s] : reps) row.representatives.push_back(s);
    std::sort(row.representatives.begin(), row.representatives.end());
    row.class_lower_bound =
        static_cast<double>(row.certified) / (static_cast<double>((1L << r) * factorial(r)) * row.max_norm);
    row.bound_ok = row.classes >= row.class_lower_bound;
  }
  return row;
}

std::vector<Word> census_words(int r, int n, const CensusOptions& options, bool& partial) {
  partial = false;
  std::vector<Word> words;
  if (options.sample) {
    words = sample_full_words(r, n, options.count, options.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n));
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
  } else {
    words = enumerate_full_words(r, n);
  }
  if (static_cast<long>(words.size()) > options.budget) {
    words.resize(options.budget);
    partial = true;
  }
  return words;
}

std::vector<CensusRow> run_census(const CensusOptions& options) {
  if (options.rank < 3) throw PreconditionError("census needs rank >= 3");
  if (options.len_min < 1 || options.len_max < options.len_min) throw PreconditionError("census: bad length range");
  std::vector<CensusRow> rows;
  for (int n = options.len_min; n <= options.len_max; ++n) {
    bool partial = false;
    const auto words = census_words(options.rank, n, options, partial);
    std::vector<WordOutcome> outcomes;
    outcomes.reserve(words.size());
    for (const auto& z : words) outcomes.push_back(examine_word(options.rank, z, options));
    auto row = summarize(options.rank, n, outcomes, options.tol, options.classes);
    row.partial = partial;
    rows.push_back(std::move(row));
  }
  return rows;
}

UpperResult run_upper(int rank, int budget, double tol, long max_maps) {
  if (rank < 1) throw PreconditionError("upper: rank must be positive");
  UpperResult res;
  res.rank = rank;
  res.budget = budget;
  std::map<int, UpperBucket> buckets;
  std::vector<EdgePath> images(rank, EdgePath(rank));

  auto visit = [&]() {
    if (++res.enumerated > max_maps) throw PreconditionError("upper: enumeration budget exceeded");
    const RoseMap g(rank, images);
    if (!is_expanding(g) || !is_irreducible(g)) return;
    ++res.expanding_irreducible;
    const auto m = transition_matrix(g);
    const double lambda = is_primitive(m) ? pf_eigenvalue(m).lambda : spectral_radius_irreducible(m);
    const double k = rank;
    const double bound = k * std::pow(lambda + tol, k + 1);
    const double worst = static_cast<double>(m.maxCoeff());
    if (worst > bound) res.bound_ok = false;
    const double ratio = worst / (k * std::pow(lambda, k + 1));
    const int bucket = static_cast<int>(std::ceil(std::log(lambda) - 1e-12));
    auto& b = buckets[bucket];
    b.log_bucket = bucket;
    ++b.count;
    b.worst_ratio = std::max(b.worst_ratio, ratio);
    res.worst_ratio = std::max(res.worst_ratio, ratio);
  };

  // Images are filled one letter at a time; `remaining` is the norm still available.
  std::function<void(int, int)> fill = [&](int edge, int remaining) {
    if (edge == rank) {
      visit();
      return;
    }
    const int reserve = rank - edge - 1;  // later edges need at least one letter each
    auto extend = [&](auto&& self, int left) -> void {
      if (!images[edge].empty()) fill(edge + 1, left);
      if (left - reserve <= 0) return;
      for (int i = 1; i <= rank; ++i) {
        images[edge].push_back(OrientedEdge{i, false});
        self(self, left - 1);
        images[edge].pop_back();
      }
    };
    extend(extend, remaining);
  };
  fill(0, budget);
  for (const auto& [k, b] : buckets) res.buckets.push_back(b);
  return res;
}

EntropyEstimate estimate_entropy(const std::vector<EntropyPoint>& points) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : points)
    if (p.log_omega > 0) xy.emplace_back(p.t, std::log(p.log_omega));
  if (xy.size() < 3) throw PreconditionError("entropy: need at least 3 points with omega > 1");
  EntropyEstimate e;
  e.points = static_cast<int>(xy.size());
  double sx = 0, sy = 0;
  e.t_min = xy.front().first;
  e.t_max = xy.front().first;
  for (const auto& [x, y] : xy) {
    sx += x;
    sy += y;
    e.t_min = std::min(e.t_min, x);
    e.t_max = std::max(e.t_max, x);
  }
  const double mx = sx / xy.size(), my = sy / xy.size();
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw PreconditionError("entropy: all points share the same t");
  e.log_b = sxy / sxx;
  e.intercept = my - e.log_b * mx;
  e.b = std::exp(e.log_b);
  e.a = std::exp(std::exp(e.intercept));
  double ss = 0;
  for (const auto& [x, y] : xy) {
    const double d = y - (e.intercept + e.log_b * x);
    ss += d * d;
  }
  e.rms_residual = std::sqrt(ss / xy.size());
  return e;
}

std::vector<EntropyPoint> synthetic_entropy_points(double a, double b, double t0, double t1, double step) {
  std::vector<EntropyPoint> out;
  for (double t = t0; t <= t1 + 1e-12; t += step) out.push_back({t, std::pow(b, t) * std::log(a)});
  return out;
}

std::vector<EntropyPoint> entropy_points(const std::vector<CensusRow>& rows, EntropyAxis axis) {
  std::vector<EntropyPoint> out;
  for (const auto& row : rows) {
    if (row.classes < 2) continue;
    const double t = axis == EntropyAxis::log_lambda ? row.max_log_lambda : std::log(static_cast<double>(row.n));
    out.push_back({t, std::log(static_cast<double>(row.classes))});
  }
  return out;
}

}  // namespace ttrose
