#pragma once

// Independent reference implementations used only by the tests. None of these
// call into the library code they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Free reduction of a word over a, A, b, B, ... deleting cancelling pairs in a
// random order until none remain.
inline std::string tighten_any_order(std::string w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto cancels = [](char x, char y) { return x != y && (x ^ 0x20) == y; };
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (cancels(w[i], w[i + 1])) spots.push_back(i);
    if (spots.empty()) return w;
    const auto i = spots[rng() % spots.size()];
    w.erase(i, 2);
  }
}

// Largest real root of the characteristic polynomial of m by bisection on
// [0, max row sum]. x lies at or above every root with real part >= x exactly
// when the Taylor coefficients of the polynomial at x are all nonnegative; for
// a primitive matrix that happens precisely for x >= lambda.
inline double pf_root(const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& m, double tol) {
  const long n = m.rows();
  // Faddeev-LeVerrier in long double: coefficients c_0 = 1, ..., c_n of x^n + c_1 x^{n-1} + ...
  using LD = long double;
  Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic> a = m.cast<LD>();
  Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic> mk = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  std::vector<LD> c(n + 1, 0);
  c[0] = 1;
  for (long k = 1; k <= n; ++k) {
    mk = a * mk + c[k - 1] * Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n);
    c[k] = -(a * mk).trace() / static_cast<LD>(k);
  }
  // p(x) = sum_k c[k] x^{n-k}; highest degree first.
  auto above_all_roots = [&](LD x) {
    std::vector<LD> p(c.begin(), c.end());
    // Repeated synthetic division gives the Taylor coefficients at x.
    for (long k = 0; k <= n; ++k) {
      for (long i = 1; i <= n - k; ++i) p[i] += p[i - 1] * x;
      if (p[n - k] < 0) return false;
    }
    return true;
  };
  LD lo = 0, hi = 0;
  for (long i = 0; i < n; ++i) hi = std::max(hi, static_cast<LD>(m.row(i).sum()));
  hi += 1;
  while (hi - lo > tol / 8) {
    const LD mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    (above_all_roots(mid) ? hi : lo) = mid;
  }
  return static_cast<double>((lo + hi) / 2);
}

// Vertices whose removal increases the number of connected components,
// found by deleting each vertex in turn.
template <typename V>
std::set<V> cut_vertices(const std::set<V>& vertices, const std::vector<std::pair<V, V>>& edges) {
  auto components = [&](const V* removed) {
    std::map<V, std::vector<V>> adj;
    for (const auto& v : vertices)
      if (!removed || v != *removed) adj[v];
    for (const auto& [a, b] : edges) {
      if (removed && (a == *removed || b == *removed)) continue;
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::set<V> seen;
    int count = 0;
    for (const auto& [v, _] : adj) {
      if (seen.count(v)) continue;
      ++count;
      std::queue<V> q;
      q.push(v);
      seen.insert(v);
      while (!q.empty()) {
        const V u = q.front();
        q.pop();
        for (const auto& x : adj[u])
          if (seen.insert(x).second) q.push(x);
      }
    }
    return count;
  };
  const int base = components(nullptr);
  std::set<V> out;
  for (const auto& v : vertices)
    if (components(&v) > base) out.insert(v);
  return out;
}

// Full-word test straight from the definition, on digit strings.
inline bool is_full(int r, const std::string& w) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) seen.insert(w.substr(i, 2));
  for (int i = 2; i <= r; ++i)
    for (int j = 2; j <= r; ++j)
      if (!seen.count(std::string{char('0' + i), char('0' + j)})) return false;
  return true;
}

// All words of length n over digits 2..r, in lexicographic order.
inline std::vector<std::string> all_words(int r, int n) {
  std::vector<std::string> out{""};
  for (int k = 0; k < n; ++k) {
    std::vector<std::string> next;
    for (const auto& w : out)
      for (int d = 2; d <= r; ++d) next.push_back(w + char('0' + d));
    out = std::move(next);
  }
  return out;
}

}  // namespace oracle
