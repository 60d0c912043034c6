#include "ttrose/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "ttrose/error.hpp"

namespace ttrose {
namespace {

std::vector<int> bfs_levels(const TransitionMatrix& m, bool transpose) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> level(n, -1);
  std::queue<int> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      const auto w = transpose ? m(v, u) : m(u, v);
      if (w > 0 && level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      }
    }
  }
  return level;
}

}  // namespace

bool is_irreducible_matrix(const TransitionMatrix& m) {
  if (m.rows() == 0) return false;
  auto fwd = bfs_levels(m, false);
  auto bwd = bfs_levels(m, true);
  return std::none_of(fwd.begin(), fwd.end(), [](int l) { return l < 0; }) &&
         std::none_of(bwd.begin(), bwd.end(), [](int l) { return l < 0; });
}

bool is_primitive_by_cycles(const TransitionMatrix& m) {
  if (!is_irreducible_matrix(m)) return false;
  // For a strongly connected digraph the period is gcd over arcs u->v of
  // level(u) + 1 - level(v), with BFS levels from any root.
  auto level = bfs_levels(m, false);
  long period = 0;
  for (Eigen::Index u = 0; u < m.rows(); ++u)
    for (Eigen::Index v = 0; v < m.cols(); ++v)
      if (m(u, v) > 0) period = std::gcd(period, std::labs(level[u] + 1L - level[v]));
  return period == 1;
}

bool is_primitive_fast(const TransitionMatrix& m) {
  return m.rows() > 8 ? is_primitive_by_cycles(m) : is_primitive(m);
}

std::int64_t max_row_sum(const TransitionMatrix& m) { return m.rowwise().sum().maxCoeff(); }
std::int64_t min_row_sum(const TransitionMatrix& m) { return m.rowwise().sum().minCoeff(); }

SpectralResult pf_eigenvalue(const TransitionMatrix& m, double tol, long max_iterations) {
  if (!(tol > 0)) throw PreconditionError("pf_eigenvalue: tolerance must be positive");
  if (!is_primitive_fast(m)) {
    throw PreconditionError("pf_eigenvalue: matrix is not primitive (check is_primitive first)");
  }
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const Eigen::MatrixX<long double> a = m.cast<long double>();
  const Eigen::Index k = m.rows();
  Vec x = Vec::Constant(k, 1.0L / static_cast<long double>(k));
  long double lo = 0, hi = 0;
  for (long it = 1; it <= max_iterations; ++it) {
    Vec y = a * x;
    lo = (y.array() / x.array()).minCoeff();
    hi = (y.array() / x.array()).maxCoeff();
    x = y / y.sum();
    if (hi - lo <= static_cast<long double>(tol)) {
      SpectralResult out;
      out.lambda = static_cast<double>((lo + hi) / 2);
      out.error_bound = static_cast<double>((hi - lo) / 2);
      out.right_eigenvector = x.cast<double>();
      out.iterations = it;
      // The Collatz-Wielandt bracket never exceeds the row-sum bound.
      out.lambda = std::min(out.lambda, static_cast<double>(max_row_sum(m)));
      return out;
    }
  }
  std::ostringstream msg;
  msg << "pf_eigenvalue: no convergence after " << max_iterations << " iterations, bracket ["
      << static_cast<double>(lo) << ", " << static_cast<double>(hi) << "]";
  throw InconclusiveError(msg.str());
}

double spectral_radius_irreducible(const TransitionMatrix& m, double tol) {
  if (!is_irreducible_matrix(m)) {
    throw PreconditionError("spectral_radius_irreducible: matrix is reducible");
  }
  TransitionMatrix shifted = m + TransitionMatrix::Identity(m.rows(), m.cols());
  return pf_eigenvalue(shifted, tol).lambda - 1.0;
}

}  // namespace ttrose
