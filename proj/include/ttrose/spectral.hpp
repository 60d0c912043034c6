#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace ttrose {

/// Nonnegative integer square matrix; entry (i,j) counts how often the image
/// of edge i crosses edge j.
using TransitionMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

using BigInt = boost::multiprecision::cpp_int;

struct SpectralResult {
  double lambda = 0.0;
  /// Half-width of the final Collatz-Wielandt bracket around lambda.
  double error_bound = 0.0;
  /// Positive right eigenvector, entries summing to 1.
  Eigen::VectorXd right_eigenvector;
  long iterations = 0;
};

namespace detail {

using BoolMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

inline BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  const Eigen::Index n = a.rows();
  BoolMatrix c = BoolMatrix::Zero(n, b.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      if (a(i, k))
        for (Eigen::Index j = 0; j < b.cols(); ++j) c(i, j) |= b(k, j);
  return c;
}

}  // namespace detail

/// Primitivity by the Wielandt exponent: M is primitive iff M^((k-1)^2+1) > 0.
/// Entries are clamped to {0,1}, so no overflow regardless of the scalar.
template <typename Derived>
bool is_primitive(const Eigen::MatrixBase<Derived>& m) {
  const Eigen::Index k = m.rows();
  if (k == 0 || m.cols() != k) return false;
  detail::BoolMatrix base = (m.array() > typename Derived::Scalar(0)).template cast<std::uint8_t>();
  long exponent = (k - 1) * (k - 1) + 1;
  detail::BoolMatrix acc = detail::BoolMatrix::Identity(k, k);
  while (exponent > 0) {
    if (exponent & 1) acc = detail::bool_product(acc, base);
    exponent >>= 1;
    if (exponent > 0) base = detail::bool_product(base, base);
  }
  return (acc.array() != 0).all();
}

/// Strong connectivity of the support digraph.
bool is_irreducible_matrix(const TransitionMatrix& m);

/// Primitivity as strong connectivity plus aperiodicity (gcd of cycle lengths 1).
bool is_primitive_by_cycles(const TransitionMatrix& m);

/// Dispatches to the Wielandt test for k <= 8 and the cycle test above that.
bool is_primitive_fast(const TransitionMatrix& m);

/// Power iteration with min/max Rayleigh-quotient bracketing. Throws
/// PreconditionError on non-primitive input and InconclusiveError when the
/// bracket does not close within `max_iterations`.
SpectralResult pf_eigenvalue(const TransitionMatrix& m, double tol = 1e-12,
                             long max_iterations = 1'000'000);

/// Spectral radius of an irreducible (possibly periodic) matrix, via the
/// primitive shift M + I.
double spectral_radius_irreducible(const TransitionMatrix& m, double tol = 1e-12);

/// Exact characteristic polynomial det(xI - M), coefficients from the leading
/// 1 down to the constant term. Division-free (Berkowitz), so it is exact for
/// any ring scalar.
template <typename Scalar = BigInt>
std::vector<Scalar> char_poly(const TransitionMatrix& m) {
  const Eigen::Index n = m.rows();
  auto at = [&](Eigen::Index i, Eigen::Index j) { return Scalar(m(i, j)); };
  std::vector<Scalar> poly{Scalar(1)};
  if (n == 0) return poly;
  poly.push_back(-at(0, 0));
  for (Eigen::Index r = 1; r < n; ++r) {
    // Leading block A (r x r), column S = A[0..r)[r], row R = A[r][0..r).
    std::vector<Scalar> toeplitz;
    toeplitz.reserve(r + 2);
    toeplitz.push_back(Scalar(1));
    toeplitz.push_back(-at(r, r));
    std::vector<Scalar> v(r);
    for (Eigen::Index i = 0; i < r; ++i) v[i] = at(i, r);
    for (Eigen::Index p = 0; p < r; ++p) {
      Scalar dot(0);
      for (Eigen::Index j = 0; j < r; ++j) dot += at(r, j) * v[j];
      toeplitz.push_back(-dot);
      std::vector<Scalar> next(r, Scalar(0));
      for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) next[i] += at(i, j) * v[j];
      v = std::move(next);
    }
    std::vector<Scalar> out(r + 2, Scalar(0));
    for (Eigen::Index i = 0; i < r + 2; ++i)
      for (Eigen::Index j = 0; j <= std::min<Eigen::Index>(i, r); ++j)
        out[i] += toeplitz[i - j] * poly[j];
    poly = std::move(out);
  }
  return poly;
}

std::int64_t max_row_sum(const TransitionMatrix& m);
std::int64_t min_row_sum(const TransitionMatrix& m);

}  // namespace ttrose
