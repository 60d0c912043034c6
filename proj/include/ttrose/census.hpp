#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ttrose/family.hpp"

namespace ttrose {

struct CensusOptions {
  int rank = 3;
  int len_min = 5;
  int len_max = 5;
  bool sample = false;
  int count = 200;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  /// Maximum number of words examined per length; extra words are dropped and the row flagged partial.
  long budget = 20000;
  /// Skip U-sets and class counting (spectrum only).
  bool classes = true;
  CertifyOptions certify;
};

/// Per-word outcome retained by the census.
struct WordOutcome {
  Word inner;
  bool certified = false;
  bool inconclusive = false;
  long norm = 0;
  double lambda = 0.0;
  std::string matrix_key;
  std::string charpoly;
  std::vector<std::string> u_set;
};

struct CensusRow {
  int rank = 3;
  int n = 0;
  long tested = 0;
  long certified = 0;
  long inconclusive = 0;
  long distinct_matrices = 0;
  long distinct_charpolys = 0;
  long lambda_buckets = 0;
  /// Number of letter-count compositions of n, the bound on distinct matrices.
  long composition_bound = 0;
  long classes = 0;
  double max_log_lambda = 0.0;
  long max_norm = 0;
  long max_u_size = 0;
  bool u_bound_ok = true;
  /// certified / (2^r r! max norm)
  double class_lower_bound = 0.0;
  bool bound_ok = true;
  bool partial = false;
  /// One inner word per class, sorted.
  std::vector<std::string> representatives;
};

WordOutcome examine_word(int r, const Word& z, const CensusOptions& options);

/// Union-find over U-set intersections; returns a class id per outcome (-1 if uncertified).
std::vector<int> partition_by_u_sets(const std::vector<WordOutcome>& words);

/// Same partition computed by explicit pairwise intersection tests and graph search.
std::vector<int> partition_pairwise(const std::vector<WordOutcome>& words);

CensusRow summarize(int r, int n, const std::vector<WordOutcome>& words, double tol, bool classes);

std::vector<Word> census_words(int r, int n, const CensusOptions& options, bool& partial);

std::vector<CensusRow> run_census(const CensusOptions& options);

struct UpperBucket {
  int log_bucket = 0;  // ceil(log lambda)
  long count = 0;
  double worst_ratio = 0.0;  // max m_ij / (k lambda^{k+1})
};

struct UpperResult {
  int rank = 2;
  int budget = 0;
  long enumerated = 0;
  long expanding_irreducible = 0;
  bool bound_ok = true;
  double worst_ratio = 0.0;
  std::vector<UpperBucket> buckets;
};

/// All positive rose maps with norm <= budget, filtered to expanding irreducible ones.
UpperResult run_upper(int rank, int budget, double tol = 1e-9, long max_maps = 20'000'000);

struct EntropyPoint {
  double t = 0.0;
  double log_omega = 0.0;
};

struct EntropyEstimate {
  int points = 0;
  double t_min = 0.0;
  double t_max = 0.0;
  /// Slope of log log omega against t: principal entropy proxy log b.
  double log_b = 0.0;
  double b = 0.0;
  /// Intercept log log a: secondary entropy proxy a = exp(exp(intercept)).
  double intercept = 0.0;
  double a = 0.0;
  double rms_residual = 0.0;
};

EntropyEstimate estimate_entropy(const std::vector<EntropyPoint>& points);

/// log omega(t) for omega = a^(b^t).
std::vector<EntropyPoint> synthetic_entropy_points(double a, double b, double t0, double t1, double step = 1.0);

enum class EntropyAxis { log_lambda, log_length };

std::vector<EntropyPoint> entropy_points(const std::vector<CensusRow>& rows, EntropyAxis axis);

}  // namespace ttrose
