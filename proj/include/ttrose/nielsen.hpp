#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ttrose/edge_path.hpp"
#include "ttrose/rose_map.hpp"

namespace ttrose {

/// Eigenmetric edge lengths: the PF right eigenvector of M(g), summing to 1.
/// With these lengths the image of every edge is exactly lambda times longer.
Eigen::VectorXd eigen_lengths(const RoseMap& g);

/// An indivisible Nielsen path rho = reverse(rho1) rho2 for g^period. Both
/// halves start at the vertex; the last edge of each may be partial, covering
/// the given eigenmetric fraction of that edge.
struct INPCandidate {
  EdgePath rho1;
  EdgePath rho2;
  double fraction1 = 1.0;
  double fraction2 = 1.0;
  Turn base_turn;
  /// Common prefix of the images of rho1 and rho2, cancelled when applying g^period.
  EdgePath cancelled;
  int period = 1;

  /// The full-edge path reverse(rho1) rho2.
  EdgePath path() const { return reverse(rho1) * rho2; }
};

enum class SearchStatus { found, certified_empty, inconclusive };

const char* to_string(SearchStatus s);

struct SeedOutcome {
  Turn seed;
  SearchStatus status = SearchStatus::certified_empty;
  long branches = 0;
};

struct UnfoldingResult {
  SearchStatus status = SearchStatus::certified_empty;
  int period = 1;
  std::vector<INPCandidate> inps;
  std::vector<SeedOutcome> seeds;
};

/// Exhaustive search for iNPs of g^period. Seeds are the prenull turns of
/// g^period. Each seed grows both legal halves edge by edge (turns restricted
/// to T_infinity) until their images diverge, which fixes the cancelled
/// segment tau; each half must then reproduce itself right after tau and end
/// where the eigenmetric fixed-point equation L(rho_i) = L(tau)/(lambda-1)
/// puts it. Candidates are confirmed with recheck_inp. A branch longer than
/// `max_depth` edges makes the result inconclusive (0 selects
/// 4 * r * max_e |g^period(e)|).
UnfoldingResult unfolding_inp_search(const RoseMap& g, int period, int max_depth = 0,
                                     double tol = 1e-9);

/// Independent confirmation: applies g^period to the full-edge path, tightens,
/// and checks that the halves reappear at the illegal turn with the
/// eigenmetric endpoint equation satisfied within tol.
bool recheck_inp(const RoseMap& g, const INPCandidate& inp, double tol = 1e-9);

enum class CertificateMethod { unfolding_search, factorization_propagation };

const char* to_string(CertificateMethod m);

/// One step of a machine-checkable refutation.
struct TraceStep {
  enum class Kind { seed, extend, dead_end } kind = Kind::seed;
  /// Number of factors applied when the step was taken (0 = before any).
  int stage = 0;
  /// 1 for rho1, 2 for rho2 (extend steps).
  int side = 0;
  OrientedEdge edge;
  EdgePath rho1;
  EdgePath rho2;
  /// Frontier turn at `stage` and its image under the remaining factors (dead ends).
  std::optional<Turn> frontier;
  std::optional<Turn> frontier_image;
};

struct ForcedEdge {
  int side = 0;
  OrientedEdge edge;
  friend bool operator==(const ForcedEdge&, const ForcedEdge&) = default;
};

struct PNPFreeCertificate {
  CertificateMethod method = CertificateMethod::unfolding_search;
  /// Periods covered. Empty with period_uniform = true for factorization certificates.
  std::vector<int> periods;
  bool period_uniform = false;
  std::vector<TraceStep> trace;
  /// Edges of rho1/rho2 forced before the contradiction (factorization only).
  std::vector<ForcedEdge> forced_prefix;
  int contradiction_stage = 0;
  /// Set when an unfolding cross-check also ran on the same map.
  std::optional<bool> cross_check_agrees;
  std::vector<int> cross_check_periods;
};

struct FactorizationOutcome {
  bool certified = false;
  PNPFreeCertificate certificate;
  /// Present when some branch survived every stage checked.
  std::optional<std::pair<EdgePath, EdgePath>> surviving_candidate;
};

/// Constraint propagation through a positive factorization f = h_n . ... . h_1
/// (`factors` in application order). A Nielsen path of any power of f starts
/// at the unique illegal turn of f; after each factor, the frontier turn of the
/// partially cancelled image must still be illegal for what remains. Branches
/// extend a half only when its image is swallowed by the cancellation, and
/// only through turns of T_infinity(f). If every branch dies the certificate
/// holds for all periods at once.
FactorizationOutcome factorization_pnp_certifier(const std::vector<RoseMap>& factors,
                                                 int max_periods = 2, int max_depth = 64);

/// Replays each dead-end step of a factorization trace and checks that the
/// recorded refutation is reproduced.
bool replay_factorization_trace(const std::vector<RoseMap>& factors,
                                const PNPFreeCertificate& certificate);

struct PNPOptions {
  /// Positive factorization of g, in application order, if known.
  std::optional<std::vector<RoseMap>> factors;
  /// Periods 1..max_period for the unfolding search.
  int max_period = 3;
  int max_depth = 0;
  double tol = 1e-9;
  /// Also run the unfolding search when the factorization certifier succeeds.
  bool cross_check = true;
};

struct PNPOutcome {
  bool pnp_free = false;
  std::optional<PNPFreeCertificate> certificate;
  std::optional<INPCandidate> counterexample;
};

/// Certifies absence of periodic Nielsen paths, or returns a found iNP.
/// Throws InconclusiveError when neither method decides.
PNPOutcome certify_pnp_free(const RoseMap& g, const PNPOptions& options = {});

}  // namespace ttrose
