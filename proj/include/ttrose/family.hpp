#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ttrose/nielsen.hpp"
#include "ttrose/rose_map.hpp"
#include "ttrose/whitehead.hpp"

namespace ttrose {

/// Positive word in x_2..x_r, stored as subscripts.
using Word = std::vector<int>;

Word parse_word(std::string_view digits);
std::string word_string(const Word& w);

/// g_k for k in 1..12; g_{k+6} repeats g_k.
RoseMap gen_elementary(int r, int k);

/// g_{12,1} = g_12 . ... . g_1
RoseMap gen_g12_1(int r);

/// x_k -> x_{k+1} for k < r, x_r -> x_1 w. Each precondition violation is named.
RoseMap gen_gw(int r, const Word& w);

bool is_full(int r, const Word& w);

/// Full words of length n in x_2..x_r, in lexicographic order.
std::vector<Word> enumerate_full_words(int r, int n);

/// Uniform positive words of length n with non-full ones rejected; with
/// replacement, deterministic per seed. Returns fewer than `count` words only
/// if `max_tries` draws are exhausted.
std::vector<Word> sample_full_words(int r, int n, int count, std::uint64_t seed, long max_tries = 10'000'000);

/// x_{r-1} z x_2
Word wrap_word(int r, const Word& z);

/// f_w = g_w . g_{12,1}
RoseMap build_family_map(int r, const Word& w);

/// The 13 factors g_1, ..., g_12, g_w in application order.
std::vector<RoseMap> family_factors(int r, const Word& w);

/// True iff the cyclic words x_1 w and x_1 w' differ.
bool distinct_outer_classes(const Word& w, const Word& w2);

/// Checks the prenull turns of g_2, g_3, g_4, g_5, g_7 and D(g_{12,1}) for
/// rank r; throws Error if the generator indexing is inconsistent with them.
void family_self_check(int r);

struct Certificate {
  int rank = 0;
  std::optional<Word> word;
  RoseMap map;

  bool train_track = false;
  bool expanding = false;
  bool irreducible = false;
  bool primitive = false;
  bool lw_connected = false;
  bool pnp_free = false;
  bool cut_vertex_free = false;
  bool inconclusive = false;
  std::string inconclusive_reason;

  double lambda = 0.0;
  std::optional<WhiteheadGraph> local;
  std::optional<WhiteheadGraph> stable;
  std::optional<WhiteheadGraph> ideal;
  std::optional<boost::rational<long>> index;
  std::optional<PNPFreeCertificate> pnp_certificate;
  std::optional<INPCandidate> inp;

  /// FIC hypotheses other than PNP-freeness.
  bool fic_hypotheses = false;
  bool ageometric_fully_irreducible = false;
  bool lone_axis = false;
};

struct CertifyOptions {
  int max_period = 3;
  double tol = 1e-9;
  bool cross_check = true;
  /// Unfolding branch depth; 0 picks the default.
  int max_depth = 0;
};

/// Generic pipeline for any rose map; `factors` (application order) enables
/// the factorization certifier.
Certificate certify_map(const RoseMap& g, const std::optional<std::vector<RoseMap>>& factors = std::nullopt,
                        const CertifyOptions& options = {});

/// Family pipeline for f_w.
Certificate certify(int r, const Word& w, const CertifyOptions& options = {});

}  // namespace ttrose
