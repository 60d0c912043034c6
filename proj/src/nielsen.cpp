#include "ttrose/nielsen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <memory>

#include "ttrose/error.hpp"
#include "ttrose/spectral.hpp"
#include "ttrose/turns.hpp"

namespace ttrose {
namespace {

using Letters = std::vector<OrientedEdge>;

std::vector<Letters> image_table(const RoseMap& g) {
  std::vector<Letters> table(2 * g.rank());
  for (int c = 0; c < 2 * g.rank(); ++c) table[c] = g.image(OrientedEdge::from_code(c)).letters();
  return table;
}

std::size_t common_prefix(const Letters& a, const Letters& b) {
  const auto n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

/// For each last edge x of a half (read outward from the vertex), the edges e
/// that may follow it: the turn {reverse(x), e} must lie in `allowed`.
std::vector<Letters> continuation_table(int rank, const TurnSet& allowed) {
  std::vector<Letters> table(2 * rank);
  for (int x = 0; x < 2 * rank; ++x)
    for (int e = 0; e < 2 * rank; ++e) {
      const Turn t(OrientedEdge::from_code(x).inverse(), OrientedEdge::from_code(e));
      if (!t.degenerate() && allowed.count(t)) table[x].push_back(OrientedEdge::from_code(e));
    }
  return table;
}

void check_search_preconditions(const RoseMap& g) {
  if (!is_train_track(g)) throw PreconditionError("Nielsen path search needs a train track map");
  if (!is_expanding(g)) throw PreconditionError("Nielsen path search needs an expanding map");
  if (!is_irreducible(g)) throw PreconditionError("Nielsen path search needs an irreducible map");
}

/// Random access into the images of g^p without materializing them.
class PowerImages {
 public:
  PowerImages(const RoseMap& g, int p) : p_(p), table_(image_table(g)) {
    const int r = g.rank();
    lengths_.assign(p + 1, std::vector<long>(r, 1));
    offsets_.assign(p + 1, std::vector<std::vector<long>>(r));
    for (int q = 1; q <= p; ++q)
      for (int i = 0; i < r; ++i) {
        long total = 0;
        for (const auto e : table_[2 * i]) {
          offsets_[q][i].push_back(total);
          total += lengths_[q - 1][e.index - 1];
        }
        lengths_[q][i] = total;
      }
  }

  long size(OrientedEdge e) const { return lengths_[p_][e.index - 1]; }
  long size(OrientedEdge e, int q) const { return lengths_[q][e.index - 1]; }
  const Letters& children(OrientedEdge e) const { return table_[e.code()]; }

  OrientedEdge at(OrientedEdge e, long pos) const {
    bool invert = false;
    for (int q = p_; q > 0; --q) {
      if (e.inverted) {
        pos = lengths_[q][e.index - 1] - 1 - pos;
        e = e.inverse();
        invert = !invert;
      }
      const auto& offs = offsets_[q][e.index - 1];
      const auto j = static_cast<std::size_t>(std::upper_bound(offs.begin(), offs.end(), pos) - offs.begin()) - 1;
      pos -= offs[j];
      e = table_[e.code()][j];
    }
    return invert ? e.inverse() : e;
  }

 private:
  int p_;
  std::vector<Letters> table_;
  std::vector<std::vector<long>> lengths_;
  std::vector<std::vector<std::vector<long>>> offsets_;
};

/// One legal half of a candidate; its image under g^p is the concatenation
/// of the images of its edges, ending at the recorded cumulative offsets.
struct Half {
  /// Block of g^level(e) still to be compared against the other half.
  struct Block {
    int level;
    OrientedEdge e;
  };

  Letters edges;
  std::vector<long> ends;
  double length = 0.0;
  std::deque<Block> pending;

  long image_size() const { return ends.empty() ? 0 : ends.back(); }
};

class UnfoldingSearch {
 public:
  UnfoldingSearch(const RoseMap& g, int period, int max_depth, double tol)
      : period_(period), tol_(tol), rank_(g.rank()), images_(g, period) {
    check_search_preconditions(g);
    lengths_ = eigen_lengths(g);
    lambda_g_ = pf_eigenvalue(transition_matrix(g)).lambda;
    lambda_ = std::pow(lambda_g_, period);
    // For an irreducible train track map, T(g^p) is the union of Dg^k(T(g))
    // over k < p, and T_infinity(g^p) is its closure under Dg^p.
    const DirectionMap dg = direction_map(g);
    DirectionMap dk = DirectionMap::identity(g.rank());
    TurnSet taken;
    const TurnSet base = taken_turns(g);
    for (int k = 0; k < period; ++k) {
      for (const auto& t : base) taken.insert(dk(t));
      dk = dg.after(dk);
    }
    big_direction_ = dk;
    TurnSet closure = taken;
    std::vector<Turn> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<Turn> next;
      for (const auto& t : frontier)
        if (closure.insert(big_direction_(t)).second) next.push_back(big_direction_(t));
      frontier = std::move(next);
    }
    continuations_ = continuation_table(g.rank(), closure);
    if (max_depth <= 0) {
      long longest = 0;
      for (int i = 1; i <= g.rank(); ++i) longest = std::max(longest, images_.size(OrientedEdge{i, false}));
      max_depth = static_cast<int>(std::min<long>(4L * g.rank() * longest, 1L << 30));
    }
    max_depth_ = max_depth;
  }

  UnfoldingResult run(const RoseMap& g) {
    UnfoldingResult result;
    result.period = period_;
    bool any_inconclusive = false;
    for (const auto& seed : prenull_turns(big_direction_)) {
      inconclusive_ = false;
      branches_ = 0;
      const auto before = found_.size();
      Half a, b;
      push(a, seed.first);
      push(b, seed.second);
      seed_ = seed;
      grow(std::move(a), std::move(b), 0, 0.0);
      SeedOutcome outcome{seed, SearchStatus::certified_empty, branches_};
      if (found_.size() > before) {
        outcome.status = SearchStatus::found;
      } else if (inconclusive_) {
        outcome.status = SearchStatus::inconclusive;
        any_inconclusive = true;
      }
      result.seeds.push_back(outcome);
    }
    std::vector<INPCandidate> confirmed;
    for (auto& c : found_)
      if (recheck_inp(g, c, tol_)) confirmed.push_back(std::move(c));
    result.inps = std::move(confirmed);
    if (!result.inps.empty()) {
      result.status = SearchStatus::found;
    } else {
      result.status = any_inconclusive ? SearchStatus::inconclusive : SearchStatus::certified_empty;
    }
    return result;
  }

 private:
  double len(OrientedEdge e) const { return lengths_[e.index - 1]; }

  OrientedEdge letter(const Half& h, long pos) const {
    const auto it = std::upper_bound(h.ends.begin(), h.ends.end(), pos);
    const auto idx = static_cast<std::size_t>(it - h.ends.begin());
    const long offset = pos - (idx == 0 ? 0 : h.ends[idx - 1]);
    return images_.at(h.edges[idx], offset);
  }

  void expand(Half& h) const {
    const auto [level, e] = h.pending.front();
    h.pending.pop_front();
    const auto& kids = images_.children(e);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) h.pending.push_front({level - 1, *it});
  }

  // Consumes the common prefix of the pending blocks of a and b, skipping
  // identical blocks whole. Returns true if the halves diverge.
  bool consume_common(Half& a, Half& b, long& c, double& tau_length) const {
    while (!a.pending.empty() && !b.pending.empty()) {
      const auto x = a.pending.front(), y = b.pending.front();
      if (x.level == y.level && x.e == y.e) {
        a.pending.pop_front();
        b.pending.pop_front();
        c += images_.size(x.e, x.level);
        tau_length += std::pow(lambda_g_, x.level) * len(x.e);
        continue;
      }
      if (x.level == 0 && y.level == 0) return true;
      if (x.level >= y.level) expand(a);
      if (y.level >= x.level && y.level > 0 && !(x.level > y.level)) expand(b);
    }
    return false;
  }

  void push(Half& h, OrientedEdge e) const {
    h.edges.push_back(e);
    h.ends.push_back(h.image_size() + images_.size(e));
    h.length += len(e);
    h.pending.push_back({period_, e});
  }

  bool over_depth(std::size_t edges) {
    if (edges > static_cast<std::size_t>(max_depth_)) {
      inconclusive_ = true;
      return true;
    }
    return false;
  }

  // Before divergence: the half whose image is swallowed by the common prefix
  // must contain more edges.
  void grow(Half a, Half b, long c, double tau_length) {
    ++branches_;
    if (over_depth(a.edges.size() + b.edges.size())) return;
    if (consume_common(a, b, c, tau_length)) {
      diverged(a, b, c, tau_length);
      return;
    }
    const bool extend_a = a.pending.empty() && (!b.pending.empty() || a.image_size() <= b.image_size());
    for (const auto e : continuations_[(extend_a ? a : b).edges.back().code()]) {
      Half na = a, nb = b;
      push(extend_a ? na : nb, e);
      grow(std::move(na), std::move(nb), c, tau_length);
    }
  }

  void diverged(Half& a, Half& b, long c, double tau_length) {
    const double target = tau_length / (lambda_ - 1.0);
    std::vector<std::pair<Letters, double>> ends_a, ends_b;
    complete(a, c, target, ends_a);
    if (ends_a.empty()) return;
    complete(b, c, target, ends_b);
    if (ends_b.empty()) return;
    Letters tau;
    for (long i = 0; i < c; ++i) tau.push_back(letter(a, i));
    for (const auto& [ea, ta] : ends_a)
      for (const auto& [eb, tb] : ends_b) {
        INPCandidate cand;
        cand.rho1 = EdgePath(rank_, ea);
        cand.rho2 = EdgePath(rank_, eb);
        cand.fraction1 = ta;
        cand.fraction2 = tb;
        cand.base_turn = seed_;
        cand.cancelled = EdgePath(rank_, tau);
        cand.period = period_;
        found_.push_back(std::move(cand));
      }
  }

  // After divergence: the half must read itself right after tau in its own
  // image, and stop where its eigenlength reaches `target`.
  void complete(Half& h, long c, double target, std::vector<std::pair<Letters, double>>& out,
                long checked = 0) {
    ++branches_;
    const long n = static_cast<long>(h.edges.size());
    for (long j = checked; j < n && c + j < h.image_size(); ++j)
      if (letter(h, c + j) != h.edges[j]) return;
    const long verified = std::max(checked, std::min(n, h.image_size() - c));
    const double eps = tol_ * std::max(1.0, target);
    const double last = len(h.edges.back());
    const double before_last = h.length - last;
    if (before_last >= target - eps) return;
    if (h.length >= target - eps) {
      if (c + n > h.image_size()) return;
      const double t = std::clamp((target - before_last) / last, 0.0, 1.0);
      out.emplace_back(h.edges, t);
      return;
    }
    if (over_depth(h.edges.size())) return;
    const long next_pos = c + n;
    const bool forced = next_pos < h.image_size();
    const OrientedEdge want = forced ? letter(h, next_pos) : OrientedEdge{};
    for (const auto e : continuations_[h.edges.back().code()]) {
      if (forced && e != want) continue;
      push(h, e);
      complete(h, c, target, out, verified);
      h.pending.pop_back();
      h.length -= len(h.edges.back());
      h.edges.pop_back();
      h.ends.pop_back();
    }
  }

  int period_;
  double tol_;
  int rank_;
  PowerImages images_;
  DirectionMap big_direction_;
  Eigen::VectorXd lengths_;
  double lambda_g_ = 1.0;
  double lambda_ = 1.0;
  std::vector<Letters> continuations_;
  int max_depth_ = 0;
  bool inconclusive_ = false;
  long branches_ = 0;
  Turn seed_;
  std::vector<INPCandidate> found_;
};

// ---------------------------------------------------------------------------
// Factorization propagation

struct PropagationNode {
  ForcedEdge via;  // edge whose addition created this node (side 0 at the root)
  bool died = false;
  bool survived = false;
  int stage = 0;  // death stage, or stage at which an extension was needed
  std::optional<Turn> frontier;
  std::vector<std::unique_ptr<PropagationNode>> children;
};

class Propagation {
 public:
  Propagation(const std::vector<RoseMap>& factors, int max_periods, int max_depth)
      : factors_(factors), max_periods_(max_periods), max_depth_(max_depth) {
    if (factors_.empty()) throw PreconditionError("factorization certifier: no factors");
    const int r = factors_.front().rank();
    for (const auto& h : factors_) {
      if (h.rank() != r) throw PreconditionError("factorization certifier: rank mismatch");
      if (!h.is_positive()) throw PreconditionError("factorization certifier: factor is not positive");
    }
    full_ = compose_all(factors_);
    check_search_preconditions(full_);
    illegal_ = illegal_turns(full_);
    if (illegal_.size() != 1) {
      throw PreconditionError("factorization certifier: composition must have exactly one illegal turn, found " +
                              std::to_string(illegal_.size()));
    }
    continuations_ = continuation_table(r, t_infinity(full_));
    for (const auto& h : factors_) tables_.push_back(image_table(h));
    const std::size_t n = factors_.size();
    tails_.assign(n + 1, DirectionMap::identity(r));
    for (std::size_t i = n; i-- > 0;) tails_[i] = tails_[i + 1].after(direction_map(factors_[i]));
    // tails_[i] = D(h_n . ... . h_{i+1}) after i factors of a period.
  }

  FactorizationOutcome run() {
    FactorizationOutcome out;
    auto& cert = out.certificate;
    cert.method = CertificateMethod::factorization_propagation;
    cert.period_uniform = true;
    const Turn seed = *illegal_.begin();
    Letters a{seed.first}, b{seed.second};
    TraceStep s0;
    s0.kind = TraceStep::Kind::seed;
    s0.rho1 = path(a);
    s0.rho2 = path(b);
    s0.frontier = seed;
    trace_.push_back(s0);
    auto root = explore(a, b, ForcedEdge{});
    cert.trace = std::move(trace_);
    out.certified = !survivor_;
    if (survivor_) out.surviving_candidate = survivor_;

    cert.forced_prefix = {ForcedEdge{1, seed.first}, ForcedEdge{2, seed.second}};
    const PropagationNode* node = root.get();
    // A child refuted at the very stage its parent had to extend is pruned
    // locally; the forced prefix follows the unique child that is not.
    while (true) {
      const PropagationNode* only = nullptr;
      int live = 0;
      for (const auto& ch : node->children)
        if (!(ch->died && ch->children.empty() && ch->stage == node->stage)) {
          ++live;
          only = ch.get();
        }
      if (live != 1) break;
      cert.forced_prefix.push_back(only->via);
      node = only;
    }
    if (node->frontier) cert.contradiction_stage = first_uncollapsing_factor(node->stage, *node->frontier);
    return out;
  }

 private:
  EdgePath path(const Letters& w) const { return EdgePath(full_.rank(), w); }

  // 1-based index of the first factor after `stage` that does not send the
  // frontier to a degenerate turn.
  int first_uncollapsing_factor(int stage, Turn t) const {
    const std::size_t n = factors_.size();
    for (int k = stage + 1; k <= stage + static_cast<int>(n); ++k) {
      const Turn next = direction_map(factors_[(k - 1) % n])(t);
      if (!next.degenerate()) return k;
      t = next;
    }
    return 0;
  }

  Letters apply(std::size_t factor, const Letters& w) const {
    Letters out;
    for (const auto e : w) {
      const auto& img = tables_[factor][e.code()];
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  std::unique_ptr<PropagationNode> explore(Letters& a, Letters& b, ForcedEdge via) {
    auto node = std::make_unique<PropagationNode>();
    node->via = via;
    if (static_cast<int>(a.size() + b.size()) > max_depth_) {
      node->survived = true;
      if (!survivor_) survivor_ = {path(a), path(b)};
      return node;
    }
    const std::size_t n = factors_.size();
    Letters p1 = a, p2 = b;
    for (int stage = 1; stage <= static_cast<int>(n) * max_periods_; ++stage) {
      const std::size_t factor = (stage - 1) % n;
      p1 = apply(factor, p1);
      p2 = apply(factor, p2);
      const auto c = common_prefix(p1, p2);
      if (c == p1.size() || c == p2.size()) {
        node->stage = stage;
        const int side = p1.size() <= p2.size() ? 1 : 2;
        Letters& ext = side == 1 ? a : b;
        for (const auto e : continuations_[ext.back().code()]) {
          ext.push_back(e);
          TraceStep st;
          st.kind = TraceStep::Kind::extend;
          st.stage = stage;
          st.side = side;
          st.edge = e;
          st.rho1 = path(a);
          st.rho2 = path(b);
          trace_.push_back(st);
          node->children.push_back(explore(a, b, ForcedEdge{side, e}));
          ext.pop_back();
        }
        node->died = std::none_of(node->children.begin(), node->children.end(),
                                  [](const auto& ch) { return ch->survived; });
        node->survived = !node->died;
        return node;
      }
      const Turn frontier(p1[c], p2[c]);
      const Turn image = tails_[factor + 1](frontier);
      if (!image.degenerate() && !illegal_.count(image)) {
        TraceStep st;
        st.kind = TraceStep::Kind::dead_end;
        st.stage = stage;
        st.rho1 = path(a);
        st.rho2 = path(b);
        st.frontier = frontier;
        st.frontier_image = image;
        trace_.push_back(st);
        node->died = true;
        node->stage = stage;
        node->frontier = frontier;
        return node;
      }
    }
    node->survived = true;
    if (!survivor_) survivor_ = {path(a), path(b)};
    return node;
  }

  const std::vector<RoseMap>& factors_;
  int max_periods_;
  int max_depth_;
  RoseMap full_;
  TurnSet illegal_;
  std::vector<Letters> continuations_;
  std::vector<std::vector<Letters>> tables_;
  std::vector<DirectionMap> tails_;
  std::vector<TraceStep> trace_;
  std::optional<std::pair<EdgePath, EdgePath>> survivor_;
};

}  // namespace

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::certified_empty: return "certified-empty";
    case SearchStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(CertificateMethod m) {
  return m == CertificateMethod::unfolding_search ? "unfolding-search" : "factorization-propagation";
}

Eigen::VectorXd eigen_lengths(const RoseMap& g) {
  return pf_eigenvalue(transition_matrix(g)).right_eigenvector;
}

UnfoldingResult unfolding_inp_search(const RoseMap& g, int period, int max_depth, double tol) {
  if (period < 1) throw PreconditionError("unfolding search: period must be >= 1");
  UnfoldingSearch search(g, period, max_depth, tol);
  return search.run(g);
}

bool recheck_inp(const RoseMap& g, const INPCandidate& inp, double tol) {
  if (inp.rho1.empty() || inp.rho2.empty()) return false;
  if (inp.base_turn.degenerate() || is_legal(inp.base_turn, g)) return false;
  if (Turn(inp.rho1.front(), inp.rho2.front()) != inp.base_turn) return false;
  const RoseMap big = power(g, inp.period);
  const auto lengths = eigen_lengths(g);
  const double lambda = std::pow(pf_eigenvalue(transition_matrix(g)).lambda, inp.period);
  const EdgePath q1 = apply_untightened(big, inp.rho1);
  const EdgePath q2 = apply_untightened(big, inp.rho2);
  const EdgePath reduced = tighten(reverse(q1) * q2);
  const std::size_t total = q1.size() + q2.size();
  if ((total - reduced.size()) % 2 != 0) return false;
  const std::size_t cancelled = (total - reduced.size()) / 2;
  if (cancelled == 0 || cancelled >= q1.size() || cancelled >= q2.size()) return false;
  const std::size_t split = q1.size() - cancelled;
  if (split < inp.rho1.size() || reduced.size() - split < inp.rho2.size()) return false;
  for (std::size_t j = 0; j < inp.rho1.size(); ++j)
    if (reduced[split - 1 - j].inverse() != inp.rho1[j]) return false;
  for (std::size_t j = 0; j < inp.rho2.size(); ++j)
    if (reduced[split + j] != inp.rho2[j]) return false;
  auto partial_length = [&](const EdgePath& p, double fraction) {
    double s = 0;
    for (const auto& e : p.letters()) s += lengths[e.index - 1];
    return s - (1.0 - fraction) * lengths[p.back().index - 1];
  };
  double tau = 0;
  for (std::size_t i = 0; i < cancelled; ++i) tau += lengths[q1[i].index - 1];
  const double l1 = partial_length(inp.rho1, inp.fraction1);
  const double l2 = partial_length(inp.rho2, inp.fraction2);
  const double scale = std::max(1.0, lambda * std::max(l1, l2));
  return std::abs(lambda * l1 - tau - l1) <= tol * scale && std::abs(lambda * l2 - tau - l2) <= tol * scale;
}

FactorizationOutcome factorization_pnp_certifier(const std::vector<RoseMap>& factors, int max_periods,
                                                 int max_depth) {
  Propagation prop(factors, max_periods, max_depth);
  return prop.run();
}

bool replay_factorization_trace(const std::vector<RoseMap>& factors, const PNPFreeCertificate& certificate) {
  if (certificate.method != CertificateMethod::factorization_propagation) return false;
  const RoseMap full = compose_all(factors);
  const auto illegal = illegal_turns(full);
  const std::size_t n = factors.size();
  bool any = false;
  for (const auto& step : certificate.trace) {
    if (step.kind != TraceStep::Kind::dead_end) continue;
    any = true;
    EdgePath p1 = step.rho1, p2 = step.rho2;
    for (int s = 1; s <= step.stage; ++s) {
      p1 = apply_untightened(factors[(s - 1) % n], p1);
      p2 = apply_untightened(factors[(s - 1) % n], p2);
    }
    std::size_t c = 0;
    while (c < p1.size() && c < p2.size() && p1[c] == p2[c]) ++c;
    if (c == p1.size() || c == p2.size()) return false;
    const Turn frontier(p1[c], p2[c]);
    if (!step.frontier || frontier != *step.frontier) return false;
    // Remaining factors of the current period, applied to the frontier turn.
    DirectionMap tail = DirectionMap::identity(full.rank());
    for (std::size_t k = (step.stage - 1) % n + 1; k < n; ++k) tail = direction_map(factors[k]).after(tail);
    const Turn image = tail(frontier);
    if (step.frontier_image && image != *step.frontier_image) return false;
    if (image.degenerate() || illegal.count(image)) return false;
  }
  return any;
}

PNPOutcome certify_pnp_free(const RoseMap& g, const PNPOptions& options) {
  PNPOutcome out;
  std::optional<PNPFreeCertificate> factorization;
  if (options.factors) {
    try {
      auto fo = factorization_pnp_certifier(*options.factors);
      if (fo.certified) factorization = std::move(fo.certificate);
    } catch (const PreconditionError&) {
      // Not a positive factorization with a unique illegal turn; fall back.
    }
  }
  if (factorization && !options.cross_check) {
    out.pnp_free = true;
    out.certificate = std::move(factorization);
    return out;
  }
  PNPFreeCertificate unfolding;
  unfolding.method = CertificateMethod::unfolding_search;
  bool inconclusive = false;
  for (int p = 1; p <= options.max_period; ++p) {
    auto res = unfolding_inp_search(g, p, options.max_depth, options.tol);
    if (res.status == SearchStatus::found) {
      if (factorization) {
        throw Error("PNP certifiers disagree: factorization refuted all iNPs but the unfolding search found one");
      }
      out.pnp_free = false;
      out.counterexample = res.inps.front();
      return out;
    }
    if (res.status == SearchStatus::inconclusive) {
      inconclusive = true;
      continue;
    }
    unfolding.periods.push_back(p);
    for (const auto& seed : res.seeds) {
      TraceStep st;
      st.kind = TraceStep::Kind::dead_end;
      st.stage = p;
      st.frontier = seed.seed;
      unfolding.trace.push_back(st);
    }
  }
  if (factorization) {
    factorization->cross_check_agrees = !inconclusive;
    factorization->cross_check_periods = unfolding.periods;
    out.pnp_free = true;
    out.certificate = std::move(factorization);
    return out;
  }
  if (inconclusive) {
    throw InconclusiveError("PNP certification inconclusive: unfolding search exhausted its depth bound");
  }
  out.pnp_free = true;
  out.certificate = std::move(unfolding);
  return out;
}

}  // namespace ttrose
