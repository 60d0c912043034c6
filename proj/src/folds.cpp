#include "ttrose/folds.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "ttrose/error.hpp"
#include "ttrose/family.hpp"

namespace ttrose {
namespace {

EdgePath slice(const EdgePath& p, std::size_t from, std::size_t to) {
  return EdgePath(p.rank(), std::vector<OrientedEdge>(p.letters().begin() + from, p.letters().begin() + to));
}

GraphPath invert(const GraphPath& p) {
  GraphPath out;
  out.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(it->inverse());
  return out;
}

GraphPath substitute(const GraphPath& path, int id, const GraphPath& image) {
  GraphPath out;
  out.reserve(path.size() + image.size());
  for (const auto& e : path) {
    if (e.id != id) {
      out.push_back(e);
    } else if (!e.inverted) {
      out.insert(out.end(), image.begin(), image.end());
    } else {
      const auto inv = invert(image);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return out;
}

GraphPath apply_step(GraphPath path, const FoldStep& step) {
  for (const auto& [id, image] : step.substitutions) path = substitute(path, id, image);
  return path;
}

class Folder {
 public:
  Folder(const RoseMap& g, FoldGranularity granularity) : graph_(LabeledGraph::from_map(g)), granularity_(granularity) {
    seq_.rank = g.rank();
  }

  FoldSequence run() {
    record();
    while (fold_once()) record();
    finish();
    return std::move(seq_);
  }

 private:
  struct Germ {
    GraphEdge edge;
    int letter;
  };

  int start(GraphEdge e) const { return e.inverted ? graph_.edges[e.id].head : graph_.edges[e.id].tail; }
  int end(GraphEdge e) const { return e.inverted ? graph_.edges[e.id].tail : graph_.edges[e.id].head; }

  EdgePath read(GraphEdge e) const {
    const auto& label = graph_.edges[e.id].label;
    return e.inverted ? reverse(label) : label;
  }

  bool fold_once() {
    std::vector<std::vector<Germ>> germs(graph_.vertex_alive.size());
    for (int id : graph_.alive_edges()) {
      const auto& e = graph_.edges[id];
      germs[e.tail].push_back({GraphEdge{id, false}, e.label.front().code()});
      germs[e.head].push_back({GraphEdge{id, true}, e.label.back().inverse().code()});
    }
    for (std::size_t v = 0; v < germs.size(); ++v) {
      auto& gs = germs[v];
      std::sort(gs.begin(), gs.end(), [](const Germ& a, const Germ& b) {
        return std::tie(a.letter, a.edge.id, a.edge.inverted) < std::tie(b.letter, b.edge.id, b.edge.inverted);
      });
      for (std::size_t i = 0; i + 1 < gs.size(); ++i)
        if (gs[i].letter == gs[i + 1].letter) {
          fold(static_cast<int>(v), gs[i].edge, gs[i + 1].edge);
          return true;
        }
    }
    return false;
  }

  // Cuts the initial k letters (read from the germ's start) into their own edge.
  GraphEdge split(GraphEdge g, std::size_t k, FoldStep& step) {
    const std::size_t n = graph_.edges[g.id].label.size();
    if (k == n) return g;
    const int u = static_cast<int>(graph_.vertex_alive.size());
    graph_.vertex_alive.push_back(true);
    const auto old = graph_.edges[g.id];
    const std::size_t cut = g.inverted ? n - k : k;
    const int first = static_cast<int>(graph_.edges.size());
    graph_.edges.push_back({old.tail, u, slice(old.label, 0, cut), true});
    graph_.edges.push_back({u, old.head, slice(old.label, cut, n), true});
    graph_.edges[g.id].alive = false;
    step.substitutions.push_back({g.id, {GraphEdge{first, false}, GraphEdge{first + 1, false}}});
    split_first_ = first;
    return g.inverted ? GraphEdge{first + 1, true} : GraphEdge{first, false};
  }

  void fold(int v, GraphEdge a, GraphEdge b) {
    FoldStep step;
    step.vertex = v;
    step.germ_a = a;
    step.germ_b = b;
    const auto ra = read(a), rb = read(b);
    std::size_t k = 0;
    while (k < ra.size() && k < rb.size() && ra[k] == rb[k]) ++k;
    if (granularity_ == FoldGranularity::single_letter) k = std::min<std::size_t>(k, 1);
    step.length = static_cast<int>(k);
    split_first_ = -1;
    const GraphEdge pa = split(a, k, step);
    if (b.id == a.id && split_first_ >= 0) b = b.inverted ? GraphEdge{split_first_ + 1, true} : GraphEdge{split_first_, false};
    const GraphEdge pb = split(b, k, step);
    const int wa = end(pa), wb = end(pb);
    if (wa == wb) throw PreconditionError("folding two edges with equal endpoints: map is not a homotopy equivalence");
    for (int id : graph_.alive_edges()) {
      auto& e = graph_.edges[id];
      if (e.tail == wb) e.tail = wa;
      if (e.head == wb) e.head = wa;
    }
    graph_.vertex_alive[wb] = false;
    if (graph_.basepoint == wb) graph_.basepoint = wa;
    graph_.edges[pb.id].alive = false;
    step.substitutions.push_back({pb.id, {pb.inverted ? pa.inverse() : pa}});
    seq_.steps.push_back(std::move(step));
  }

  void record() {
    long total = 0;
    for (int id : graph_.alive_edges()) total += static_cast<long>(graph_.edges[id].label.size());
    seq_.label_lengths.push_back(total);
    seq_.vertex_counts.push_back(graph_.vertex_count());
    int maxval = 0;
    for (std::size_t v = 0; v < graph_.vertex_alive.size(); ++v)
      if (graph_.vertex_alive[v]) maxval = std::max(maxval, graph_.valence(static_cast<int>(v)));
    seq_.max_valences.push_back(maxval);
    if (graph_.is_rose()) {
      seq_.rose_indices.push_back(static_cast<int>(seq_.steps.size()));
      seq_.rose_edges.push_back(graph_.alive_edges());
    }
  }

  void finish() {
    const auto alive = graph_.alive_edges();
    std::vector<bool> used(graph_.rank + 1, false);
    bool ok = graph_.is_rose() && static_cast<int>(alive.size()) == graph_.rank;
    for (int id : alive) {
      const auto& label = graph_.edges[id].label;
      if (!ok || label.size() != 1 || used[label[0].index]) {
        ok = false;
        break;
      }
      used[label[0].index] = true;
      seq_.homeomorphism.emplace_back(id, label[0]);
    }
    if (!ok) throw PreconditionError("folded graph is not a rose homeomorphic to the target: not a homotopy equivalence");
  }

  LabeledGraph graph_;
  FoldGranularity granularity_;
  FoldSequence seq_;
  int split_first_ = -1;
};

std::string compact(const RoseMap& g) {
  std::string s;
  for (const auto& img : g.images()) {
    s += img.str();
    s += ',';
  }
  return s;
}

}  // namespace

LabeledGraph LabeledGraph::from_map(const RoseMap& g) {
  LabeledGraph lg;
  lg.rank = g.rank();
  lg.vertex_alive = {true};
  for (const auto& img : g.images()) lg.edges.push_back({0, 0, img, true});
  return lg;
}

int LabeledGraph::vertex_count() const {
  return static_cast<int>(std::count(vertex_alive.begin(), vertex_alive.end(), true));
}

int LabeledGraph::edge_count() const { return static_cast<int>(alive_edges().size()); }

std::vector<int> LabeledGraph::alive_edges() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].alive) out.push_back(static_cast<int>(i));
  return out;
}

int LabeledGraph::valence(int v) const {
  int n = 0;
  for (const auto& e : edges) {
    if (!e.alive) continue;
    n += (e.tail == v) + (e.head == v);
  }
  return n;
}

FoldSequence stallings_decomposition(const RoseMap& g, FoldGranularity granularity) {
  Folder folder(g, granularity);
  return folder.run();
}

RoseMap replay(const FoldSequence& seq) {
  std::unordered_map<int, OrientedEdge> h(seq.homeomorphism.begin(), seq.homeomorphism.end());
  std::vector<EdgePath> images;
  for (int i = 0; i < seq.rank; ++i) {
    GraphPath p{GraphEdge{i, false}};
    for (const auto& step : seq.steps) p = apply_step(std::move(p), step);
    EdgePath img(seq.rank);
    for (const auto& e : p) {
      const auto letter = h.at(e.id);
      img.push_back(e.inverted ? letter.inverse() : letter);
    }
    images.push_back(std::move(img));
  }
  return RoseMap(seq.rank, std::move(images));
}

RoseMap first_return_map(const FoldSequence& seq, std::size_t which) {
  const int t = seq.rose_indices.at(which);
  const auto& edges = seq.rose_edges.at(which);
  std::unordered_map<int, int> position;
  for (std::size_t j = 0; j < edges.size(); ++j) position[edges[j]] = static_cast<int>(j);
  std::unordered_map<int, OrientedEdge> h(seq.homeomorphism.begin(), seq.homeomorphism.end());

  // Folds before the point carry each original petal to a path in the rose at t.
  std::vector<GraphPath> before(seq.rank);
  for (int i = 0; i < seq.rank; ++i) {
    GraphPath p{GraphEdge{i, false}};
    for (int s = 0; s < t; ++s) p = apply_step(std::move(p), seq.steps[s]);
    before[i] = std::move(p);
  }
  auto to_letters = [&](const GraphPath& p) {
    EdgePath out(seq.rank);
    for (const auto& e : p) out.push_back(OrientedEdge{position.at(e.id) + 1, e.inverted});
    return out;
  };

  std::vector<EdgePath> images;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    GraphPath p{GraphEdge{edges[j], false}};
    for (std::size_t s = t; s < seq.steps.size(); ++s) p = apply_step(std::move(p), seq.steps[s]);
    EdgePath img(seq.rank);
    for (const auto& e : p) {
      OrientedEdge letter = h.at(e.id);
      if (e.inverted) letter = letter.inverse();
      EdgePath piece = to_letters(before[letter.index - 1]);
      img.append(letter.inverted ? reverse(piece) : piece);
    }
    images.push_back(tighten(img));
  }
  return RoseMap(seq.rank, std::move(images));
}

std::vector<SignedPermutation> signed_permutations(int rank) {
  std::vector<SignedPermutation> out;
  std::vector<int> perm(rank);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (int mask = 0; mask < (1 << rank); ++mask) {
      SignedPermutation q{perm, std::vector<bool>(rank)};
      for (int i = 0; i < rank; ++i) q.flip[i] = (mask >> i) & 1;
      out.push_back(std::move(q));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

RoseMap conjugate(const RoseMap& g, const SignedPermutation& q) {
  const int r = g.rank();
  if (static_cast<int>(q.perm.size()) != r) throw PreconditionError("conjugate: rank mismatch");
  // q^{-1} on letters, indexed by code.
  std::vector<OrientedEdge> qinv(2 * r);
  for (int i = 0; i < r; ++i) {
    const OrientedEdge target{q.perm[i], false};
    const OrientedEdge source{i + 1, static_cast<bool>(q.flip[i])};
    qinv[target.code()] = source;
    qinv[target.inverse().code()] = source.inverse();
  }
  std::vector<EdgePath> images;
  for (int i = 0; i < r; ++i) {
    EdgePath inner = g.image(q.perm[i]);
    if (q.flip[i]) inner = reverse(inner);
    EdgePath img(r);
    for (const auto& e : inner.letters()) img.push_back(qinv[e.code()]);
    images.push_back(std::move(img));
  }
  return RoseMap(r, std::move(images));
}

std::string canonical_form(const RoseMap& g) {
  // Same order as comparing compact(conjugate(g, q)) strings, but each
  // candidate is abandoned at its first character above the best so far.
  const int r = g.rank();
  std::string best = compact(g);
  std::string cand;
  std::vector<OrientedEdge> qinv(2 * r);
  for (const auto& q : signed_permutations(r)) {
    for (int i = 0; i < r; ++i) {
      const OrientedEdge target{q.perm[i], false};
      const OrientedEdge source{i + 1, static_cast<bool>(q.flip[i])};
      qinv[target.code()] = source;
      qinv[target.inverse().code()] = source.inverse();
    }
    cand.clear();
    bool less = false, worse = false;
    auto put = [&](char c) {
      if (!less) {
        const std::size_t k = cand.size();
        if (k >= best.size() || c > best[k]) {
          worse = true;
          return;
        }
        if (c < best[k]) less = true;
      }
      cand.push_back(c);
    };
    for (int i = 0; i < r && !worse; ++i) {
      const auto& letters = g.image(q.perm[i]).letters();
      const std::size_t n = letters.size();
      for (std::size_t j = 0; j < n && !worse; ++j) {
        const auto e = q.flip[i] ? letters[n - 1 - j].inverse() : letters[j];
        put(to_char(qinv[e.code()]));
      }
      if (!worse) put(',');
    }
    if (!worse && (less || cand.size() < best.size())) best = std::move(cand);
  }
  return best;
}

bool unmarked_equivalent(const RoseMap& f, const RoseMap& f2) {
  if (f.rank() != f2.rank()) throw PreconditionError("unmarked_equivalent: rank mismatch");
  return canonical_form(f) == canonical_form(f2);
}

std::vector<std::string> unmarked_representatives(const RoseMap& g, const Certificate* certificate) {
  if (!certificate) throw PreconditionError("unmarked representatives need a lone-axis certificate");
  if (!certificate->lone_axis) throw PreconditionError("unmarked representatives: certificate has no lone-axis verdict");
  if (!(certificate->map == g)) throw PreconditionError("unmarked representatives: certificate is for a different map");
  const auto seq = stallings_decomposition(g);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < seq.rose_indices.size(); ++i) out.push_back(canonical_form(first_return_map(seq, i)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ttrose
