#include "ttrose/whitehead.hpp"

#include <map>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>
#include <boost/graph/connected_components.hpp>

#include "ttrose/error.hpp"
#include "ttrose/turns.hpp"

namespace ttrose {
namespace {

using UGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

struct Indexed {
  UGraph graph;
  std::vector<Direction> names;
};

Indexed to_boost(const WhiteheadGraph& g) {
  Indexed out;
  std::map<Direction, std::size_t> index;
  for (const auto& d : g.vertices) {
    index[d] = out.names.size();
    out.names.push_back(d);
  }
  out.graph = UGraph(out.names.size());
  for (const auto& t : g.edges) boost::add_edge(index.at(t.first), index.at(t.second), out.graph);
  return out;
}

void require_map_preconditions(const RoseMap& g) {
  if (!is_train_track(g)) throw PreconditionError("Whitehead graph: map is not a train track map");
  if (!is_expanding(g)) throw PreconditionError("Whitehead graph: map is not expanding");
  if (!is_irreducible(g)) throw PreconditionError("Whitehead graph: map is not irreducible");
}

}  // namespace

const char* to_string(WhiteheadKind k) {
  switch (k) {
    case WhiteheadKind::local: return "local";
    case WhiteheadKind::stable: return "stable";
    case WhiteheadKind::ideal: return "ideal";
  }
  return "?";
}

WhiteheadGraph local_whitehead_graph(const RoseMap& g) {
  require_map_preconditions(g);
  WhiteheadGraph lw;
  lw.rank = g.rank();
  lw.kind = WhiteheadKind::local;
  for (int c = 0; c < 2 * g.rank(); ++c) lw.vertices.insert(Direction::from_code(c));
  for (const auto& t : t_infinity(g))
    if (!t.degenerate()) lw.edges.insert(t);
  return lw;
}

WhiteheadGraph stable_whitehead_graph(const RoseMap& g) {
  WhiteheadGraph sw = local_whitehead_graph(g);
  sw.kind = WhiteheadKind::stable;
  sw.vertices = periodic_directions(g);
  std::erase_if(sw.edges, [&](const Turn& t) { return !sw.vertices.count(t.first) || !sw.vertices.count(t.second); });
  return sw;
}

WhiteheadGraph ideal_whitehead_graph(const RoseMap& g, const PNPFreeCertificate* certificate) {
  if (!certificate) throw PreconditionError("ideal Whitehead graph needs a PNP-free certificate");
  WhiteheadGraph iw = stable_whitehead_graph(g);
  iw.kind = WhiteheadKind::ideal;
  return iw;
}

boost::rational<long> rotationless_index(const WhiteheadGraph& graph) {
  return boost::rational<long>(1) - boost::rational<long>(static_cast<long>(graph.vertices.size()), 2);
}

int component_count(const WhiteheadGraph& graph) {
  if (graph.vertices.empty()) return 0;
  auto ix = to_boost(graph);
  std::vector<int> comp(ix.names.size());
  return boost::connected_components(ix.graph, comp.data());
}

bool is_connected(const WhiteheadGraph& graph) { return component_count(graph) == 1; }

std::set<Direction> cut_vertices(const WhiteheadGraph& graph) {
  auto ix = to_boost(graph);
  std::vector<std::size_t> points;
  boost::articulation_points(ix.graph, std::back_inserter(points));
  std::set<Direction> out;
  for (auto v : points) out.insert(ix.names[v]);
  return out;
}

WhiteheadGraph complete_bipartite(int rank, const std::set<Direction>& left, const std::set<Direction>& right,
                                  WhiteheadKind kind) {
  WhiteheadGraph g;
  g.rank = rank;
  g.kind = kind;
  g.vertices = left;
  g.vertices.insert(right.begin(), right.end());
  for (const auto& a : left)
    for (const auto& b : right) g.edges.insert(Turn(a, b));
  return g;
}

std::string to_dot(const WhiteheadGraph& graph) {
  std::ostringstream os;
  os << "graph " << to_string(graph.kind) << "_whitehead {\n";
  for (const auto& v : graph.vertices) os << "  \"" << direction_name(v) << "\";\n";
  for (const auto& t : graph.edges)
    os << "  \"" << direction_name(t.first) << "\" -- \"" << direction_name(t.second) << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace ttrose
