#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ttrose/edge_path.hpp"
#include "ttrose/nielsen.hpp"
#include "ttrose/rose_map.hpp"

namespace ttrose {

enum class WhiteheadKind { local, stable, ideal };

const char* to_string(WhiteheadKind k);

struct WhiteheadGraph {
  int rank = 0;
  WhiteheadKind kind = WhiteheadKind::local;
  std::set<Direction> vertices;
  TurnSet edges;

  friend bool operator==(const WhiteheadGraph&, const WhiteheadGraph&) = default;
};

/// LW(g): every direction, with the turns of T_infinity(g) as edges.
WhiteheadGraph local_whitehead_graph(const RoseMap& g);

/// SW(g): LW(g) restricted to periodic directions.
WhiteheadGraph stable_whitehead_graph(const RoseMap& g);

/// IW(phi), available only when g carries a PNP-free certificate, in which
/// case it coincides with SW(g).
WhiteheadGraph ideal_whitehead_graph(const RoseMap& g, const PNPFreeCertificate* certificate);

boost::rational<long> rotationless_index(const WhiteheadGraph& graph);

bool is_connected(const WhiteheadGraph& graph);

int component_count(const WhiteheadGraph& graph);

std::set<Direction> cut_vertices(const WhiteheadGraph& graph);

/// Complete bipartite graph on the given two vertex sets.
WhiteheadGraph complete_bipartite(int rank, const std::set<Direction>& left, const std::set<Direction>& right,
                                  WhiteheadKind kind);

std::string to_dot(const WhiteheadGraph& graph);

}  // namespace ttrose
