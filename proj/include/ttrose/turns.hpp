#pragma once

#include <set>
#include <vector>

#include "ttrose/edge_path.hpp"
#include "ttrose/rose_map.hpp"

namespace ttrose {

/// Turns crossed by some edge image g(e).
TurnSet taken_turns(const RoseMap& g);

/// Least fixed point of S -> T(g) u Dg(S); equals the union of T(g^k) over k >= 1
/// for train track maps.
TurnSet t_infinity(const RoseMap& g);

/// Taken turns of h_n . ... . h_1 assembled from the factors alone:
/// T(h_n) together with D(h_n . ... . h_{k+1})(T(h_k)) for k < n.
/// `factors` is in application order (factors[0] = h_1). Throws
/// PreconditionError when a factor is not positive or when feeding one factor's
/// images through the next (cyclically) would cancel.
TurnSet combined_taken_turns(const std::vector<RoseMap>& factors);

/// A turn is illegal when some iterate of Dg makes it degenerate.
bool is_legal(const Turn& turn, const RoseMap& g);
bool is_legal(const Turn& turn, const DirectionMap& dg);

/// Nondegenerate turns that Dg makes degenerate.
TurnSet prenull_turns(const RoseMap& g);
TurnSet prenull_turns(const DirectionMap& dg);

/// Every nondegenerate illegal turn.
TurnSet illegal_turns(const RoseMap& g);

/// Directions on cycles of the direction map.
std::set<Direction> periodic_directions(const RoseMap& g);

/// Every turn of the rank-r rose, degenerate ones included.
TurnSet all_turns(int rank);

}  // namespace ttrose
