#include "ttrose/turns.hpp"

#include "ttrose/error.hpp"

namespace ttrose {

TurnSet taken_turns(const RoseMap& g) {
  TurnSet out;
  for (const auto& img : g.images()) out.merge(turns_of(img));
  return out;
}

TurnSet t_infinity(const RoseMap& g) {
  const auto dg = direction_map(g);
  TurnSet closure = taken_turns(g);
  std::vector<Turn> frontier(closure.begin(), closure.end());
  while (!frontier.empty()) {
    std::vector<Turn> next;
    for (const auto& t : frontier) {
      const Turn image = dg(t);
      if (closure.insert(image).second) next.push_back(image);
    }
    frontier = std::move(next);
  }
  return closure;
}

TurnSet combined_taken_turns(const std::vector<RoseMap>& factors) {
  if (factors.empty()) throw PreconditionError("combined_taken_turns: no factors");
  const int r = factors.front().rank();
  const std::size_t n = factors.size();
  for (const auto& h : factors) {
    if (h.rank() != r) throw PreconditionError("combined_taken_turns: rank mismatch");
    if (!h.is_positive()) throw PreconditionError("combined_taken_turns: factor is not positive");
  }
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    const auto& cur = factors[i];
    const auto& nxt = factors[(i + 1) % n];
    for (const auto& img : cur.images()) {
      if (!apply_untightened(nxt, img).is_tight()) {
        throw PreconditionError("combined_taken_turns: cancellation between consecutive factors");
      }
    }
  }
  // tails[k] = D(h_n . ... . h_{k+1}), built right to left.
  std::vector<DirectionMap> tails(n, DirectionMap::identity(r));
  for (std::size_t k = n - 1; k-- > 0;) tails[k] = tails[k + 1].after(direction_map(factors[k + 1]));
  TurnSet out = taken_turns(factors.back());
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (const auto& t : taken_turns(factors[k])) out.insert(tails[k](t));
  return out;
}

bool is_legal(const Turn& turn, const DirectionMap& dg) {
  std::set<Turn> seen;
  Turn t = turn;
  while (seen.insert(t).second) {
    if (t.degenerate()) return false;
    t = dg(t);
  }
  return true;
}

bool is_legal(const Turn& turn, const RoseMap& g) { return is_legal(turn, direction_map(g)); }

TurnSet prenull_turns(const DirectionMap& dg) {
  TurnSet out;
  const int r = dg.rank();
  for (int a = 0; a < 2 * r; ++a)
    for (int b = a + 1; b < 2 * r; ++b) {
      const auto da = Direction::from_code(a);
      const auto db = Direction::from_code(b);
      if (dg(da) == dg(db)) out.emplace(da, db);
    }
  return out;
}

TurnSet prenull_turns(const RoseMap& g) { return prenull_turns(direction_map(g)); }

TurnSet illegal_turns(const RoseMap& g) {
  const auto dg = direction_map(g);
  TurnSet out;
  for (const auto& t : all_turns(g.rank()))
    if (!t.degenerate() && !is_legal(t, dg)) out.insert(t);
  return out;
}

std::set<Direction> periodic_directions(const RoseMap& g) {
  const auto dg = direction_map(g);
  const int n = 2 * g.rank();
  std::set<Direction> out;
  for (int c = 0; c < n; ++c) {
    const auto d = Direction::from_code(c);
    Direction cur = d;
    for (int step = 0; step < n; ++step) {
      cur = dg(cur);
      if (cur == d) {
        out.insert(d);
        break;
      }
    }
  }
  return out;
}

TurnSet all_turns(int rank) {
  TurnSet out;
  for (int a = 0; a < 2 * rank; ++a)
    for (int b = a; b < 2 * rank; ++b) out.emplace(Direction::from_code(a), Direction::from_code(b));
  return out;
}

}  // namespace ttrose
