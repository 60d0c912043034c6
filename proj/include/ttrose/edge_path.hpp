#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ttrose {

/// An oriented edge of the r-petaled rose: petal `index` (1-based) traversed
/// forward or backward. Since the rose has a single vertex, this is also
/// exactly the data of a direction at that vertex.
struct OrientedEdge {
  int index = 1;
  bool inverted = false;

  constexpr OrientedEdge inverse() const { return {index, !inverted}; }

  /// Dense code in [0, 2r): forward x_i -> 2(i-1), reverse -> 2(i-1)+1.
  constexpr int code() const { return 2 * (index - 1) + (inverted ? 1 : 0); }
  static constexpr OrientedEdge from_code(int c) { return {c / 2 + 1, (c & 1) != 0}; }

  /// Lexicographic on (index, orientation) with forward < reverse.
  auto operator<=>(const OrientedEdge&) const = default;
};

using Direction = OrientedEdge;

/// Letter encoding: a, b, c... are x_1, x_2, x_3 forward; A, B, C... reversed.
char to_char(OrientedEdge e);
OrientedEdge letter_from_char(char c, int rank);
std::string direction_name(Direction d);  // "x1", "X1" style used in reports

/// A turn is an unordered pair of directions, stored with first <= second.
struct Turn {
  Direction first;
  Direction second;

  Turn() = default;
  Turn(Direction a, Direction b) : first(a < b ? a : b), second(a < b ? b : a) {}

  bool degenerate() const { return first == second; }
  auto operator<=>(const Turn&) const = default;
};

using TurnSet = std::set<Turn>;

std::string to_string(const Turn& t);

/// A finite word in the oriented petals of the rank-r rose.
class EdgePath {
 public:
  EdgePath() = default;
  explicit EdgePath(int rank, std::vector<OrientedEdge> letters = {});

  /// Parses a whitespace-free letter string such as "aCb".
  static EdgePath parse(int rank, std::string_view text);

  int rank() const { return rank_; }
  const std::vector<OrientedEdge>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const OrientedEdge& operator[](std::size_t i) const { return letters_[i]; }
  const OrientedEdge& front() const { return letters_.front(); }
  const OrientedEdge& back() const { return letters_.back(); }

  void push_back(OrientedEdge e) { letters_.push_back(e); }
  void pop_back() { letters_.pop_back(); }
  void append(const EdgePath& other);

  /// True when no letter is immediately followed by its inverse.
  bool is_tight() const;
  bool is_positive() const;

  std::string str() const;

  friend bool operator==(const EdgePath& a, const EdgePath& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }
  friend auto operator<=>(const EdgePath& a, const EdgePath& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  int rank_ = 0;
  std::vector<OrientedEdge> letters_;
};

EdgePath operator*(const EdgePath& a, const EdgePath& b);

EdgePath reverse(const EdgePath& p);

/// Free reduction.
EdgePath tighten(const EdgePath& p);

/// The turns {reverse(e_i), e_{i+1}} crossed at interior vertices of p.
TurnSet turns_of(const EdgePath& p);

}  // namespace ttrose
