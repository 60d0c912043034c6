#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttrose/edge_path.hpp"
#include "ttrose/spectral.hpp"

namespace ttrose {

/// A graph self-map of the r-rose, given by the tight, nonempty image of each
/// positive petal.
class RoseMap {
 public:
  RoseMap() = default;
  /// Validates the invariants and throws PreconditionError on violation.
  RoseMap(int rank, std::vector<EdgePath> images);

  static RoseMap identity(int rank);

  /// Parses the map file format:
  ///   rank: <r>
  ///   <letter> -> <path>
  /// one line per positive petal. Errors name the offending line.
  static RoseMap parse(std::string_view text);

  /// Inverse of parse, byte for byte.
  std::string serialize() const;

  int rank() const { return rank_; }
  const std::vector<EdgePath>& images() const { return images_; }
  /// Image of petal x_index (1-based).
  const EdgePath& image(int index) const { return images_[index - 1]; }
  /// Image of an oriented edge (reversed image for a reversed edge).
  EdgePath image(OrientedEdge e) const;

  bool is_positive() const;

  friend bool operator==(const RoseMap& a, const RoseMap& b) {
    return a.rank_ == b.rank_ && a.images_ == b.images_;
  }

 private:
  int rank_ = 0;
  std::vector<EdgePath> images_;
};

/// Induced map on the 2r directions at the vertex.
class DirectionMap {
 public:
  DirectionMap() = default;
  explicit DirectionMap(std::vector<int> image_codes) : image_(std::move(image_codes)) {}
  static DirectionMap identity(int rank);

  int rank() const { return static_cast<int>(image_.size()) / 2; }
  Direction operator()(Direction d) const { return Direction::from_code(image_[d.code()]); }
  Turn operator()(const Turn& t) const { return Turn((*this)(t.first), (*this)(t.second)); }

  /// (*this after other): apply `other` first.
  DirectionMap after(const DirectionMap& other) const;

  friend bool operator==(const DirectionMap&, const DirectionMap&) = default;

 private:
  std::vector<int> image_;
};

/// g after h: (g.h)(e) = tighten(g applied letterwise to h(e)).
RoseMap compose(const RoseMap& g, const RoseMap& h);

/// Composes a factor list given in application order: factors[0] is applied
/// first, i.e. the result is factors.back() . ... . factors.front().
RoseMap compose_all(const std::vector<RoseMap>& factors);

RoseMap power(const RoseMap& g, int n);

/// Letterwise image, then tightened.
EdgePath apply_to_path(const RoseMap& g, const EdgePath& p);

/// Letterwise image without tightening.
EdgePath apply_untightened(const RoseMap& g, const EdgePath& p);

DirectionMap direction_map(const RoseMap& g);

TransitionMatrix transition_matrix(const RoseMap& g);

/// Sum of image lengths.
long norm(const RoseMap& g);

struct TrainTrackCheck {
  bool is_train_track = true;
  /// A taken turn whose direction-map orbit degenerates...
  std::optional<Turn> witness;
  /// ...after this many applications of Dg.
  int iterate = 0;

  explicit operator bool() const { return is_train_track; }
};

TrainTrackCheck is_train_track(const RoseMap& g);

bool is_expanding(const RoseMap& g);

/// Strong connectivity of the digraph i -> j when g(e_i) crosses e_j.
bool is_irreducible(const RoseMap& g);

}  // namespace ttrose
