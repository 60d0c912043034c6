#include "ttrose/rose_map.hpp"

#include <map>
#include <queue>
#include <sstream>

#include "ttrose/error.hpp"
#include "ttrose/turns.hpp"

namespace ttrose {

RoseMap::RoseMap(int rank, std::vector<EdgePath> images) : rank_(rank), images_(std::move(images)) {
  if (rank_ < 1 || rank_ > 26) throw PreconditionError("rose rank must be in 1..26");
  if (static_cast<int>(images_.size()) != rank_) {
    throw PreconditionError("rose map needs exactly one image per petal");
  }
  for (int i = 0; i < rank_; ++i) {
    auto& img = images_[i];
    const std::string name(1, to_char({i + 1, false}));
    if (img.empty()) throw PreconditionError("image of " + name + " is empty");
    if (!img.is_tight()) throw PreconditionError("image of " + name + " is not tight");
    for (const auto& e : img.letters()) {
      if (e.index < 1 || e.index > rank_) {
        throw PreconditionError("image of " + name + " uses a petal beyond rank");
      }
    }
    if (img.rank() != rank_) img = EdgePath(rank_, img.letters());
  }
}

RoseMap RoseMap::identity(int rank) {
  std::vector<EdgePath> images;
  for (int i = 1; i <= rank; ++i) images.emplace_back(rank, std::vector<OrientedEdge>{{i, false}});
  return RoseMap(rank, std::move(images));
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

RoseMap RoseMap::parse(std::string_view text) {
  std::vector<std::string> lines;
  std::vector<int> line_numbers;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      auto t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      lines.push_back(t);
      line_numbers.push_back(n);
    }
  }
  if (lines.empty()) throw ParseError("empty map file");
  const auto& header = lines[0];
  if (header.rfind("rank:", 0) != 0) throw ParseError("expected 'rank: <r>'", line_numbers[0]);
  int rank = 0;
  try {
    std::size_t used = 0;
    auto digits = trim(std::string_view(header).substr(5));
    rank = std::stoi(digits, &used);
    if (used != digits.size()) throw ParseError("bad rank", line_numbers[0]);
  } catch (const std::logic_error&) {
    throw ParseError("bad rank", line_numbers[0]);
  }
  if (rank < 1 || rank > 26) throw ParseError("rank must be in 1..26", line_numbers[0]);
  if (static_cast<int>(lines.size()) - 1 != rank) {
    throw ParseError("rank mismatch: expected " + std::to_string(rank) + " image lines, found " +
                         std::to_string(lines.size() - 1),
                     line_numbers.back());
  }
  std::vector<std::optional<EdgePath>> images(rank);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const int ln = line_numbers[li];
    const auto& l = lines[li];
    const auto arrow = l.find("->");
    if (arrow == std::string::npos) throw ParseError("expected '<letter> -> <path>'", ln);
    const auto lhs = trim(std::string_view(l).substr(0, arrow));
    const auto rhs = trim(std::string_view(l).substr(arrow + 2));
    if (lhs.size() != 1) throw ParseError("left side must be a single letter", ln);
    OrientedEdge e;
    EdgePath img;
    try {
      e = letter_from_char(lhs[0], rank);
      img = EdgePath::parse(rank, rhs);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), ln);
    }
    if (e.inverted) throw ParseError("left side must be a positive (lowercase) letter", ln);
    if (img.empty()) throw ParseError("empty image", ln);
    if (!img.is_tight()) throw ParseError("image is not tight", ln);
    if (images[e.index - 1]) throw ParseError("duplicate image line", ln);
    images[e.index - 1] = std::move(img);
  }
  std::vector<EdgePath> out;
  for (auto& i : images) out.push_back(std::move(*i));
  return RoseMap(rank, std::move(out));
}

std::string RoseMap::serialize() const {
  std::string s = "rank: " + std::to_string(rank_) + "\n";
  for (int i = 0; i < rank_; ++i) {
    s += to_char({i + 1, false});
    s += " -> ";
    s += images_[i].str();
    s += "\n";
  }
  return s;
}

EdgePath RoseMap::image(OrientedEdge e) const {
  const auto& img = images_[e.index - 1];
  return e.inverted ? reverse(img) : img;
}

bool RoseMap::is_positive() const {
  for (const auto& img : images_)
    if (!img.is_positive()) return false;
  return true;
}

DirectionMap DirectionMap::identity(int rank) {
  std::vector<int> codes(2 * rank);
  for (int c = 0; c < 2 * rank; ++c) codes[c] = c;
  return DirectionMap(std::move(codes));
}

DirectionMap DirectionMap::after(const DirectionMap& other) const {
  std::vector<int> codes(other.image_.size());
  for (std::size_t c = 0; c < codes.size(); ++c) codes[c] = image_[other.image_[c]];
  return DirectionMap(std::move(codes));
}

EdgePath apply_untightened(const RoseMap& g, const EdgePath& p) {
  if (p.rank() != g.rank()) throw PreconditionError("apply: rank mismatch");
  EdgePath out(g.rank());
  for (const auto& e : p.letters()) out.append(g.image(e));
  return out;
}

EdgePath apply_to_path(const RoseMap& g, const EdgePath& p) {
  return tighten(apply_untightened(g, p));
}

RoseMap compose(const RoseMap& g, const RoseMap& h) {
  if (g.rank() != h.rank()) throw PreconditionError("compose: rank mismatch");
  std::vector<EdgePath> images;
  images.reserve(h.rank());
  for (const auto& img : h.images()) images.push_back(apply_to_path(g, img));
  return RoseMap(g.rank(), std::move(images));
}

RoseMap compose_all(const std::vector<RoseMap>& factors) {
  if (factors.empty()) throw PreconditionError("compose_all: no factors");
  RoseMap acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = compose(factors[i], acc);
  return acc;
}

RoseMap power(const RoseMap& g, int n) {
  if (n < 0) throw PreconditionError("power: negative exponent");
  RoseMap acc = RoseMap::identity(g.rank());
  for (int i = 0; i < n; ++i) acc = compose(g, acc);
  return acc;
}

DirectionMap direction_map(const RoseMap& g) {
  std::vector<int> codes(2 * g.rank());
  for (int i = 1; i <= g.rank(); ++i) {
    const auto& img = g.image(i);
    codes[OrientedEdge{i, false}.code()] = img.front().code();
    codes[OrientedEdge{i, true}.code()] = img.back().inverse().code();
  }
  return DirectionMap(std::move(codes));
}

TransitionMatrix transition_matrix(const RoseMap& g) {
  TransitionMatrix m = TransitionMatrix::Zero(g.rank(), g.rank());
  for (int i = 1; i <= g.rank(); ++i)
    for (const auto& e : g.image(i).letters()) ++m(i - 1, e.index - 1);
  return m;
}

long norm(const RoseMap& g) {
  long n = 0;
  for (const auto& img : g.images()) n += static_cast<long>(img.size());
  return n;
}

TrainTrackCheck is_train_track(const RoseMap& g) {
  // Breadth-first closure of T(g) under Dg; the first degenerate turn reached
  // gives the witness with the fewest iterations.
  const auto dg = direction_map(g);
  std::map<Turn, std::pair<Turn, int>> origin;
  std::queue<Turn> q;
  for (const auto& t : taken_turns(g)) {
    origin.emplace(t, std::make_pair(t, 0));
    q.push(t);
  }
  while (!q.empty()) {
    const Turn t = q.front();
    q.pop();
    const auto [root, depth] = origin.at(t);
    if (t.degenerate()) return TrainTrackCheck{false, root, depth};
    const Turn next = dg(t);
    if (origin.emplace(next, std::make_pair(root, depth + 1)).second) q.push(next);
  }
  return {};
}

bool is_expanding(const RoseMap& g) {
  // Follow petals whose image is a single edge; a cycle among them is an edge
  // whose iterates never grow.
  const int r = g.rank();
  std::vector<int> next(r + 1, 0);
  for (int i = 1; i <= r; ++i)
    if (g.image(i).size() == 1) next[i] = g.image(i).front().index;
  for (int start = 1; start <= r; ++start) {
    int cur = start;
    for (int steps = 0; steps <= r && cur != 0; ++steps) cur = next[cur];
    if (cur != 0) return false;
  }
  return true;
}

bool is_irreducible(const RoseMap& g) { return is_irreducible_matrix(transition_matrix(g)); }

}  // namespace ttrose
