#include "ttrose/edge_path.hpp"

#include <algorithm>

#include "ttrose/error.hpp"

namespace ttrose {

char to_char(OrientedEdge e) {
  const char base = e.inverted ? 'A' : 'a';
  return static_cast<char>(base + e.index - 1);
}

OrientedEdge letter_from_char(char c, int rank) {
  int index = 0;
  bool inverted = false;
  if (c >= 'a' && c <= 'z') {
    index = c - 'a' + 1;
  } else if (c >= 'A' && c <= 'Z') {
    index = c - 'A' + 1;
    inverted = true;
  } else {
    throw ParseError(std::string("unknown letter '") + c + "'");
  }
  if (index > rank) {
    throw ParseError(std::string("letter '") + c + "' exceeds rank " + std::to_string(rank));
  }
  return {index, inverted};
}

std::string direction_name(Direction d) {
  return "x" + std::to_string(d.index) + (d.inverted ? "bar" : "");
}

std::string to_string(const Turn& t) {
  return std::string("{") + to_char(t.first) + "," + to_char(t.second) + "}";
}

EdgePath::EdgePath(int rank, std::vector<OrientedEdge> letters)
    : rank_(rank), letters_(std::move(letters)) {}

EdgePath EdgePath::parse(int rank, std::string_view text) {
  EdgePath p(rank);
  p.letters_.reserve(text.size());
  for (char c : text) p.letters_.push_back(letter_from_char(c, rank));
  return p;
}

void EdgePath::append(const EdgePath& other) {
  letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
}

bool EdgePath::is_tight() const {
  for (std::size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i] == letters_[i - 1].inverse()) return false;
  }
  return true;
}

bool EdgePath::is_positive() const {
  return std::none_of(letters_.begin(), letters_.end(),
                      [](const OrientedEdge& e) { return e.inverted; });
}

std::string EdgePath::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (const auto& e : letters_) s.push_back(to_char(e));
  return s;
}

EdgePath operator*(const EdgePath& a, const EdgePath& b) {
  EdgePath out = a;
  out.append(b);
  return out;
}

EdgePath reverse(const EdgePath& p) {
  std::vector<OrientedEdge> out;
  out.reserve(p.size());
  for (auto it = p.letters().rbegin(); it != p.letters().rend(); ++it) out.push_back(it->inverse());
  return EdgePath(p.rank(), std::move(out));
}

EdgePath tighten(const EdgePath& p) {
  // Stack reduction: the free reduction is unique, so one left-to-right pass suffices.
  std::vector<OrientedEdge> stack;
  stack.reserve(p.size());
  for (const auto& e : p.letters()) {
    if (!stack.empty() && stack.back() == e.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(e);
    }
  }
  return EdgePath(p.rank(), std::move(stack));
}

TurnSet turns_of(const EdgePath& p) {
  TurnSet out;
  for (std::size_t i = 1; i < p.size(); ++i) out.emplace(p[i - 1].inverse(), p[i]);
  return out;
}

}  // namespace ttrose
