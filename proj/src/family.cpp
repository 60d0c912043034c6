#include "ttrose/family.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <set>

#include "ttrose/error.hpp"
#include "ttrose/spectral.hpp"
#include "ttrose/turns.hpp"

namespace ttrose {
namespace {

EdgePath letters(int r, std::initializer_list<int> indices) {
  EdgePath p(r);
  for (int i : indices) p.push_back(OrientedEdge{i, false});
  return p;
}

Turn bar_turn(int i, int j) { return Turn(OrientedEdge{i, true}, OrientedEdge{j, true}); }

}  // namespace

Word parse_word(std::string_view digits) {
  Word w;
  for (char c : digits) {
    if (c < '0' || c > '9') throw ParseError(std::string("word: not a digit: ") + c, 0);
    w.push_back(c - '0');
  }
  return w;
}

std::string word_string(const Word& w) {
  std::string s;
  for (int i : w) s += i < 10 ? static_cast<char>('0' + i) : '?';
  return s;
}

RoseMap gen_elementary(int r, int k) {
  if (r < 3) throw PreconditionError("g_k needs rank >= 3");
  if (k < 1 || k > 12) throw PreconditionError("g_k: k must be in 1..12");
  std::vector<EdgePath> images;
  for (int i = 1; i <= r; ++i) images.push_back(letters(r, {i}));
  auto set = [&](int i, int j) { images[i - 1] = letters(r, {i, j}); };
  switch ((k - 1) % 6 + 1) {
    case 1: set(1, r); break;
    case 2: set(r, 1); break;
    case 3: set(r, r - 1); break;
    case 4: set(r - 1, r); break;
    case 5: set(r - 1, 1); break;
    case 6: set(1, r - 1); break;
  }
  return RoseMap(r, std::move(images));
}

RoseMap gen_g12_1(int r) {
  std::vector<RoseMap> factors;
  for (int k = 1; k <= 12; ++k) factors.push_back(gen_elementary(r, k));
  return compose_all(factors);
}

bool is_full(int r, const Word& w) {
  const int m = r - 1;
  std::vector<bool> seen(m * m, false);
  int count = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const int a = w[i] - 2, b = w[i + 1] - 2;
    if (a < 0 || a >= m || b < 0 || b >= m) return false;
    if (!seen[a * m + b]) {
      seen[a * m + b] = true;
      ++count;
    }
  }
  for (int x : w)
    if (x < 2 || x > r) return false;
  return count == m * m;
}

RoseMap gen_gw(int r, const Word& w) {
  if (r < 3) throw PreconditionError("g_w needs rank >= 3");
  if (w.empty()) throw PreconditionError("g_w: empty word");
  for (int x : w)
    if (x < 2 || x > r) throw PreconditionError("g_w: letter x" + std::to_string(x) + " outside x2..x" + std::to_string(r));
  if (w.front() != r - 1) throw PreconditionError("g_w: word must start with x" + std::to_string(r - 1));
  if (w.back() != 2) throw PreconditionError("g_w: word must end with x2");
  if (!is_full(r, w)) throw PreconditionError("g_w: word " + word_string(w) + " is not full");
  std::vector<EdgePath> images;
  for (int k = 1; k < r; ++k) images.push_back(letters(r, {k + 1}));
  EdgePath last = letters(r, {1});
  for (int x : w) last.push_back(OrientedEdge{x, false});
  images.push_back(std::move(last));
  return RoseMap(r, std::move(images));
}

std::vector<Word> enumerate_full_words(int r, int n) {
  if (r < 3 || n < 1) throw PreconditionError("enumerate_full_words: need r >= 3 and n >= 1");
  const double total = std::pow(r - 1.0, n);
  if (total > 5e7) throw PreconditionError("enumerate_full_words: search space too large for exhaustive mode");
  std::vector<Word> out;
  if (n < (r - 1) * (r - 1) + 1) return out;
  Word w(n, 2);
  while (true) {
    if (is_full(r, w)) out.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[i] == r) w[i--] = 2;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

std::vector<Word> sample_full_words(int r, int n, int count, std::uint64_t seed, long max_tries) {
  if (r < 3 || n < 1) throw PreconditionError("sample_full_words: need r >= 3 and n >= 1");
  std::vector<Word> out;
  if (n < (r - 1) * (r - 1) + 1) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> letter(2, r);
  Word w(n);
  for (long tries = 0; tries < max_tries && static_cast<int>(out.size()) < count; ++tries) {
    for (auto& x : w) x = letter(rng);
    if (is_full(r, w)) out.push_back(w);
  }
  return out;
}

Word wrap_word(int r, const Word& z) {
  Word w;
  w.reserve(z.size() + 2);
  w.push_back(r - 1);
  w.insert(w.end(), z.begin(), z.end());
  w.push_back(2);
  return w;
}

std::vector<RoseMap> family_factors(int r, const Word& w) {
  std::vector<RoseMap> factors;
  for (int k = 1; k <= 12; ++k) factors.push_back(gen_elementary(r, k));
  factors.push_back(gen_gw(r, w));
  return factors;
}

RoseMap build_family_map(int r, const Word& w) { return compose(gen_gw(r, w), gen_g12_1(r)); }

bool distinct_outer_classes(const Word& w, const Word& w2) {
  Word a{1}, b{1};
  a.insert(a.end(), w.begin(), w.end());
  b.insert(b.end(), w2.begin(), w2.end());
  if (a.size() != b.size()) return true;
  for (std::size_t s = 0; s < a.size(); ++s)
    if (std::equal(a.begin(), a.end(), b.begin() + s, b.end()) && std::equal(b.begin(), b.begin() + s, a.end() - s))
      return false;
  return true;
}

void family_self_check(int r) {
  auto expect = [&](int k, const Turn& t) {
    const auto pre = prenull_turns(gen_elementary(r, k));
    if (pre != TurnSet{t})
      throw Error("g_k indexing check failed: g_" + std::to_string(k) + " does not have the expected prenull turn");
  };
  expect(2, bar_turn(1, r));
  expect(3, bar_turn(r, r - 1));
  expect(4, bar_turn(r - 1, r));
  expect(5, bar_turn(1, r - 1));
  expect(7, bar_turn(1, r));
  const auto d = direction_map(gen_g12_1(r));
  for (int c = 0; c < 2 * r; ++c) {
    const auto dir = Direction::from_code(c);
    const Direction want = dir == OrientedEdge{1, true} ? OrientedEdge{r, true} : dir;
    if (d(dir) != want) throw Error("g_k indexing check failed: D(g_{12,1}) is not the identity away from x1bar");
  }
}

Certificate certify_map(const RoseMap& g, const std::optional<std::vector<RoseMap>>& factors,
                        const CertifyOptions& options) {
  Certificate c;
  c.rank = g.rank();
  c.map = g;
  c.train_track = static_cast<bool>(is_train_track(g));
  c.expanding = is_expanding(g);
  c.irreducible = is_irreducible(g);
  const auto m = transition_matrix(g);
  c.primitive = is_primitive(m);
  if (!(c.train_track && c.expanding && c.irreducible)) return c;
  c.local = local_whitehead_graph(g);
  c.lw_connected = is_connected(*c.local);
  c.stable = stable_whitehead_graph(g);
  if (c.primitive) c.lambda = pf_eigenvalue(m, 1e-12).lambda;
  c.fic_hypotheses = c.primitive && c.lw_connected;
  if (!c.primitive) return c;

  PNPOptions pnp;
  pnp.max_period = options.max_period;
  pnp.tol = options.tol;
  pnp.cross_check = options.cross_check;
  pnp.max_depth = options.max_depth;
  pnp.factors = factors;
  try {
    auto outcome = certify_pnp_free(g, pnp);
    c.pnp_free = outcome.pnp_free;
    c.pnp_certificate = std::move(outcome.certificate);
    c.inp = std::move(outcome.counterexample);
  } catch (const InconclusiveError& e) {
    c.inconclusive = true;
    c.inconclusive_reason = e.what();
    return c;
  }
  if (!c.pnp_free) return c;

  c.ideal = ideal_whitehead_graph(g, &*c.pnp_certificate);
  c.index = rotationless_index(*c.ideal);
  c.cut_vertex_free = cut_vertices(*c.ideal).empty();
  c.ageometric_fully_irreducible = c.fic_hypotheses && c.pnp_free;
  const boost::rational<long> lone_index = boost::rational<long>(3, 2) - g.rank();
  c.lone_axis = c.ageometric_fully_irreducible && *c.index == lone_index && c.cut_vertex_free;
  return c;
}

Certificate certify(int r, const Word& w, const CertifyOptions& options) {
  static std::mutex mu;
  static std::set<int> checked;
  {
    std::lock_guard lock(mu);
    if (!checked.count(r)) {
      family_self_check(r);
      checked.insert(r);
    }
  }
  auto factors = family_factors(r, w);
  Certificate c = certify_map(compose_all(factors), factors, options);
  c.word = w;
  return c;
}

}  // namespace ttrose
