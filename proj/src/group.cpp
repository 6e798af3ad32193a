#include "hyperbot/group.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "hyperbot/kernels.hpp"

namespace hyperbot {

char letter_char(Letter l) {
  switch (l) {
    case Letter::A: return 'A';
    case Letter::AInv: return 'a';
    case Letter::R: return 'R';
    case Letter::RInv: return 'r';
    case Letter::B: return 'B';
    case Letter::BInv: return 'b';
  }
  return '?';
}

Letter inverse(Letter l) {
  switch (l) {
    case Letter::A: return Letter::AInv;
    case Letter::AInv: return Letter::A;
    case Letter::R: return Letter::RInv;
    case Letter::RInv: return Letter::R;
    case Letter::B: return Letter::BInv;
    case Letter::BInv: return Letter::B;
  }
  return l;
}

Word Word::parse(std::string_view text) {
  Word w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'A': w.push_back(Letter::A); break;
      case 'a': w.push_back(Letter::AInv); break;
      case 'R': w.push_back(Letter::R); break;
      case 'r': w.push_back(Letter::RInv); break;
      case 'B': w.push_back(Letter::B); break;
      case 'b': w.push_back(Letter::BInv); break;
      case ' ': case '\t': case '.': break;
      default:
        throw std::invalid_argument("Word: unexpected character at position " + std::to_string(i));
    }
  }
  return w;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(letter_char(l));
  return s;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = hyperbot::inverse(l);
  return Word(std::move(out));
}

Word Word::operator*(const Word& o) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return Word(std::move(out));
}

namespace {

enum class Gen : std::uint8_t { A, R, B };

struct Block {
  Gen gen;
  int exponent;
};

Gen gen_of(Letter l) {
  switch (l) {
    case Letter::A: case Letter::AInv: return Gen::A;
    case Letter::R: case Letter::RInv: return Gen::R;
    default: return Gen::B;
  }
}

int sign_of(Letter l) {
  return (l == Letter::AInv || l == Letter::RInv || l == Letter::BInv) ? -1 : 1;
}

}  // namespace

Word Word::reduced() const {
  std::vector<Block> stack;
  for (Letter l : letters_) {
    const Gen g = gen_of(l);
    if (!stack.empty() && stack.back().gen == g) {
      int e = stack.back().exponent + sign_of(l);
      if (g == Gen::R) e = ((e % 4) + 4) % 4;
      if (e == 0) {
        stack.pop_back();
      } else {
        stack.back().exponent = e;
      }
    } else {
      const int e = g == Gen::R ? (sign_of(l) + 4) % 4 : sign_of(l);
      stack.push_back({g, e});
    }
  }
  Word out;
  for (const Block& b : stack) {
    switch (b.gen) {
      case Gen::R:
        if (b.exponent == 3) {
          out.push_back(Letter::RInv);
        } else {
          for (int i = 0; i < b.exponent; ++i) out.push_back(Letter::R);
        }
        break;
      case Gen::A:
      case Gen::B: {
        const bool is_a = b.gen == Gen::A;
        const Letter up = is_a ? Letter::A : Letter::B;
        const Letter down = is_a ? Letter::AInv : Letter::BInv;
        for (int i = 0; i < std::abs(b.exponent); ++i) out.push_back(b.exponent > 0 ? up : down);
        break;
      }
    }
  }
  return out;
}

Isometry2 Generators::matrix(Letter l) const {
  switch (l) {
    case Letter::A: return A;
    case Letter::AInv: return A.inverse();
    case Letter::R: return R;
    case Letter::RInv: return R.inverse();
    case Letter::B: return B;
    case Letter::BInv: return B.inverse();
  }
  return {};
}

Generators generators(double r) {
  if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("generators: r must be positive");
  Generators g;
  g.A = Isometry2::translation(r);
  g.R = Isometry2(1, -1, 1, 1);
  g.B = g.R * g.A * g.R.inverse();
  return g;
}

Isometry2 evaluate(const Word& w, const Generators& gens) {
  Isometry2 m;
  for (Letter l : w.letters()) m = m * gens.matrix(l);
  return m;
}

Isometry2 evaluate(const Word& w, double r) { return evaluate(w, generators(r)); }

StateIndex::Coords coords(const Isometry2& g) { return g.entries(); }

Word OrbitReport::word_of(std::size_t state) const {
  std::vector<Letter> letters;
  for (auto s = static_cast<std::int32_t>(state); s > 0; s = parent[static_cast<std::size_t>(s)]) {
    letters.push_back(via[static_cast<std::size_t>(s)]);
  }
  std::reverse(letters.begin(), letters.end());
  return Word(std::move(letters));
}

namespace {

// Breadth-first closure of `steps` from the identity into report.states.
void closure(OrbitReport& report, const Generators& gens, const std::vector<Letter>& step_letters,
             int depth, const OrbitOptions& options) {
  std::vector<Isometry2> step;
  for (Letter l : step_letters) step.push_back(gens.matrix(l));

  StateIndex index(report.dedup_tol);
  index.insert(coords(Isometry2{}));
  report.states.push_back(Isometry2{});
  report.parent.push_back(-1);
  report.via.push_back(Letter::A);
  report.level_sizes.push_back(1);

  std::vector<std::size_t> frontier = {0};
  for (int level = 1; level <= depth && !frontier.empty() && !report.truncated; ++level) {
    const auto expansion =
        options.execution == Execution::Parallel
            ? kernels::omp::expand(report.states, frontier, step, index)
            : kernels::serial::expand(report.states, frontier, step, index);
    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < expansion.products.size(); ++k) {
      if (expansion.found[k] >= 0) {
        ++report.dedup_count;
        continue;
      }
      const auto [idx, inserted] = index.find_or_insert(coords(expansion.products[k]));
      if (!inserted) {
        ++report.dedup_count;
        continue;
      }
      report.states.push_back(expansion.products[k]);
      report.parent.push_back(static_cast<std::int32_t>(frontier[k / step.size()]));
      report.via.push_back(step_letters[k % step.size()]);
      next.push_back(idx);
      if (report.states.size() >= options.max_states) {
        report.truncated = true;
        break;
      }
    }
    report.level_sizes.push_back(next.size());
    report.depth_reached = level;
    frontier = std::move(next);
  }
}

}  // namespace

OrbitReport orbit_bfs(double r, int depth, double dedup_tol, OrbitOptions options) {
  if (depth < 0 || depth > 16) throw std::invalid_argument("orbit_bfs: depth must lie in [0, 16]");
  if (!(dedup_tol > 0)) throw std::invalid_argument("orbit_bfs: dedup_tol must be positive");
  const Generators gens = generators(r);

  OrbitReport report;
  report.r = r;
  report.depth_requested = depth;
  report.dedup_tol = dedup_tol;
  closure(report, gens, {Letter::A, Letter::AInv, Letter::R}, depth, options);

  std::vector<Complex> points;
  points.reserve(report.states.size());
  double upper = std::numeric_limits<double>::infinity();
  for (const Isometry2& g : report.states) {
    const Complex q = g.apply(kBasePoint);
    points.push_back(q);
    const double d = dist(kBasePoint, q);
    if (d > dedup_tol) upper = std::min(upper, d);
  }
  if (!std::isfinite(upper)) {
    report.points = {kBasePoint};
    report.min_separation = upper;
    return report;
  }
  const auto sep = options.execution == Execution::Parallel
                       ? kernels::omp::separation(points, dedup_tol, upper)
                       : kernels::serial::separation(points, dedup_tol, upper);
  report.points.reserve(sep.distinct.size());
  for (std::size_t i : sep.distinct) report.points.push_back(points[i]);
  report.min_separation = sep.min_distance;
  return report;
}

namespace {

constexpr std::array<Letter, 4> kArLetters = {Letter::A, Letter::AInv, Letter::R, Letter::RInv};

// Successor letters keeping a word over {A, a, R, r} reduced: no inverse
// pairs, R-blocks limited to R, RR, r.
bool may_follow(const std::vector<Letter>& word, Letter next) {
  if (word.empty()) return true;
  const Letter last = word.back();
  if (next == inverse(last)) return false;
  if (next == Letter::RInv && last == Letter::RInv) return false;
  if (next == Letter::R) {
    if (last == Letter::RInv) return false;
    if (last == Letter::R && word.size() >= 2 && word[word.size() - 2] == Letter::R) return false;
  }
  if (next == Letter::RInv && last == Letter::R) return false;
  return true;
}

// One level of a prefix trie: each node extends node `parent` of the
// previous level by `letter`.
struct TrieLevel {
  std::vector<std::uint32_t> parent;
  std::vector<Letter> letter;
  std::vector<Isometry2> value;
};

Word trie_word(const std::vector<TrieLevel>& levels, std::size_t level, std::size_t node) {
  std::vector<Letter> out;
  for (std::size_t l = level; l > 0; --l) {
    out.push_back(levels[l].letter[node]);
    node = levels[l].parent[node];
  }
  std::reverse(out.begin(), out.end());
  return Word(std::move(out));
}

// Letters of the word ending at `node` (only the last two are needed by may_follow).
std::vector<Letter> trie_tail(const std::vector<TrieLevel>& levels, std::size_t level,
                              std::size_t node) {
  std::vector<Letter> tail;
  for (std::size_t l = level; l > 0 && tail.size() < 2; --l) {
    tail.push_back(levels[l].letter[node]);
    node = levels[l].parent[node];
  }
  std::reverse(tail.begin(), tail.end());
  return tail;
}

template <class Alphabet, class Accept>
TrieLevel extend(const std::vector<TrieLevel>& levels, const Generators& gens,
                 const Alphabet& alphabet, Accept&& accept) {
  const std::size_t level = levels.size() - 1;
  const TrieLevel& prev = levels.back();
  TrieLevel out;
  for (std::size_t node = 0; node < prev.value.size(); ++node) {
    const std::vector<Letter> tail = trie_tail(levels, level, node);
    for (Letter l : alphabet) {
      if (!accept(tail, l)) continue;
      out.parent.push_back(static_cast<std::uint32_t>(node));
      out.letter.push_back(l);
      out.value.push_back(prev.value[node] * gens.matrix(l));
    }
  }
  return out;
}

TrieLevel root_level() {
  TrieLevel root;
  root.parent.push_back(0);
  root.letter.push_back(Letter::A);
  root.value.push_back(Isometry2{});
  return root;
}

}  // namespace

std::vector<Word> reduced_words_ar(int length) {
  if (length < 0) throw std::invalid_argument("reduced_words_ar: negative length");
  const Generators gens = generators(1.0);
  std::vector<TrieLevel> levels = {root_level()};
  for (int l = 1; l <= length; ++l) levels.push_back(extend(levels, gens, kArLetters, may_follow));
  std::vector<Word> out;
  for (std::size_t node = 0; node < levels.back().value.size(); ++node) {
    out.push_back(trie_word(levels, levels.size() - 1, node));
  }
  return out;
}

std::optional<Word> near_identity_witness(double r, int max_len, double eps,
                                          WitnessOptions options) {
  if (!(eps > kTolId)) throw std::invalid_argument("near_identity_witness: eps must exceed 1e-9");
  if (max_len < 0 || max_len > 64) throw std::invalid_argument("near_identity_witness: max_len must lie in [0, 64]");
  const Generators gens = generators(r);
  OrbitReport ball;
  ball.r = r;
  ball.dedup_tol = 1e-8;
  const int half = (max_len + 1) / 2;
  closure(ball, gens, {Letter::A, Letter::AInv, Letter::R, Letter::RInv}, half,
          {options.max_states, options.execution});

  // Left halves are u^-1, right halves v; classes are BFS levels.
  const std::size_t n = ball.states.size();
  std::vector<Isometry2> inverses(n);
  std::vector<Complex> points(n);
  std::vector<std::uint8_t> level(n);
  std::size_t offset = 0;
  for (std::size_t l = 0; l < ball.level_sizes.size(); ++l) {
    for (std::size_t k = 0; k < ball.level_sizes[l]; ++k) level[offset + k] = static_cast<std::uint8_t>(l);
    offset += ball.level_sizes[l];
  }
  for (std::size_t k = 0; k < n; ++k) {
    inverses[k] = ball.states[k].inverse();
    points[k] = ball.states[k].apply(kBasePoint);
  }
  // cosh d(w p, p) = |w|_F^2 / 2 <= (sqrt 2 + eps)^2 / 2 when |w - I|_F < eps.
  const double radius = std::acosh(1 + std::sqrt(2.0) * eps + eps * eps / 2) * (1 + 1e-12) + 1e-12;
  const std::size_t classes = ball.level_sizes.size();
  std::vector<std::uint8_t> table(classes * classes);

  for (int len = 1; len <= max_len; ++len) {
    for (std::size_t a = 0; a < classes; ++a) {
      for (std::size_t b = 0; b < classes; ++b) table[a * classes + b] = a + b == static_cast<std::size_t>(len);
    }
    const kernels::HalfWords words{inverses, points, level, ball.states, points,
                                   level,    table,  classes, radius};
    const auto hit = options.execution == Execution::Parallel
                         ? kernels::omp::first_near_identity_pair(words, eps)
                         : kernels::serial::first_near_identity_pair(words, eps);
    if (hit) return (ball.word_of(hit->first).inverse() * ball.word_of(hit->second)).reduced();
  }
  return std::nullopt;
}

namespace {

double reflection_half_trace(Complex p, Complex q1, Complex q2) {
  const Motion2 s1 = reflect(Geodesic2::bisector(p, q1));
  const Motion2 s2 = reflect(Geodesic2::bisector(p, q2));
  return std::abs((s1 * s2).as_isometry().trace()) / 2;
}

}  // namespace

PingPongReport pingpong_regions(double r) {
  const Generators gens = generators(r);
  const Complex p = kBasePoint;
  PingPongReport out;
  out.disjoint = r >= kRInf - kTolId;
  // Composition of the reflections in the two bisectors: half its trace is
  // cosh(distance) for disjoint geodesics and cos(angle) for crossing ones.
  const double x = reflection_half_trace(p, gens.A.apply(p), gens.B.inverse().apply(p));
  out.margin = x >= 1 ? std::acosh(x) : -std::acos(x);
  out.numeric_disjoint = x > 1 - kTolId;
  if (r < kRInf) out.corner_angle = std::acos(std::cosh(r / 2) / std::sqrt(2.0));
  return out;
}

Region region_of(Complex q, const Generators& gens) {
  const Complex p = kBasePoint;
  const double d0 = dist(q, p);
  auto in = [&](const Isometry2& g) { return d0 >= dist(q, g.apply(p)) - kTolId; };
  if (in(gens.A)) return Region::E;
  if (in(gens.A.inverse())) return Region::W;
  if (in(gens.B)) return Region::S;
  if (in(gens.B.inverse())) return Region::N;
  return Region::C;
}

namespace {

constexpr std::array<Letter, 4> kAbLetters = {Letter::A, Letter::AInv, Letter::B, Letter::BInv};

bool free_follow(const std::vector<Letter>& tail, Letter next) {
  return tail.empty() || next != inverse(tail.back());
}

Region leading_region(Letter l) {
  switch (l) {
    case Letter::A: return Region::E;
    case Letter::AInv: return Region::W;
    case Letter::B: return Region::S;
    default: return Region::N;
  }
}

void require_tree_regime(double r) {
  if (r < kRInf - kTolId) throw std::domain_error("hypothesis violated: r < r_inf");
}

}  // namespace

FreeGroupCertificate free_group_certificate(double r, int max_len) {
  require_tree_regime(r);
  const Generators gens = generators(r);
  const Complex p = kBasePoint;
  const std::array<std::pair<Region, Isometry2>, 4> regions = {{
      {Region::E, gens.A},
      {Region::W, gens.A.inverse()},
      {Region::S, gens.B},
      {Region::N, gens.B.inverse()},
  }};
  FreeGroupCertificate out;
  out.passed = true;
  std::vector<TrieLevel> levels = {root_level()};
  for (int l = 1; l <= max_len; ++l) {
    levels.push_back(extend(levels, gens, kAbLetters, free_follow));
    const TrieLevel& level = levels.back();
    for (std::size_t node = 0; node < level.value.size(); ++node) {
      ++out.words_checked;
      const Word w = trie_word(levels, levels.size() - 1, node);
      const Complex q = level.value[node].apply(p);
      const Region target = leading_region(w.front());
      const auto& g = std::find_if(regions.begin(), regions.end(),
                                   [&](const auto& e) { return e.first == target; })->second;
      if (!(dist(q, p) >= dist(q, g.apply(p)) - kTolId)) {
        if (out.passed) out.first_failure = w;
        out.passed = false;
      }
    }
  }
  return out;
}

CosetForm coset_form(const Word& w) {
  // Conjugation by R cycles A -> B -> a -> b -> A.
  static constexpr std::array<Letter, 4> kCycle = {Letter::A, Letter::B, Letter::AInv,
                                                   Letter::BInv};
  auto position = [](Letter l) {
    return static_cast<int>(std::find(kCycle.begin(), kCycle.end(), l) - kCycle.begin());
  };
  CosetForm out;
  std::vector<Letter> x;
  for (Letter l : w.letters()) {
    if (l == Letter::R) {
      out.rotation = (out.rotation + 1) % 4;
    } else if (l == Letter::RInv) {
      out.rotation = (out.rotation + 3) % 4;
    } else {
      // X R^i l = X (R^i l R^-i) R^i
      const Letter moved = kCycle[static_cast<std::size_t>((position(l) + out.rotation) % 4)];
      if (!x.empty() && x.back() == inverse(moved)) {
        x.pop_back();
      } else {
        x.push_back(moved);
      }
    }
  }
  out.x = Word(std::move(x));
  return out;
}

CosetReport coset_structure(double r, int max_len) {
  require_tree_regime(r);
  if (max_len < 0) throw std::invalid_argument("coset_structure: negative max_len");
  const Generators gens = generators(r);
  std::array<Isometry2, 4> rotations;
  for (int i = 0; i < 4; ++i) rotations[static_cast<std::size_t>(i)] = gens.R.pow(i);

  StateIndex index(1e-8);
  std::map<std::size_t, std::string> form_of_state;
  std::map<std::string, std::size_t> state_of_form;
  std::array<bool, 4> seen{};
  CosetReport out;
  for (int len = 0; len <= max_len; ++len) {
    for (const Word& w : reduced_words_ar(len)) {
      ++out.elements_checked;
      const Isometry2 g = evaluate(w, gens);
      const CosetForm form = coset_form(w);
      const Isometry2 rebuilt =
          evaluate(form.x, gens) * rotations[static_cast<std::size_t>(form.rotation)];
      const double scale = 1 + std::sqrt(g.a() * g.a() + g.b() * g.b() + g.c() * g.c() + g.d() * g.d());
      if (matrix_distance(g, rebuilt) > 1e-9 * scale) {
        throw std::runtime_error("coset_structure: " + w.str() + " differs from its coset form");
      }
      const std::string key = form.x.str() + "|" + std::to_string(form.rotation);
      const auto [state, inserted] = index.find_or_insert(coords(g));
      auto f = form_of_state.find(state);
      if (f != form_of_state.end() && f->second != key) {
        throw std::runtime_error("coset_structure: distinct forms " + f->second + " and " + key +
                                 " give the same element");
      }
      auto s = state_of_form.find(key);
      if (s != state_of_form.end() && s->second != state) {
        throw std::runtime_error("coset_structure: form " + key + " gives distinct elements");
      }
      form_of_state.emplace(state, key);
      state_of_form.emplace(key, state);
      seen[static_cast<std::size_t>(form.rotation)] = true;
      (void)inserted;
    }
  }
  out.distinct_elements = index.size();
  out.index = static_cast<int>(std::count(seen.begin(), seen.end(), true));
  return out;
}

}  // namespace hyperbot
