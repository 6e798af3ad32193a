#pragma once

// Words over the generators of G_r and the dynamical evidence built on them:
// orbit enumeration, near-identity witnesses, ping-pong regions and the
// free / index-four structure of the tree regime.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperbot/core.hpp"
#include "hyperbot/state_index.hpp"

namespace hyperbot {

enum class Execution { Serial, Parallel };

// Letters print as A a R r B b; lowercase is the inverse. B stands for R A R^-1.
enum class Letter : std::uint8_t { A, AInv, R, RInv, B, BInv };

char letter_char(Letter l);
Letter inverse(Letter l);

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  // Parses "ARaB"-style text; whitespace is ignored. Throws std::invalid_argument.
  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  void push_back(Letter l) { letters_.push_back(l); }

  std::string str() const;
  Word inverse() const;
  Word operator*(const Word& o) const;

  // Cancels adjacent inverse pairs and folds R-exponents mod 4 (R^2 is
  // written RR, R^3 as r). No other relations are applied.
  Word reduced() const;
  bool is_reduced() const { return reduced() == *this; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

struct Generators {
  Isometry2 A;  // translation of length r along the axis through p = i
  Isometry2 R;  // clockwise quarter turn about p
  Isometry2 B;  // R A R^-1

  Isometry2 matrix(Letter l) const;
};

// Throws std::invalid_argument for r <= 0.
Generators generators(double r);

Isometry2 evaluate(const Word& w, const Generators& gens);
Isometry2 evaluate(const Word& w, double r);

using StateIndex = LatticeIndex<4>;
// Entries of the canonical representative; index tolerances are absolute.
StateIndex::Coords coords(const Isometry2& g);

struct OrbitReport {
  double r = 0;
  int depth_requested = 0;
  int depth_reached = 0;
  bool truncated = false;
  double dedup_tol = 0;
  std::vector<Isometry2> states;
  // Breadth-first tree: parent state and the generator that reached it.
  std::vector<std::int32_t> parent;
  std::vector<Letter> via;
  std::vector<std::size_t> level_sizes;
  std::size_t dedup_count = 0;
  // Distinct points of the p-orbit (half-plane coordinates).
  std::vector<Complex> points;
  // Smallest distance between two distinct orbit points (> dedup_tol).
  double min_separation = 0;

  Word word_of(std::size_t state) const;
};

struct OrbitOptions {
  std::size_t max_states = 3'000'000;
  Execution execution = Execution::Parallel;
};

// Breadth-first closure of {A, A^-1, R} products from the identity.
// Throws std::invalid_argument for r <= 0 or depth outside [0, 16].
OrbitReport orbit_bfs(double r, int depth, double dedup_tol = 1e-8, OrbitOptions options = {});

// Reduced words over {A, a, R, r} in length-lexicographic order.
std::vector<Word> reduced_words_ar(int length);

struct WitnessOptions {
  std::size_t max_states = 3'000'000;
  Execution execution = Execution::Parallel;
};

// A word u^-1 v whose value is not the identity but lies within eps of it.
// u and v run over the breadth-first ball of {A, a, R, r} (distinct elements,
// first-found words). The pair with the smallest |u| + |v| <= max_len wins,
// ties broken by BFS index of u, then of v. Deterministic for fixed inputs.
// Throws std::invalid_argument if eps <= kTolId or max_len outside [0, 64].
std::optional<Word> near_identity_witness(double r, int max_len, double eps,
                                          WitnessOptions options = {});

struct PingPongReport {
  bool disjoint = false;          // closed form: r >= 2 acosh(sqrt 2)
  bool numeric_disjoint = false;  // from the boundary geodesics of N and E
  double margin = 0;  // distance between N and E, or minus their crossing angle
  // Angle at the crossing corner z of the triangle (p, x, z) when r < r_inf.
  std::optional<double> corner_angle;
};

PingPongReport pingpong_regions(double r);

// Points p, A p, A^-1 p, B p, B^-1 p define E, W, S, N by nearest-point rules.
enum class Region { N, S, E, W, C };
Region region_of(Complex q, const Generators& gens);

struct FreeGroupCertificate {
  bool passed = false;
  std::size_t words_checked = 0;
  std::optional<Word> first_failure;
};

// Every nonempty reduced {A, a, B, b} word up to max_len must send p into the
// region of its leading letter. Throws std::domain_error for r < r_inf.
FreeGroupCertificate free_group_certificate(double r, int max_len);

// (X, i) with g = X R^i, X a reduced {A, a, B, b} word.
struct CosetForm {
  Word x;
  int rotation = 0;
  friend bool operator==(const CosetForm&, const CosetForm&) = default;
};

// Symbolic rewrite of a word over {A, a, R, r, B, b} using R A R^-1 = B and
// R B R^-1 = A^-1.
CosetForm coset_form(const Word& w);

struct CosetReport {
  int index = 0;
  std::size_t elements_checked = 0;
  std::size_t distinct_elements = 0;
};

// Verifies every reduced {A, a, R, r} word up to max_len equals its coset form
// as a matrix and that distinct forms give distinct elements; returns the
// number of cosets of H_r seen. Throws std::domain_error for r < r_inf, and
// std::runtime_error if the verification fails.
CosetReport coset_structure(double r, int max_len);

}  // namespace hyperbot
