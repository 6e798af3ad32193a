#pragma once

// Turtle sessions over G_r (dimension 2) or its H^3 analogue (dimension 3).
//
// Line grammar, one command per line, lowercase:
//   fd | bk | tl | tr | undo | reset | set-r <positive float>
//   roll-l | roll-r | pitch-u | pitch-d        (dimension 3 only)
// A '#' starts a comment that runs to the end of the line.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperbot/core.hpp"
#include "hyperbot/h3.hpp"
#include "hyperbot/render.hpp"
#include "hyperbot/state_index.hpp"

namespace hyperbot {

struct Command {
  enum class Kind { Fd, Bk, Tl, Tr, SetR, Undo, Reset, RollL, RollR, PitchU, PitchD };
  Kind kind = Kind::Fd;
  double value = 0;  // set-r argument

  // Canonical text; parse_command(text()) reproduces the command exactly.
  std::string text() const;
  bool moves() const { return kind == Kind::Fd || kind == Kind::Bk; }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

// Throws ParseError (line 0) on malformed input.
Command parse_command(std::string_view text);

struct TurtleEvent {
  std::size_t step = 0;  // history length after the command
  Command command;
  Complex position;       // disk coordinates (the plane y = 0 shadow in dimension 3)
  std::optional<Point3> position3;
  bool revisit = false;
  std::optional<std::size_t> revisit_of;  // earliest matching history index (0 = start)
  double r = 0;
  std::string banner;
};

class TurtleSession {
 public:
  struct Entry {
    Command command;
    double r = 0;  // step length in force after the command
    Isometry2 state;
    Isometry3 state3;
  };

  // Throws std::invalid_argument for r <= 0, N < 2 or dimension not 2 or 3.
  TurtleSession(std::string id, double r, int n = 2, int dimension = 2, std::string created = {});

  const std::string& id() const { return id_; }
  double initial_r() const { return initial_r_; }
  double r() const { return history_.empty() ? initial_r_ : history_.back().r; }
  int n() const { return n_; }
  int dimension() const { return dimension_; }
  const std::string& created() const { return created_; }
  const std::vector<Entry>& history() const { return history_; }

  const Isometry2& state() const { return history_.empty() ? identity_ : history_.back().state; }
  const Isometry3& state3() const { return history_.empty() ? identity3_ : history_.back().state3; }

  // Throws std::invalid_argument for commands invalid in this session.
  TurtleEvent execute(const Command& c);
  TurtleEvent execute(std::string_view line) { return execute(parse_command(line)); }

  std::string banner() const;
  Complex position() const;
  // Positions along the current history, starting at p.
  Scene trace_scene() const;

  // Versioned JSON document ("format": 1).
  std::string to_json() const;
  // Throws std::invalid_argument for an unreadable or unsupported document.
  static TurtleSession from_json(std::string_view text);

 private:
  std::optional<std::size_t> find_visited(std::size_t upto) const;
  void rebuild_index();

  std::string id_;
  double initial_r_;
  int n_;
  int dimension_;
  std::string created_;
  std::vector<Entry> history_;
  Isometry2 identity_;
  Isometry3 identity3_;
  LatticeIndex<4> visited2_{1e-8};
  LatticeIndex<8> visited3_{1e-8};
};

struct ScriptResult {
  TurtleSession session;
  std::vector<TurtleEvent> events;
};

// Replays a script; the first malformed or rejected line aborts with a
// ParseError carrying its 1-based line number.
ScriptResult run_script(std::string_view text, double r, int n = 2, int dimension = 2);

}  // namespace hyperbot
