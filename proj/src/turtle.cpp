#include "hyperbot/turtle.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "hyperbot/classifier.hpp"
#include "hyperbot/group.hpp"

namespace hyperbot {

namespace {

struct Mnemonic {
  const char* word;
  Command::Kind kind;
};

constexpr Mnemonic kMnemonics[] = {
    {"fd", Command::Kind::Fd},         {"bk", Command::Kind::Bk},
    {"tl", Command::Kind::Tl},         {"tr", Command::Kind::Tr},
    {"set-r", Command::Kind::SetR},    {"undo", Command::Kind::Undo},
    {"reset", Command::Kind::Reset},   {"roll-l", Command::Kind::RollL},
    {"roll-r", Command::Kind::RollR},  {"pitch-u", Command::Kind::PitchU},
    {"pitch-d", Command::Kind::PitchD},
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string Command::text() const {
  for (const Mnemonic& m : kMnemonics) {
    if (m.kind == kind) {
      return kind == Kind::SetR ? std::string(m.word) + " " + format_double(value) : m.word;
    }
  }
  return "";
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ", " : std::string()) +
                         "column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Command parse_command(std::string_view text) {
  std::size_t begin = 0;
  while (begin < text.size() && is_space(text[begin])) ++begin;
  std::size_t end = text.size();
  while (end > begin && is_space(text[end - 1])) --end;
  std::size_t word_end = begin;
  while (word_end < end && !is_space(text[word_end])) ++word_end;
  const std::string_view word = text.substr(begin, word_end - begin);
  if (word.empty()) throw ParseError(0, begin + 1, "empty command");

  Command c;
  bool known = false;
  for (const Mnemonic& m : kMnemonics) {
    if (word == m.word) {
      c.kind = m.kind;
      known = true;
    }
  }
  if (!known) throw ParseError(0, begin + 1, "unknown command '" + std::string(word) + "'");

  std::size_t arg = word_end;
  while (arg < end && is_space(text[arg])) ++arg;
  if (c.kind != Command::Kind::SetR) {
    if (arg < end) throw ParseError(0, arg + 1, "unexpected argument");
    return c;
  }
  if (arg >= end) throw ParseError(0, word_end + 1, "set-r needs a value");
  const std::string number(text.substr(arg, end - arg));
  char* stop = nullptr;
  const double v = std::strtod(number.c_str(), &stop);
  if (stop != number.c_str() + number.size()) throw ParseError(0, arg + 1, "malformed number");
  if (!(v > 0) || !std::isfinite(v)) throw ParseError(0, arg + 1, "set-r needs a positive value");
  c.value = v;
  return c;
}

TurtleSession::TurtleSession(std::string id, double r, int n, int dimension, std::string created)
    : id_(std::move(id)), initial_r_(r), n_(n), dimension_(dimension), created_(std::move(created)) {
  if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("session: r must be positive");
  if (n < 2) throw std::invalid_argument("session: N must be at least 2");
  if (dimension != 2 && dimension != 3) throw std::invalid_argument("session: dimension must be 2 or 3");
  if (dimension == 3 && n != 2) throw std::invalid_argument("session: dimension 3 needs N = 2");
  rebuild_index();
}

std::string TurtleSession::banner() const {
  if (n_ != 2) return "unknown (open question for rotation order 2N with N != 2)";
  return dimension_ == 3 ? classify(r()).banner() + ", " + classify3(r()).covolume
                         : classify(r()).banner();
}

namespace {

LatticeIndex<8>::Coords entries3(const Isometry3& g) { return g.entries(); }

// Nearest point of the plane y = 0, as a half-plane coordinate of that plane.
Complex shadow(const Point3& q) { return {q.z.real(), std::hypot(q.z.imag(), q.h)}; }

}  // namespace

Complex TurtleSession::position() const {
  if (dimension_ == 3) return half_plane_to_disk(shadow(state3().apply(kBasePoint3)));
  return half_plane_to_disk(state().apply(kBasePoint));
}

void TurtleSession::rebuild_index() {
  visited2_ = LatticeIndex<4>(1e-8);
  visited3_ = LatticeIndex<8>(1e-8);
  visited2_.insert(coords(identity_));
  visited3_.insert(entries3(identity3_));
  for (const Entry& e : history_) {
    visited2_.insert(coords(e.state));
    visited3_.insert(entries3(e.state3));
  }
}

std::optional<std::size_t> TurtleSession::find_visited(std::size_t upto) const {
  const auto hit = dimension_ == 3 ? visited3_.find(entries3(state3())) : visited2_.find(coords(state()));
  if (hit && *hit < upto) return hit;
  return std::nullopt;
}

TurtleEvent TurtleSession::execute(const Command& c) {
  using K = Command::Kind;
  const bool spatial = c.kind == K::RollL || c.kind == K::RollR || c.kind == K::PitchU || c.kind == K::PitchD;
  if (spatial && dimension_ != 3) throw std::invalid_argument(c.text() + " needs a dimension 3 session");

  if (c.kind == K::Undo) {
    if (!history_.empty()) history_.pop_back();
    rebuild_index();
  } else {
    Entry e;
    e.command = c;
    e.r = c.kind == K::SetR ? c.value : r();
    e.state = state();
    e.state3 = state3();
    // Only the state of the session's own dimension moves; the other stays at the identity.
    if (dimension_ == 2) {
      const Generators g = generators(e.r);
      const Isometry2 right = n_ == 2 ? g.R : Isometry2::rotation(-kPi / n_);
      switch (c.kind) {
        case K::Fd: e.state = e.state * g.A; break;
        case K::Bk: e.state = e.state * g.A.inverse(); break;
        case K::Tl: e.state = e.state * right.inverse(); break;
        case K::Tr: e.state = e.state * right; break;
        case K::Reset: e.state = Isometry2{}; break;
        default: break;
      }
    } else {
      const Generators3 g3 = generators3(e.r);
      switch (c.kind) {
        case K::Fd: e.state3 = e.state3 * g3.A; break;
        case K::Bk: e.state3 = e.state3 * g3.A.inverse(); break;
        case K::Tl: e.state3 = e.state3 * g3.R12.inverse(); break;
        case K::Tr: e.state3 = e.state3 * g3.R12; break;
        case K::RollL: e.state3 = e.state3 * g3.R23; break;
        case K::RollR: e.state3 = e.state3 * g3.R23.inverse(); break;
        case K::PitchU: e.state3 = e.state3 * g3.R31; break;
        case K::PitchD: e.state3 = e.state3 * g3.R31.inverse(); break;
        case K::Reset: e.state3 = Isometry3{}; break;
        default: break;
      }
    }
    history_.push_back(e);
    visited2_.insert(coords(e.state));
    visited3_.insert(entries3(e.state3));
  }

  TurtleEvent ev;
  ev.step = history_.size();
  ev.command = c;
  ev.position = position();
  if (dimension_ == 3) ev.position3 = state3().apply(kBasePoint3);
  ev.revisit_of = find_visited(history_.size());
  ev.revisit = ev.revisit_of.has_value();
  ev.r = r();
  ev.banner = banner();
  return ev;
}

Scene TurtleSession::trace_scene() const {
  Scene scene;
  scene.title = "turtle " + id_;
  Style path;
  path.stroke = "#c0392b";
  path.width = 1.5;
  auto where = [&](const Isometry2& g, const Isometry3& g3) {
    return dimension_ == 3 ? half_plane_to_disk(shadow(g3.apply(kBasePoint3)))
                           : half_plane_to_disk(g.apply(kBasePoint));
  };
  Complex last = where(identity_, identity3_);
  for (const Entry& e : history_) {
    const Complex next = where(e.state, e.state3);
    if (e.command.moves() && std::abs(next - last) > 0) scene.segment(last, next, path);
    last = next;
  }
  Style here;
  here.stroke = "#000000";
  here.radius = 3;
  scene.point(last, here);
  return scene;
}

std::string TurtleSession::to_json() const {
  nlohmann::json j;
  j["format"] = 1;
  j["id"] = id_;
  j["r"] = initial_r_;
  j["current_r"] = r();
  j["N"] = n_;
  j["dimension"] = dimension_;
  j["created"] = created_;
  nlohmann::json hist = nlohmann::json::array();
  for (const Entry& e : history_) hist.push_back(e.command.text());
  j["history"] = std::move(hist);
  return j.dump(2);
}

TurtleSession TurtleSession::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("session file: ") + e.what());
  }
  if (j.value("format", 0) != 1) throw std::invalid_argument("session file: unsupported format");
  TurtleSession s(j.at("id").get<std::string>(), j.at("r").get<double>(), j.value("N", 2),
                  j.value("dimension", 2), j.value("created", std::string()));
  // Undo never reaches the file, so replaying the history reproduces every state.
  for (const auto& line : j.at("history")) s.execute(parse_command(line.get<std::string>()));
  return s;
}

ScriptResult run_script(std::string_view text, double r, int n, int dimension) {
  ScriptResult out{TurtleSession("script", r, n, dimension), {}};
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.events.push_back(out.session.execute(parse_command(line)));
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.column(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, 1, e.what());
    }
  }
  return out;
}

}  // namespace hyperbot
