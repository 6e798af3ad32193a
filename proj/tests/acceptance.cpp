// One line per primary acceptance criterion. Tolerances are pinned here.
//
// Exit status is 0 when every criterion passes or fails only on a known
// conflict: a literal target that contradicts the formula it is taken from.
// Those are reported as FAIL with the measured value.

#include <algorithm>
#include <array>
#include <csignal>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "hyperbot/classifier.hpp"
#include "hyperbot/group.hpp"
#include "hyperbot/h3.hpp"
#include "hyperbot/render.hpp"
#include "hyperbot/tiling.hpp"

using namespace hyperbot;
using nlohmann::json;

namespace {

constexpr double kTolConst = 1e-9;
constexpr double kTolTrace = 1e-12;
constexpr double kTolJorgensenLiteral = 1e-4;
constexpr double kTolJorgensenMatrix = 1e-8;
constexpr double kTolMarginRoot = 1e-9;
constexpr double kTolCongruent = 1e-9;
constexpr double kTolEdge = 1e-9;
constexpr double kTolHexagon = 1e-6;
constexpr double kTolLiftedLiteral = 1e-4;
constexpr double kTolLiftedRoot = 1e-8;
constexpr double kTolReplay = 1e-15;
constexpr double kServiceSeconds = 5.0;

// Witness budget fixed by a one-time oracle run at t = 9/2.
constexpr int kWitnessMaxLen = 28;
constexpr double kWitnessEps = 0.05;

struct Outcome {
  bool pass = false;
  std::string detail;
  // Every failing part is a known conflict.
  bool known_conflict = false;
};

std::string fmt(double x, int digits = 12) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

Outcome constants() {
  const double formula5 = std::acosh(1 + 2 * std::cos(2 * kPi / 5));
  const double formula6 = std::acosh(1 + 2 * std::cos(2 * kPi / 6));
  const double limit = std::acosh(1 + 2 * std::cos(2 * kPi / 1e9));
  const bool ok = std::abs(r_n(5) - 1.0612750619) < kTolConst && std::abs(r_n(5) - formula5) < kTolConst &&
                  std::abs(r_n(6) - 1.3169578969) < kTolConst && std::abs(r_n(6) - std::acosh(2.0)) < kTolConst &&
                  std::abs(r_n(6) - formula6) < kTolConst && std::abs(kRInf - 1.7627471740) < kTolConst &&
                  std::abs(kRInf - std::acosh(3.0)) < kTolConst && std::abs(kRInf - limit) < kTolConst;
  return {ok, "r_5=" + fmt(r_n(5)) + " r_6=" + fmt(r_n(6)) + " r_inf=" + fmt(kRInf)};
}

Outcome trace_identity() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(1e-3, 6);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const double r = u(rng);
    const Generators g = generators(r);
    worst = std::max(worst, std::abs((g.A * g.R).trace() - std::sqrt(2.0) * std::cosh(r / 2)));
  }
  int mismatches = 0;
  for (int k = 1; k <= 200; ++k) {
    const double r = 0.0175 * k;  // 0.0175 .. 3.5, never exactly r_inf
    const Generators g = generators(r);
    const bool elliptic = classify_isometry(g.A * g.R).kind == IsometryClass::Kind::Elliptic;
    if (elliptic != (r < kRInf)) ++mismatches;
  }
  return {worst < kTolTrace && mismatches == 0,
          "max trace error " + fmt(worst, 3) + ", elliptic mismatches " + std::to_string(mismatches) + "/200"};
}

Outcome theorem_grid() {
  const std::vector<double> dense = {0.3, 0.7, r_of_t(4.5), r_of_t(14.0 / 3), r_of_t(2 * kPi)};
  std::vector<double> discrete;
  for (int n = 5; n <= 12; ++n) discrete.push_back(r_n(n));
  discrete.insert(discrete.end(), {kRInf, 2.0, 3.0});
  int wrong = 0;
  for (double r : dense) wrong += classify(r).discrete() ? 1 : 0;
  for (double r : discrete) wrong += classify(r).discrete() ? 0 : 1;
  return {wrong == 0, std::to_string(dense.size() + discrete.size() - wrong) + "/" +
                          std::to_string(dense.size() + discrete.size()) + " verdicts correct"};
}

Outcome jorgensen() {
  const double f92 = jorgensen_value(9, 2);
  const double f51 = jorgensen_value(5, 1);
  double worst_sup = 0;
  for (long p = 9; p <= 10000; p += 2) worst_sup = std::max(worst_sup, jorgensen_value(p, 2));
  double worst_matrix = 0;
  for (auto [p, q] : {std::pair<long, long>{9, 2}, {14, 3}, {11, 2}}) {
    const Generators g = generators(r_of_t(static_cast<double>(p) / q));
    const Isometry2 x = (g.A * g.R).pow(static_cast<int>(rotation_power(p, q)));
    worst_matrix = std::max(worst_matrix, std::abs(jorgensen_lhs(x, g.R * g.R) - jorgensen_value(p, q)));
  }
  const bool ok = std::abs(f92 - 0.66456) < kTolJorgensenLiteral && f92 < 1 && worst_sup < 1 &&
                  worst_matrix < kTolJorgensenMatrix && std::abs(f51 - 2.61803) < kTolJorgensenLiteral && f51 >= 1;
  return {ok, "f(9,2)=" + fmt(f92, 8) + " max f(p,2)=" + fmt(worst_sup, 8) + " matrix error " +
                  fmt(worst_matrix, 3) + " f(5,1)=" + fmt(f51, 8)};
}

Outcome pingpong() {
  double lo = 1.5, hi = 2.0;
  if (!(pingpong_regions(lo).margin < 0 && pingpong_regions(hi).margin > 0)) return {false, "no sign change"};
  for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
    const double mid = (lo + hi) / 2;
    (pingpong_regions(mid).margin < 0 ? lo : hi) = mid;
  }
  const double root = (lo + hi) / 2;
  bool certs = true;
  std::size_t words = 0;
  for (double r : {kRInf, 2.0, 2.5}) {
    const FreeGroupCertificate c = free_group_certificate(r, 7);
    certs = certs && c.passed;
    words = c.words_checked;
  }
  const int cosets = coset_structure(2.0, 6).index;
  // Reduced {A, a, B, b} words of length 1..7: 4 (3^7 - 1) / 2.
  const bool ok = std::abs(root - kRInf) < kTolMarginRoot && certs && words == 4372 && cosets == 4;
  return {ok, "margin root " + fmt(root, 15) + ", certificates " + (certs ? "pass" : "fail") + " (" +
                  std::to_string(words) + " words each), cosets " + std::to_string(cosets)};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome tiling() {
  const Tiling t = generate_tiling(5, 4);
  const auto overlaps = tiling_overlaps(t, 1000);
  std::array<double, 3> base = fundamental_triangle(5).sides;
  std::sort(base.begin(), base.end());
  double worst = 0;
  for (const Triangle& tri : t.triangles) {
    std::array<double, 3> s = tri.sides;
    std::sort(s.begin(), s.end());
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(s[k] - base[k]));
  }
  const std::string a = render_svg(tiling_scene(t));
  const std::string b = render_svg(tiling_scene(generate_tiling(5, 4)));
  const std::string golden = read_file(std::filesystem::path(HYPERBOT_GOLDEN_DIR) / "fig_tiling_r5.svg");
  const bool ok = !t.truncated && overlaps.overlapping_pairs == 0 && worst < kTolCongruent && a == b && a == golden;
  return {ok, std::to_string(t.triangles.size()) + " tiles, " + std::to_string(overlaps.pairs_tested) +
                  " pairs tested, " + std::to_string(overlaps.overlapping_pairs) + " overlaps, side error " +
                  fmt(worst, 3) + ", svg " + (a == b ? "stable" : "unstable") +
                  (a == golden ? " and golden" : " but differs from golden")};
}

Outcome tree() {
  const TreeEmbedding t = tree_embedding(kRInf + 0.05, 5);
  return {t.max_edge_error < kTolEdge && t.interior_degrees_ok && t.vertices.size() == 485,
          std::to_string(t.vertices.size()) + " vertices, edge error " + fmt(t.max_edge_error, 3) +
              ", interior degrees " + (t.interior_degrees_ok ? "4" : "wrong")};
}

Outcome density() {
  const OrbitReport dense = orbit_bfs(r_of_t(4.5), 12);
  const OrbitReport discrete = orbit_bfs(r_n(5), 12);
  const auto witness = near_identity_witness(r_of_t(4.5), kWitnessMaxLen, kWitnessEps);
  const auto none = near_identity_witness(r_n(5), kWitnessMaxLen, kWitnessEps);
  const bool ok = !dense.truncated && !discrete.truncated &&
                  dense.min_separation < 10 * discrete.min_separation && witness && !none;
  std::string d = "separation " + fmt(dense.min_separation, 6) + " vs " + fmt(discrete.min_separation, 6);
  d += witness ? ", witness " + witness->str() + " (length " + std::to_string(witness->size()) + ")" : ", no witness";
  d += none ? ", spurious witness at r_5" : ", none at r_5";
  return {ok, d};
}

Outcome h3() {
  bool euler = true;
  for (const PolyhedronReport& p : euler_scan(3, 12)) {
    const bool dodeca = p.V == 20 && p.E == 30 && p.F == 12;
    euler = euler && dodeca == (p.n == 5);
  }
  const HexagonSphereReport h = hexagon_sphere_construction();
  bool hex = h.orthogonal_exact && std::abs(h.dihedral_angle - kPi / 2) < kTolHexagon;
  for (int k = 0; k < 6; ++k) hex = hex && std::abs(h.side_distance[k] - std::acosh(2.0)) < kTolHexagon;
  bool lifted = true;
  for (int n = 7; n <= 100; ++n) {
    const LiftedParams p = lifted_polyhedron_params(n);
    lifted = lifted && p.s_n < p.r_n;
  }
  const LiftedParams p7 = lifted_polyhedron_params(7);
  const bool t0_root = std::abs(p7.t0 - p7.t0_root) < kTolLiftedRoot;
  const bool t0_literal = std::abs(p7.t0 - 1.67018) < kTolLiftedLiteral;
  const Tree6Report t6 = tree6_embedding(2.0, 3);
  const bool tree6 = t6.interior_degrees_ok && t6.stabilizer_order == 24;
  const bool ok = euler && hex && lifted && t0_root && t0_literal && tree6;
  // t0(7) = 1.67018 disagrees with its own defining equation, whose root is
  // 1.6706903537.
  const bool conflict = euler && hex && lifted && t0_root && !t0_literal && tree6;
  std::string d = std::string("euler ") + (euler ? "ok" : "bad") + ", hexagon " + (hex ? "ok" : "bad") +
                  ", s_n<r_n " + (lifted ? "ok" : "bad") + ", t0(7)=" + fmt(p7.t0, 11) + " (root " +
                  (t0_root ? "agrees" : "disagrees") + ", literal 1.67018 off by " +
                  fmt(std::abs(p7.t0 - 1.67018), 3) + "), tree6 " + (tree6 ? "ok" : "bad");
  return {ok, d, conflict};
}

// Child process running `cli serve`, with its stdout on a pipe.
struct Server {
  pid_t pid = -1;
  int out = -1;
  int port = 0;
};

Server start_server(const std::string& cli, const std::string& dir) {
  int fds[2];
  if (pipe(fds) != 0) throw std::runtime_error("pipe failed");
  const pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    dup2(fds[1], STDOUT_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl(cli.c_str(), cli.c_str(), "serve", "--port", "0", "--data-dir", dir.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);
  Server s{pid, fds[0], 0};
  std::string line;
  char c;
  while (read(s.out, &c, 1) == 1) {
    if (c != '\n') {
      line += c;
      continue;
    }
    const auto at = line.find("listening on http://127.0.0.1:");
    if (at != std::string::npos) {
      s.port = std::stoi(line.substr(line.rfind(':') + 1));
      break;
    }
    line.clear();
  }
  if (s.port == 0) throw std::runtime_error("server did not report a port");
  return s;
}

void kill_server(Server& s) {
  kill(s.pid, SIGKILL);
  waitpid(s.pid, nullptr, 0);
  close(s.out);
}

Outcome service(const std::string& cli) {
  if (cli.empty()) return {false, "no --cli given"};
  const auto started = std::chrono::steady_clock::now();
  const auto dir = std::filesystem::temp_directory_path() / ("hyperbot_accept_" + std::to_string(getpid()));
  std::filesystem::remove_all(dir);
  const std::vector<std::string> script = {"fd", "tl", "fd", "tl", "fd", "tr", "bk", "set-r 1.3", "fd", "tl",
                                           "fd", "fd", "tr", "undo", "fd", "tl", "set-r 2.1", "fd", "tr", "fd"};
  Server first = start_server(cli, dir.string());
  std::string id;
  json before;
  {
    httplib::Client c("127.0.0.1", first.port);
    auto res = c.Post("/api/session", R"({"r": 1.0612750619})", "application/json");
    if (!res || res->status != 201) {
      kill_server(first);
      return {false, "create failed"};
    }
    id = json::parse(res->body)["id"];
    for (const std::string& cmd : script) {
      auto r = c.Post("/api/session/" + id + "/command", json{{"cmd", cmd}}.dump(), "application/json");
      if (!r || r->status != 200) {
        kill_server(first);
        return {false, "command '" + cmd + "' failed"};
      }
    }
    before = json::parse(c.Get("/api/session/" + id)->body);
  }
  kill_server(first);
  Server second = start_server(cli, dir.string());
  httplib::Client c("127.0.0.1", second.port);
  auto res = c.Get("/api/session/" + id);
  kill_server(second);
  std::filesystem::remove_all(dir);
  if (!res || res->status != 200) return {false, "session missing after restart"};
  const json after = json::parse(res->body);
  double worst = 0;
  for (int k = 0; k < 4; ++k) {
    worst = std::max(worst, std::abs(before["state"][k].get<double>() - after["state"][k].get<double>()));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const bool ok = worst <= kTolReplay && before["history"] == after["history"] && seconds < kServiceSeconds;
  return {ok, "20 commands, state difference " + fmt(worst, 3) + ", " + fmt(seconds, 3) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string cli;
  app.add_option("--cli", cli, "path to the hyperbot executable");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"constants", constants},
      {"trace-identity", trace_identity},
      {"theorem-grid", theorem_grid},
      {"jorgensen", jorgensen},
      {"pingpong", pingpong},
      {"tiling", tiling},
      {"tree", tree},
      {"density", density},
      {"h3", h3},
      {"service", [&] { return service(cli); }},
  };
  int unexpected = 0;
  for (const auto& [name, fn] : checks) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail;
    if (o.known_conflict) std::cout << " [known conflict]";
    std::cout << std::endl;
    if (!o.pass && !o.known_conflict) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
