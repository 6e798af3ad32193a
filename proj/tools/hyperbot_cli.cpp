// Command-line front end. Every subcommand prints JSON except `render`,
// which prints SVG.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hyperbot/classifier.hpp"
#include "hyperbot/group.hpp"
#include "hyperbot/h3.hpp"
#include "hyperbot/json_io.hpp"
#include "hyperbot/render.hpp"
#include "hyperbot/service.hpp"
#include "hyperbot/tiling.hpp"
#include "hyperbot/turtle.hpp"

using namespace hyperbot;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + out_path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbot: groups generated by a step-r translation and right-angle turns"};
  app.require_subcommand(1);

  double r = 0;
  int n = 5, depth = 4, max_len = 10, dimension = 2, big_n = 2, port = 8080, threads = 2, p = 0, q = 0;
  int samples = 1000, iterations = 100;
  double eps = 1e-3;
  std::string out_path, data_dir = "sessions", scene_name, script_path;

  auto* classify_cmd = app.add_subcommand("classify", "discreteness verdict for r");
  classify_cmd->add_option("--r", r, "step length")->required();

  auto* orbit_cmd = app.add_subcommand("orbit", "breadth-first orbit and near-identity witness search");
  orbit_cmd->add_option("--r", r, "step length")->required();
  orbit_cmd->add_option("--depth", depth, "BFS depth (<= 16)");
  orbit_cmd->add_option("--max-len", max_len, "witness word length budget (0 skips the search)");
  orbit_cmd->add_option("--eps", eps, "witness distance to the identity");
  orbit_cmd->add_option("--out", out_path, "write the orbit scene SVG here");

  auto* tiling_cmd = app.add_subcommand("tiling", "tiling by copies of T_n");
  tiling_cmd->add_option("--n", n, "polygon order (>= 5)");
  tiling_cmd->add_option("--depth", depth, "word depth (<= 8)");
  tiling_cmd->add_option("--samples", samples, "interior samples per tile pair");
  tiling_cmd->add_option("--out", out_path, "write the tiling SVG here");

  auto* tree_cmd = app.add_subcommand("tree", "embedded degree-4 tree for r >= r_inf");
  tree_cmd->add_option("--r", r, "step length")->required();
  tree_cmd->add_option("--depth", depth, "word depth (<= 8)");
  tree_cmd->add_option("--out", out_path, "write the tree SVG here");

  auto* h3_cmd = app.add_subcommand("h3", "three-dimensional classification and constructions");
  h3_cmd->add_option("--r", r, "step length");
  h3_cmd->add_option("--depth", depth, "degree-6 tree depth (<= 6)");
  h3_cmd->add_option("--n", n, "lifted polyhedron order (>= 7)");

  auto* jorgensen_cmd = app.add_subcommand("jorgensen", "f(p, q) and its matrix cross-check");
  jorgensen_cmd->add_option("--p", p, "numerator")->required();
  jorgensen_cmd->add_option("--q", q, "denominator")->required();

  auto* render_cmd = app.add_subcommand("render", "SVG of a scene");
  render_cmd->add_option("scene", scene_name, "tiling | tree | orbit | iterations | polygon | hexagons")->required();
  render_cmd->add_option("--r", r, "step length");
  render_cmd->add_option("--n", n, "polygon order for tiling");
  render_cmd->add_option("--depth", depth, "depth");
  render_cmd->add_option("--iterations", iterations, "iteration count");
  render_cmd->add_option("--out", out_path, "output path (stdout by default)");

  auto* turtle_cmd = app.add_subcommand("turtle", "turtle scripts");
  auto* turtle_run = turtle_cmd->add_subcommand("run", "replay a script");
  turtle_cmd->require_subcommand(1);
  turtle_run->add_option("script", script_path, "script file")->required();
  turtle_run->add_option("--r", r, "initial step length")->required();
  turtle_run->add_option("--N", big_n, "turn divisor 2N (default 2)");
  turtle_run->add_option("--dimension", dimension, "2 or 3");
  turtle_run->add_option("--out", out_path, "write the trace SVG here");

  auto* serve_cmd = app.add_subcommand("serve", "local HTTP and WebSocket service");
  serve_cmd->add_option("--port", port, "port (0 picks a free one)");
  serve_cmd->add_option("--data-dir", data_dir, "session file directory");
  serve_cmd->add_option("--threads", threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) {
      Json j = to_json(classify(r));
      j["elliptic_order_search"] = elliptic_order(r) ? Json(*elliptic_order(r)) : Json(nullptr);
      emit(j.dump(2), "");
    } else if (orbit_cmd->parsed()) {
      const OrbitReport rep = orbit_bfs(r, depth);
      Json j{{"r", r},
             {"depth_requested", rep.depth_requested},
             {"depth_reached", rep.depth_reached},
             {"truncated", rep.truncated},
             {"states", rep.states.size()},
             {"points", rep.points.size()},
             {"dedup_count", rep.dedup_count},
             {"level_sizes", rep.level_sizes},
             {"min_separation", rep.min_separation}};
      if (max_len > 0) {
        const auto w = near_identity_witness(r, max_len, eps);
        j["witness"] = w ? Json(w->str()) : Json(nullptr);
        if (w) j["witness_distance"] = distance_to_identity(evaluate(*w, r));
      }
      if (!out_path.empty()) emit(render_svg(orbit_scene(rep)), out_path);
      emit(j.dump(2), "");
    } else if (tiling_cmd->parsed()) {
      const Tiling t = generate_tiling(n, depth);
      const auto overlaps = tiling_overlaps(t, samples);
      const auto o = o_star_census(t);
      const auto pc = p_star_census(t);
      Json j{{"n", n},
             {"depth", depth},
             {"tiles", t.triangles.size()},
             {"pairs_tested", overlaps.pairs_tested},
             {"overlapping_pairs", overlaps.overlapping_pairs},
             {"o_stars", {{"complete", o.complete_stars}, {"min", o.min_count}, {"max", o.max_count}}},
             {"p_stars", {{"complete", pc.complete_stars}, {"min", pc.min_count}, {"max", pc.max_count}}}};
      if (!out_path.empty()) emit(render_svg(tiling_scene(t)), out_path);
      emit(j.dump(2), "");
    } else if (tree_cmd->parsed()) {
      const TreeEmbedding t = tree_embedding(r, depth);
      Json j{{"r", r},
             {"depth", depth},
             {"vertices", t.vertices.size()},
             {"max_edge_error", t.max_edge_error},
             {"interior_degrees_ok", t.interior_degrees_ok},
             {"candidate_pairs", t.candidate_pairs},
             {"crossings", t.crossings}};
      if (!out_path.empty()) emit(render_svg(tree_scene(t)), out_path);
      emit(j.dump(2), "");
    } else if (h3_cmd->parsed()) {
      Json j;
      if (r > 0) {
        j["classification"] = to_json(classify3(r));
        const Tree6Regions reg = tree6_regions(r);
        j["regions"] = {{"disjoint", reg.disjoint}, {"numeric_disjoint", reg.numeric_disjoint}, {"margin", reg.margin}};
        if (r >= kRInf - kTolId) {
          const Tree6Report t = tree6_embedding(r, std::min(depth, 6));
          j["tree6"] = {{"depth", t.depth},
                        {"vertices", t.vertex_count},
                        {"interior_degrees_ok", t.interior_degrees_ok},
                        {"max_edge_error", t.max_edge_error},
                        {"stabilizer_order", t.stabilizer_order},
                        {"cosets_distinct", t.cosets_distinct},
                        {"conjugation_closed", t.conjugation_closed}};
        }
      }
      Json scan = Json::array();
      for (const auto& rep : euler_scan(3, 12)) scan.push_back(to_json(rep));
      j["euler_scan"] = std::move(scan);
      const HexagonSphereReport hex = hexagon_sphere_construction();
      j["hexagon_spheres"] = {{"orthogonal_exact", hex.orthogonal_exact},
                              {"side_quadrature", hex.side_quadrature},
                              {"side_distance", hex.side_distance},
                              {"dihedral_angle", hex.dihedral_angle},
                              {"vertex_angle", hex.vertex_angle}};
      if (n >= 7) {
        const LiftedParams lp = lifted_polyhedron_params(n);
        j["lifted"] = {{"n", lp.n}, {"s_n", lp.s_n}, {"r_n", lp.r_n}, {"t0", lp.t0}, {"t0_root", lp.t0_root}};
      }
      emit(j.dump(2), "");
    } else if (jorgensen_cmd->parsed()) {
      const double f = jorgensen_value(p, q);
      const long k = rotation_power(p, q);
      const Generators g = generators(r_of_t(static_cast<double>(p) / q));
      const Isometry2 x = (g.A * g.R).pow(static_cast<int>(k));
      emit(Json{{"p", p}, {"q", q}, {"f", f}, {"k", k}, {"lhs", jorgensen_lhs(x, g.R * g.R)}, {"violated", f < 1}}.dump(2), "");
    } else if (render_cmd->parsed()) {
      std::string svg;
      if (scene_name == "tiling") {
        svg = render_svg(tiling_scene(generate_tiling(n, depth)));
      } else if (scene_name == "tree") {
        svg = render_svg(tree_scene(tree_embedding(r > 0 ? r : kRInf + 0.05, depth)));
      } else if (scene_name == "orbit") {
        svg = render_svg(orbit_scene(orbit_bfs(r > 0 ? r : r_n(5), depth)));
      } else if (scene_name == "iterations") {
        svg = render_svg(iteration_scene(r > 0 ? r : r_of_t(2 * kPi), iterations));
      } else if (scene_name == "polygon") {
        svg = render_svg(polygon_path_scene(r > 0 ? r : r_of_t(4.5), 64));
      } else if (scene_name == "hexagons") {
        svg = render_hexagon_projection();
      } else {
        throw std::invalid_argument("unknown scene " + scene_name);
      }
      emit(svg, out_path);
    } else if (turtle_run->parsed()) {
      const ScriptResult res = run_script(read_file(script_path), r, big_n, dimension);
      Json events = Json::array();
      for (const auto& e : res.events) events.push_back(to_json(e));
      Json j = session_summary(res.session);
      j["events"] = std::move(events);
      if (!out_path.empty()) emit(render_svg(res.session.trace_scene()), out_path);
      emit(j.dump(2), "");
    } else if (serve_cmd->parsed()) {
      ServiceOptions opts;
      opts.port = static_cast<unsigned short>(port);
      opts.data_dir = data_dir;
      opts.threads = threads;
      Service service(opts);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on http://127.0.0.1:" << service.port() << std::endl;
      service.run();
      g_service = nullptr;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
