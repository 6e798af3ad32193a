#include "hyperbot/json_io.hpp"

#include <cmath>

namespace hyperbot {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Isometry2& g) { return Json::array({g.a(), g.b(), g.c(), g.d()}); }

Json to_json(const Isometry3& g) {
  return Json::array({to_json(g.a()), to_json(g.b()), to_json(g.c()), to_json(g.d())});
}

Json to_json(const Classification& c) {
  Json j;
  j["verdict"] = c.verdict_name();
  j["discrete"] = c.discrete();
  j["r"] = c.r;
  j["banner"] = c.banner();
  switch (c.verdict) {
    case Classification::Verdict::DiscretePolygonal: j["n"] = c.n; break;
    case Classification::Verdict::DiscreteTree: j["critical"] = c.critical; break;
    case Classification::Verdict::DenseRational:
      j["p"] = c.p;
      j["q"] = c.q;
      break;
    case Classification::Verdict::DenseIrrational: break;
  }
  if (c.t) j["t"] = *c.t;
  Json cert = Json::object();
  if (c.rotation_angle) cert["rotation_angle"] = *c.rotation_angle;
  cert["elliptic_order"] = c.elliptic_order ? Json(*c.elliptic_order) : Json(nullptr);
  if (c.jorgensen_value) cert["jorgensen_value"] = *c.jorgensen_value;
  if (c.pingpong_margin) cert["pingpong_margin"] = *c.pingpong_margin;
  j["certificates"] = std::move(cert);
  return j;
}

Json to_json(const Classification3& c) {
  Json j = to_json(c.planar);
  j["covolume"] = c.covolume;
  return j;
}

Json to_json(const Arc& a) {
  Json j;
  j["from"] = to_json(a.from);
  j["to"] = to_json(a.to);
  j["chord"] = a.chord;
  if (!a.chord) {
    j["center"] = to_json(a.center);
    j["radius"] = a.radius;
    j["start_angle"] = a.start_angle;
    j["end_angle"] = a.end_angle;
  }
  j["length"] = a.length;
  return j;
}

Json to_json(const TurtleEvent& e) {
  Json j;
  j["step"] = e.step;
  j["command"] = e.command.text();
  j["position"] = to_json(e.position);
  if (e.position3) j["position3"] = Json::array({e.position3->z.real(), e.position3->z.imag(), e.position3->h});
  j["revisit"] = e.revisit;
  j["revisit_of"] = e.revisit_of ? Json(*e.revisit_of) : Json(nullptr);
  j["r"] = e.r;
  j["banner"] = e.banner;
  return j;
}

Json to_json(const PolyhedronReport& p) {
  Json j;
  j["n"] = p.n;
  j["kind"] = p.kind_name();
  auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  j["V"] = opt(p.V);
  j["E"] = opt(p.E);
  j["F"] = opt(p.F);
  if (p.s_n) j["s_n"] = *p.s_n;
  if (p.t0) j["t0"] = *p.t0;
  return j;
}

Json arcs_json(const Scene& scene) {
  Json arcs = Json::array();
  for (const Arc& a : scene_arcs(scene)) arcs.push_back(to_json(a));
  Json points = Json::array();
  for (const Primitive& item : scene.items) {
    if (const auto* p = std::get_if<ScenePoint>(&item)) points.push_back(to_json(p->at));
  }
  return {{"arcs", std::move(arcs)}, {"points", std::move(points)}};
}

Json session_summary(const TurtleSession& s) {
  Json j;
  j["id"] = s.id();
  j["r"] = s.r();
  j["initial_r"] = s.initial_r();
  j["N"] = s.n();
  j["dimension"] = s.dimension();
  j["created"] = s.created();
  j["step"] = s.history().size();
  j["position"] = to_json(s.position());
  j["state"] = s.dimension() == 3 ? to_json(s.state3()) : to_json(s.state());
  j["banner"] = s.banner();
  j["classification"] = s.n() == 2 ? to_json(classify(s.r())) : Json(nullptr);
  Json hist = Json::array();
  for (const auto& e : s.history()) hist.push_back(e.command.text());
  j["history"] = std::move(hist);
  return j;
}

}  // namespace hyperbot
