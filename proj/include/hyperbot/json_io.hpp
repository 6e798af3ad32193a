#pragma once

// JSON views of library results shared by the CLI and the service.

#include <json.hpp>

#include "hyperbot/classifier.hpp"
#include "hyperbot/group.hpp"
#include "hyperbot/h3.hpp"
#include "hyperbot/render.hpp"
#include "hyperbot/tiling.hpp"
#include "hyperbot/turtle.hpp"

namespace hyperbot {

using Json = nlohmann::json;

Json to_json(Complex z);
Json to_json(const Isometry2& g);
Json to_json(const Isometry3& g);
Json to_json(const Classification& c);
Json to_json(const Classification3& c);
Json to_json(const Arc& a);
Json to_json(const TurtleEvent& e);
Json to_json(const PolyhedronReport& p);
Json arcs_json(const Scene& scene);
// Summary of a session for API responses (not the persistence format).
Json session_summary(const TurtleSession& s);

}  // namespace hyperbot
