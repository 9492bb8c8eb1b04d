#pragma once

#include "normcyc/flat/dbl.hpp"

#include <json.hpp>

#include <string>

namespace normcyc {

using Json = nlohmann::json;

/// Bodies:
///   {"type": "polytope", "vertices": [[x, y], ...]}
///   {"type": "ball", "center": [x, y], "radius": r}
///   {"type": "parallel", "inner": {...}, "rho": r}
/// An optional "dim" must agree with the coordinates.
Body body_from_json(const Json& j);
Json to_json(const Body& K);

/// Measures: {"dim": n, "signed": bool, "atoms": [{"x": [...], "u": [...], "w": w}, ...]}.
DiscreteMeasure measure_from_json(const Json& j);
Json to_json(const DiscreteMeasure& mu);

Json to_json(const DblCertificate& c);

/// Throws `Errc::parse` on unreadable files or malformed JSON.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

Body load_body(const std::string& path);
DiscreteMeasure load_measure(const std::string& path);

} // namespace normcyc
