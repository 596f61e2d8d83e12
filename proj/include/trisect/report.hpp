#pragma once

// JSON payloads for every command, and the envelope around them.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "trisect/classify.hpp"
#include "trisect/complex.hpp"
#include "trisect/kirby.hpp"
#include "trisect/surface.hpp"

namespace trisect {

using Json = nlohmann::json;

Json to_json(const ValidationReport& r);
Json to_json(const FramedLinkDiagram& link);
Json to_json(const LinkingMatrix& q);
Json to_json(const LoopReport& r);
Json to_json(const LengthBound& b);
Json to_json(const Decomposition& d);

// Pairwise algebraic and geometric intersections of all curves.
Json intersection_table(const TrisectionDiagram& d);

// Lowercase hex SHA-256 of the inputs joined by NUL bytes.
std::string input_hash(const std::vector<std::string>& inputs);

Json envelope(std::string_view command, const std::string& hash, Json result, std::vector<std::string> warnings);

// Stable text form: two-space indent, sorted keys, trailing newline.
std::string dump(const Json& j);

}  // namespace trisect
