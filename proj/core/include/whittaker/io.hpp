#pragma once

#include <map>
#include <string>
#include <vector>

#include "whittaker/rational.hpp"
#include "whittaker/shape.hpp"

namespace whittaker {

/// "3,2,1" -> Shape; "50x50" -> square; "0" or "" -> empty shape.
Shape parse_shape(const std::string& s);
std::vector<long> parse_longs(const std::string& s);
std::vector<Rat> parse_rationals(const std::string& s);

/// {"shape": [...], "inner": [...], "values": [...]} (row-major values).
std::string array_to_json(const PlaneArray& pi, const Shape& outer,
                          const Shape& inner);
PlaneArray array_from_json(const std::string& text, Shape* outer_out = nullptr,
                           Shape* inner_out = nullptr);

/// CSV grid; cells outside the diagram are left empty.
std::string array_to_csv(const PlaneArray& pi);

/// Floats with 17 significant digits (round-trip exact for doubles).
std::string format_double(double x);

/// Run manifest written next to every produced artifact.
std::string manifest_json(const std::string& command,
                          const std::map<std::string, std::string>& params,
                          std::uint64_t seed,
                          const std::vector<std::string>& outputs);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace whittaker
