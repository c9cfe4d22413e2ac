/**
 * @file jsonio.hpp
 * @brief JSON helpers: insertion-ordered objects and a compact writer that
 *        prints every float with 17 significant digits.
 */
#pragma once

#include <string>

#include "json.hpp"

namespace twq {

using Json = nlohmann::ordered_json;

/// %.17g, with "null" for non-finite values
std::string fmt17(double x);
/// compact single-line dump; floats through fmt17, everything else as nlohmann prints it
std::string dump17(const Json& j);

}  // namespace twq
