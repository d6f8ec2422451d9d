#pragma once

#include <string>
#include <utility>
#include <vector>

namespace normlab {

/// Ordered key-value record of the parameters that produced an object.
using Manifest = std::vector<std::pair<std::string, std::string>>;

std::string format_number(double value);
std::string manifest_json(const Manifest& manifest);

}  // namespace normlab
