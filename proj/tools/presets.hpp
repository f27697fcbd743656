#pragma once

#include <string>
#include <vector>

#include "fpinn/config.hpp"

namespace fpinn::cli {

// Named experiment presets. Grid cells are generated from the name pattern:
//   table1-{small|large}-{mc1|mc2|gj1|gj2}-m{M}
//   table2-a{alpha}-k{K}-l{lambda}-{scheme}-m{M}
//   burgers-a{alpha}-{scheme}-{rad|uniform}
// plus fixed desk-scale entries (accept5-reduced, accept8-eq24,
// accept8-burgers-{rad,unif}, smoke).
IniConfig preset_config(const std::string& name);

/// Representative preset names for --list-presets (patterns plus fixed ones).
std::vector<std::string> preset_examples();

}  // namespace fpinn::cli
