#pragma once

#include <string>

#include "saislab/markov.hpp"

namespace saislab {

/// Chain spec file: { "states": [letter ids], "transition": [[rows]],
/// "initial": [masses] }. Validation errors name the offending row/entry.
MarkovChain chain_from_json_text(const std::string& text);
std::string chain_to_json_text(const MarkovChain& chain);
MarkovChain load_chain_file(const std::string& path);

}  // namespace saislab
