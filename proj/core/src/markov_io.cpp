#include "saislab/markov_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "saislab/error.hpp"

namespace saislab {

namespace {

std::vector<double> parse_mass_array(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw Error(Errc::malformed_input, what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw Error(Errc::malformed_input, what + "[" + std::to_string(i) + "] is not a number");
    }
    out.push_back(j[i].get<double>());
  }
  return out;
}

}  // namespace

MarkovChain chain_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_input, std::string("chain file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("states") || !j.contains("transition") || !j.contains("initial")) {
    throw Error(Errc::malformed_input, "chain file needs states, transition and initial fields");
  }
  if (!j["states"].is_array()) throw Error(Errc::malformed_input, "states must be an array");
  std::vector<Letter> states;
  for (std::size_t i = 0; i < j["states"].size(); ++i) {
    if (!j["states"][i].is_number_integer()) {
      throw Error(Errc::malformed_input, "states[" + std::to_string(i) + "] is not an integer");
    }
    states.push_back(j["states"][i].get<Letter>());
  }
  if (!j["transition"].is_array()) throw Error(Errc::malformed_input, "transition must be an array");
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < j["transition"].size(); ++r) {
    rows.push_back(parse_mass_array(j["transition"][r], "transition row " + std::to_string(r)));
  }
  std::vector<double> initial = parse_mass_array(j["initial"], "initial");
  return make_chain(std::move(states), std::move(rows), std::move(initial));
}

std::string chain_to_json_text(const MarkovChain& chain) {
  nlohmann::ordered_json j;
  j["states"] = chain.states;
  j["transition"] = chain.transition;
  j["initial"] = chain.initial;
  return j.dump(2);
}

MarkovChain load_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_input, "cannot open chain file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return chain_from_json_text(buf.str());
}

}  // namespace saislab
