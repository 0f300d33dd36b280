#include "patchdyn/params_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "patchdyn/error.hpp"

namespace patchdyn {

namespace {

constexpr const char* kNumericKeys[] = {"r", "K1", "K2", "a1", "a2", "d1", "d2", "rho1", "rho2"};

}  // namespace

ModelParams parse_params_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed params JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("params JSON must be an object");

  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = it.key() == "variant";
    for (const char* k : kNumericKeys) known = known || it.key() == k;
    if (!known) throw InvalidInput("unknown params key: " + it.key());
  }

  ModelParams p;
  double* slots[] = {&p.r, &p.K1, &p.K2, &p.a1, &p.a2, &p.d1, &p.d2, &p.rho1, &p.rho2};
  for (std::size_t k = 0; k < std::size(kNumericKeys); ++k) {
    const char* key = kNumericKeys[k];
    if (!j.contains(key)) throw InvalidInput(std::string("missing params key: ") + key);
    if (!j[key].is_number()) throw InvalidInput(std::string("params key not a number: ") + key);
    *slots[k] = j[key].get<double>();
  }
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw InvalidInput("variant must be a string");
    const std::string v = j["variant"].get<std::string>();
    if (v == "strength")
      p.variant = Variant::StrengthDriven;
    else if (v == "density")
      p.variant = Variant::DensityDriven;
    else
      throw InvalidInput("variant must be \"strength\" or \"density\", got \"" + v + "\"");
  }
  validate(p);
  return p;
}

ModelParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open params file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_params_json(ss.str());
}

std::string params_to_json(const ModelParams& p) {
  nlohmann::json j = {{"r", p.r},       {"K1", p.K1},     {"K2", p.K2},
                      {"a1", p.a1},     {"a2", p.a2},     {"d1", p.d1},
                      {"d2", p.d2},     {"rho1", p.rho1}, {"rho2", p.rho2},
                      {"variant", std::string(to_string(p.variant))}};
  return j.dump();
}

}  // namespace patchdyn
