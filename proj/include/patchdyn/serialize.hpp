#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "patchdyn/bifurcation.hpp"
#include "patchdyn/classic.hpp"
#include "patchdyn/dynamics.hpp"
#include "patchdyn/equilibria.hpp"
#include "patchdyn/stability.hpp"

namespace patchdyn {

inline constexpr const char* kSchema = "patchdyn/1";

// Non-finite values become the strings "+inf", "-inf", "nan".
nlohmann::json json_number(double v);
double number_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModelParams& p);
nlohmann::json to_json(const Equilibrium& e);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const LyapunovReport& r);

// Every document is an object carrying "schema" and "params".
std::string equilibria_document(const ModelParams& p, const std::vector<Equilibrium>& eqs);
std::string conditions_document(const ModelParams& p, const ConditionReport& r);
std::string stability_document(const ModelParams& p, const State4& s);
std::string comparison_document(const ComparisonRecord& rec);

// Parse a document and check its schema; throws InvalidInput on mismatch.
nlohmann::json read_document(const std::string& text);
std::vector<Equilibrium> read_equilibria_document(const std::string& text);

// "%.17g"
std::string format_number(double v);

// "# schema=patchdyn/1 params=<json> seed=N"
std::string csv_header(const ModelParams& p, std::uint64_t seed);
// Throws InvalidInput if the line is not a header of this schema.
void check_csv_header(const std::string& line);

std::string trajectory_csv(const ModelParams& p, const Trajectory& tr, std::uint64_t seed = 0);
std::string sweep1d_csv(const ModelParams& p, const Sweep1D& s, std::uint64_t seed);
std::string sweep2d_csv(const ModelParams& p, const Sweep2DGrid& g, std::uint64_t seed);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Header-checked CSV reader.
CsvTable read_csv(const std::string& text);

}  // namespace patchdyn
