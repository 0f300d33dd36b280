#include "patchdyn/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "patchdyn/error.hpp"
#include "patchdyn/params_io.hpp"

namespace patchdyn {

using nlohmann::json;

json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw InvalidInput("expected a number, got " + j.dump());
}

json to_json(const ModelParams& p) { return json::parse(params_to_json(p)); }

json to_json(const Equilibrium& e) {
  json st = json::array();
  for (double v : e.state) st.push_back(json_number(v));
  json ev = json::array();
  for (const auto& z : e.eigenvalues) ev.push_back({json_number(z.real()), json_number(z.imag())});
  return {{"state", st},
          {"kind", to_string(e.kind)},
          {"eigenvalues", ev},
          {"stability", to_string(e.stability)},
          {"residual", json_number(e.residual)},
          {"degenerate", e.degenerate}};
}

json to_json(const ConditionReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json vals = json::object();
    for (const auto& [k, v] : e.values) vals[k] = json_number(v);
    entries.push_back({{"theorem", e.theorem},
                       {"clause", e.clause},
                       {"fired", to_string(e.fired)},
                       {"margin", json_number(e.margin)},
                       {"values", vals}});
  }
  json flags = json::object();
  for (const auto& [k, v] : r.flags) flags[k] = to_string(v);
  return {{"entries", entries}, {"flags", flags}};
}

json to_json(const LyapunovReport& r) {
  return {{"applicable", r.applicable},
          {"reason", r.reason},
          {"samples", r.samples},
          {"skipped", r.skipped},
          {"violations", r.violations},
          {"max_increase", json_number(r.max_increase)},
          {"max_dVdt", json_number(r.max_dVdt)},
          {"max_dVdt_display", json_number(r.max_dVdt_display)},
          {"max_display_gap", json_number(r.max_display_gap)}};
}

namespace {

json document(const ModelParams& p) { return {{"schema", kSchema}, {"params", to_json(p)}}; }

std::string finish(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string equilibria_document(const ModelParams& p, const std::vector<Equilibrium>& eqs) {
  json d = document(p);
  json arr = json::array();
  for (const auto& e : eqs) arr.push_back(to_json(e));
  d["equilibria"] = arr;
  return finish(d);
}

std::string conditions_document(const ModelParams& p, const ConditionReport& r) {
  json d = document(p);
  d["report"] = to_json(r);
  return finish(d);
}

std::string stability_document(const ModelParams& p, const State4& s) {
  const Equilibrium e = make_equilibrium(p, s, EquilibriumKind::Interior);
  const Jacobian4 J = jacobian(p, e.state);
  json d = document(p);
  json st = json::array();
  for (double v : e.state) st.push_back(json_number(v));
  json rows = json::array();
  for (const auto& row : J) {
    json r = json::array();
    for (double v : row) r.push_back(json_number(v));
    rows.push_back(r);
  }
  json ev = json::array();
  for (const auto& z : e.eigenvalues) ev.push_back({json_number(z.real()), json_number(z.imag())});
  d["state"] = st;
  d["jacobian"] = rows;
  d["eigenvalues"] = ev;
  d["stability"] = to_string(e.stability);
  d["residual"] = json_number(e.residual);
  return finish(d);
}

std::string comparison_document(const ComparisonRecord& rec) {
  auto section = [](const VariantSummary& s) {
    json eqs = json::array();
    for (const auto& e : s.equilibria) eqs.push_back(to_json(e));
    json outs = json::array();
    for (auto l : s.outcomes) outs.push_back(to_string(l));
    return json{{"params", to_json(s.params)},
                {"n_boundary", s.n_boundary},
                {"n_interior", s.n_interior},
                {"equilibria", eqs},
                {"report", to_json(s.report)},
                {"outcomes", outs}};
  };
  json d = {{"schema", kSchema}, {"seed", rec.seed}};
  d["strength"] = section(rec.strength);
  d["density"] = section(rec.density);
  return finish(d);
}

json read_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string())
    throw InvalidInput("document has no schema field");
  if (j["schema"].get<std::string>() != kSchema)
    throw InvalidInput("schema mismatch: expected " + std::string(kSchema) + ", got " + j["schema"].get<std::string>());
  return j;
}

std::vector<Equilibrium> read_equilibria_document(const std::string& text) {
  const json d = read_document(text);
  if (!d.contains("equilibria")) throw InvalidInput("document has no equilibria");
  std::vector<Equilibrium> out;
  for (const auto& e : d["equilibria"]) {
    Equilibrium q;
    for (int c = 0; c < 4; ++c) q.state[c] = number_from_json(e.at("state").at(c));
    for (int c = 0; c < 4; ++c)
      q.eigenvalues[c] = {number_from_json(e.at("eigenvalues").at(c).at(0)),
                          number_from_json(e.at("eigenvalues").at(c).at(1))};
    const std::string kind = e.at("kind").get<std::string>();
    bool found = false;
    for (int k = 0; k <= static_cast<int>(EquilibriumKind::ClassicBoundary); ++k)
      if (kind == to_string(static_cast<EquilibriumKind>(k))) {
        q.kind = static_cast<EquilibriumKind>(k);
        found = true;
      }
    if (!found) throw InvalidInput("unknown equilibrium kind " + kind);
    const std::string stab = e.at("stability").get<std::string>();
    found = false;
    for (int k = 0; k <= static_cast<int>(Stability::Marginal); ++k)
      if (stab == to_string(static_cast<Stability>(k))) {
        q.stability = static_cast<Stability>(k);
        found = true;
      }
    if (!found) throw InvalidInput("unknown stability " + stab);
    q.residual = number_from_json(e.at("residual"));
    q.degenerate = e.value("degenerate", false);
    out.push_back(q);
  }
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header(const ModelParams& p, std::uint64_t seed) {
  return std::string("# schema=") + kSchema + " params=" + to_json(p).dump() + " seed=" + std::to_string(seed) +
         "\n";
}

void check_csv_header(const std::string& line) {
  const std::string prefix = "# schema=";
  if (line.rfind(prefix, 0) != 0) throw InvalidInput("CSV has no schema header");
  const auto end = line.find(' ', prefix.size());
  const std::string got = line.substr(prefix.size(), end == std::string::npos ? std::string::npos : end - prefix.size());
  if (got != kSchema) throw InvalidInput("schema mismatch: expected " + std::string(kSchema) + ", got " + got);
}

std::string trajectory_csv(const ModelParams& p, const Trajectory& tr, std::uint64_t seed) {
  std::string out = csv_header(p, seed);
  out += "t,x1,y1,x2,y2\n";
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    out += format_number(tr.t[k]);
    for (double v : tr.states[k]) out += "," + format_number(v);
    out += "\n";
  }
  return out;
}

std::string sweep1d_csv(const ModelParams& p, const Sweep1D& s, std::uint64_t seed) {
  std::string out = csv_header(p, seed);
  out += std::string(to_string(s.param)) + ",n_interior";
  for (int k = 1; k <= 3; ++k) {
    const std::string n = std::to_string(k);
    out += ",x1_" + n + ",y1_" + n + ",x2_" + n + ",y2_" + n + ",class_" + n;
  }
  out += ",branches,region_code,outcome\n";
  for (const auto& r : s.records) {
    out += format_number(r.value1) + "," + std::to_string(r.interior.size());
    for (std::size_t k = 0; k < 3; ++k) {
      if (k < r.interior.size()) {
        for (double v : r.interior[k].state) out += "," + format_number(v);
        out += std::string(",") + to_string(r.interior[k].stability);
      } else {
        out += ",,,,,";
      }
    }
    std::string br;
    for (std::size_t k = 0; k < r.branch.size(); ++k) br += (k ? ";" : "") + std::to_string(r.branch[k]);
    out += "," + br + "," + std::to_string(static_cast<int>(r.region)) + "," + to_string(r.outcome) + "\n";
  }
  return out;
}

std::string sweep2d_csv(const ModelParams& p, const Sweep2DGrid& g, std::uint64_t seed) {
  std::string out = csv_header(p, seed);
  out += std::string(to_string(g.param1)) + "," + to_string(g.param2) + ",n_interior,region_code,outcome_code\n";
  for (const auto& r : g.records) {
    out += format_number(r.value1) + "," + format_number(r.value2) + "," + std::to_string(r.interior.size()) + "," +
           std::to_string(static_cast<int>(r.region)) + "," + std::to_string(static_cast<int>(r.outcome)) + "\n";
  }
  return out;
}

CsvTable read_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty CSV");
  check_csv_header(line);
  CsvTable t;
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::string cur;
    for (char c : l) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    f.push_back(cur);
    return f;
  };
  if (!std::getline(in, line)) throw InvalidInput("CSV has no column line");
  t.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.rows.push_back(split(line));
    if (t.rows.back().size() != t.columns.size()) throw InvalidInput("CSV row width mismatch");
  }
  return t;
}

}  // namespace patchdyn
