// patchdyn: command-line front end. Data goes to --out (or stdout),
// diagnostics to stderr. Exit codes: 0 ok, 2 usage/input, 3 numerical failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "patchdyn/bifurcation.hpp"
#include "patchdyn/classic.hpp"
#include "patchdyn/conditions.hpp"
#include "patchdyn/equilibria.hpp"
#include "patchdyn/error.hpp"
#include "patchdyn/params_io.hpp"
#include "patchdyn/serialize.hpp"
#include "patchdyn/stability.hpp"

using namespace patchdyn;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string params;
  std::string out;
  std::uint64_t seed = 1;
};

State4 parse_state(const std::string& s) {
  State4 out{};
  std::stringstream ss(s);
  std::string tok;
  int k = 0;
  while (std::getline(ss, tok, ',')) {
    if (k >= 4) throw InvalidInput("state '" + s + "': expected 4 comma-separated values");
    std::size_t used = 0;
    try {
      out[k] = std::stod(tok, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw InvalidInput("state '" + s + "': bad number '" + tok + "'");
    ++k;
  }
  if (k != 4) throw InvalidInput("state '" + s + "': expected 4 comma-separated values");
  return out;
}

void emit(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file '" + path + "'");
  f << data;
  f.close();
  if (!f) throw InvalidInput("failed writing output file '" + path + "'");
}

std::string conditions_table(const ConditionReport& r) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %-28s %-9s %s\n", "thm", "clause", "fired", "margin");
  os << line;
  for (const auto& e : r.entries) {
    std::snprintf(line, sizeof line, "%-6s %-28s %-9s %s\n", e.theorem.c_str(), e.clause.c_str(),
                  to_string(e.fired), format_number(e.margin).c_str());
    os << line;
  }
  os << "\n";
  for (const auto& [k, v] : r.flags) os << k << " = " << to_string(v) << "\n";
  return os.str();
}

// Everything the strength model has predicates for; the density model has its own report.
ConditionReport full_report(const ModelParams& p) {
  ConditionReport r = condition_report(p);
  if (p.variant != Variant::StrengthDriven) return r;
  r.append(theorem6_existence_report(p));
  const DerivedQuantities dq = derived(p);
  for (int i = 0; i < 2; ++i) {
    if (!(dq.mu[i] > 0.0 && dq.mu[i] < p.site(i).K)) continue;
    const BoundaryPredicateReport b = theorem2_boundary_predicates(p, i);
    r.append(b.report);
    r.flags.emplace_back("Eb" + std::to_string(i + 1) + "2_eigen_agrees", b.agrees ? Verdict::True : Verdict::False);
  }
  return r;
}

std::string defaults_text() {
  const IntegratorOptions io;
  const ClassifyOptions co;
  const SweepOptions so;
  std::ostringstream os;
  os << "abs_tol = " << format_number(io.abs_tol) << "\n"
     << "rel_tol = " << format_number(io.rel_tol) << "\n"
     << "max_step = " << format_number(io.max_step) << "\n"
     << "initial_step = " << format_number(io.initial_step) << "\n"
     << "simulate.t_end = 100\n"
     << "simulate.sample_dt = 0.5\n"
     << "transient = " << format_number(co.transient) << "\n"
     << "window = " << format_number(co.window) << "\n"
     << "equilibrium_tol = " << format_number(co.equilibrium_tol) << "\n"
     << "cycle_amplitude = " << format_number(co.cycle_amplitude) << "\n"
     << "min_sign_changes = " << co.min_sign_changes << "\n"
     << "extinct = " << format_number(co.extinct) << "\n"
     << "probes (zero-count cells) = " << so.probes_zero << "\n"
     << "probes_interior = " << so.probes_interior << "\n"
     << "seed = " << so.seed << "\n"
     << "threads = 0 (PATCHDYN_THREADS, else hardware concurrency)\n"
     << "sweep1d.range = 0:0.5:101\n"
     << "sweep2d.rho1 = 0:0.5:100\n"
     << "sweep2d.rho2 = 0:0.05:100\n"
     << "compare.probes = 5\n"
     << "schema = " << kSchema << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"patchdyn: two-patch predator-prey models with predator dispersal"};
  app.require_subcommand(0, 1);
  bool show_defaults = false;
  app.add_flag("--show-defaults", show_defaults, "Print default settings and exit");

  Common c;
  auto add_common = [&](CLI::App* sub, bool seed) {
    sub->add_option("--params", c.params, "Parameter JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "Output file (default stdout)");
    if (seed) sub->add_option("--seed", c.seed, "Probe RNG seed")->capture_default_str();
  };

  IntegratorOptions iopt;
  iopt.sample_dt = 0.5;
  ClassifyOptions copt;
  SweepOptions sopt;
  int threads = 0;
  auto add_horizon = [&](CLI::App* sub) {
    sub->add_option("--transient", copt.transient, "Transient length before the classification window")
        ->capture_default_str();
    sub->add_option("--window", copt.window, "Classification window length")->capture_default_str();
  };

  auto* sim = app.add_subcommand("simulate", "Integrate one trajectory to CSV");
  add_common(sim, true);
  std::string init;
  double t_end = 100.0;
  sim->add_option("--init", init, "Initial state x1,y1,x2,y2")->required();
  sim->add_option("--t-end", t_end, "Final time")->capture_default_str();
  sim->add_option("--sample-dt", iopt.sample_dt, "Output spacing (0: every accepted step)")->capture_default_str();
  sim->add_option("--abs-tol", iopt.abs_tol)->capture_default_str();
  sim->add_option("--rel-tol", iopt.rel_tol)->capture_default_str();
  sim->add_option("--max-step", iopt.max_step)->capture_default_str();

  auto* eqs = app.add_subcommand("equilibria", "List boundary and interior equilibria as JSON");
  add_common(eqs, false);

  auto* stab = app.add_subcommand("stability", "Jacobian, eigenvalues and class at a state");
  add_common(stab, false);
  std::string at_state;
  int at_index = -1;
  auto* o_state = stab->add_option("--state", at_state, "State x1,y1,x2,y2");
  auto* o_at = stab->add_option("--at", at_index, "Index into the equilibria list");
  o_state->excludes(o_at);
  o_at->excludes(o_state);

  auto* cond = app.add_subcommand("conditions", "Evaluate theorem hypotheses");
  add_common(cond, false);
  bool json_out = false;
  cond->add_flag("--json", json_out, "Machine-readable output");

  auto* s1 = app.add_subcommand("sweep1d", "One-parameter sweep to CSV");
  add_common(s1, true);
  std::string vary = "rho1", range = "0:0.5:101";
  s1->add_option("--vary", vary, "rho1 | rho2 | a1 | a2")->capture_default_str();
  s1->add_option("--range", range, "min:max:steps")->capture_default_str();
  s1->add_option("--probes", sopt.probes_zero, "Probe simulations at zero-count points")->capture_default_str();
  s1->add_option("--probes-interior", sopt.probes_interior, "Probe simulations elsewhere")->capture_default_str();
  add_horizon(s1);

  auto* s2 = app.add_subcommand("sweep2d", "Two-parameter region map to CSV");
  add_common(s2, true);
  std::string ax1 = "0:0.5:100", ax2 = "0:0.05:100";
  s2->add_option("--rho1", ax1, "min:max:steps")->capture_default_str();
  s2->add_option("--rho2", ax2, "min:max:steps")->capture_default_str();
  s2->add_option("--probes", sopt.probes_zero, "Probe simulations in zero-count cells")->capture_default_str();
  s2->add_option("--probes-interior", sopt.probes_interior, "Probe simulations elsewhere")->capture_default_str();
  s2->add_option("--threads", threads, "Worker threads (0: PATCHDYN_THREADS or all cores)")->capture_default_str();
  add_horizon(s2);

  auto* cmp = app.add_subcommand("compare", "Run both dispersal variants side by side");
  add_common(cmp, true);
  int cmp_probes = 5;
  cmp->add_option("--probes", cmp_probes, "Probe simulations per variant")->capture_default_str();
  add_horizon(cmp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (show_defaults) {
      std::cout << defaults_text();
      return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return kExitUsage;
    }
    const ModelParams p = load_params_file(c.params);

    if (sim->parsed()) {
      const State4 s0 = parse_state(init);
      const Trajectory tr = integrate(p, s0, t_end, iopt);
      if (tr.status != IntegratorStatus::Completed) std::cerr << "warning: step limit reached\n";
      emit(c.out, trajectory_csv(p, tr, c.seed));
    } else if (eqs->parsed()) {
      emit(c.out, equilibria_document(p, all_equilibria(p)));
    } else if (stab->parsed()) {
      State4 s{};
      if (!at_state.empty()) {
        s = parse_state(at_state);
      } else if (at_index >= 0) {
        const auto list = all_equilibria(p);
        if (at_index >= static_cast<int>(list.size()))
          throw InvalidInput("--at " + std::to_string(at_index) + ": only " + std::to_string(list.size()) +
                             " equilibria");
        s = list[at_index].state;
      } else {
        throw InvalidInput("stability: give --state or --at");
      }
      emit(c.out, stability_document(p, s));
    } else if (cond->parsed()) {
      const ConditionReport r = full_report(p);
      emit(c.out, json_out ? conditions_document(p, r) : conditions_table(r));
    } else if (s1->parsed()) {
      sopt.seed = c.seed;
      sopt.classify = copt;
      const Sweep1D s = sweep1d(p, parse_sweep_param(vary), parse_axis(range), sopt);
      emit(c.out, sweep1d_csv(p, s, c.seed));
    } else if (s2->parsed()) {
      sopt.seed = c.seed;
      sopt.classify = copt;
      sopt.threads = threads;
      const Sweep2DGrid g = sweep2d(p, parse_axis(ax1), parse_axis(ax2), sopt);
      emit(c.out, sweep2d_csv(p, g, c.seed));
    } else if (cmp->parsed()) {
      CompareOptions o;
      o.probes = cmp_probes;
      o.seed = c.seed;
      o.classify = copt;
      emit(c.out, comparison_document(compare_models(p, o)));
    }
  } catch (const NumericalFailure& e) {
    std::cerr << "patchdyn: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "patchdyn: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
