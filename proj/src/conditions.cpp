#include "patchdyn/conditions.hpp"

#include <algorithm>
#include <string>

#include "patchdyn/classic.hpp"

namespace patchdyn {

namespace {

std::string order_tag(int i, int j) { return "(i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1) + ")"; }

// d_i / (a_j - d_i), +inf sentinel when a_j <= d_i
double threshold(const ModelParams& p, int i, int j) { return mu_of(p.site(j).a, p.site(i).d); }

// rho_j bound shared by the persistence clauses and the boundary clause uc
double rho_bound_small(const ModelParams& p, const DerivedQuantities& dq, int i, int j) {
  const Site si = p.site(i), sj = p.site(j);
  return (sj.K * (sj.a - sj.d) - sj.d) / (dq.nu[i] * (si.d - sj.K * (sj.a - si.d)));
}

Verdict flag_of(const ConditionReport& r) {
  std::vector<Verdict> v;
  for (const auto& e : r.entries) v.push_back(e.fired);
  return any_of(v);
}

}  // namespace

ConditionReport check_theorem3(const ModelParams& p) {
  const DerivedQuantities dq = derived(p);
  ConditionReport rep;
  rep.entries.push_back(Clause("Th3", "both_mu_above_K")
                            .greater(dq.mu[0], p.K1)
                            .greater(dq.mu[1], p.K2)
                            .value("mu1", dq.mu[0])
                            .value("mu2", dq.mu[1])
                            .build());
  return rep;
}

ConditionReport check_theorem4(const ModelParams& p) {
  const DerivedQuantities dq = derived(p);
  ConditionReport rep;
  // predator y_j, other patch i
  for (int j : {0, 1}) {
    const int i = 1 - j;
    const Site si = p.site(i), sj = p.site(j);
    const std::string tag = order_tag(i, j);
    const double c = threshold(p, i, j);
    const double b = rho_bound_small(p, dq, i, j);
    rep.entries.push_back(Clause("Th4", "1" + tag).less(dq.mu[j], sj.K).greater(dq.mu[i], si.K).build());
    rep.entries.push_back(Clause("Th4", "2" + tag)
                              .between(dq.hopf[i], dq.mu[i], si.K)
                              .greater(sj.K, dq.mu[j])
                              .greater(sj.K, c)
                              .value("d_i/(a_j-d_i)", c)
                              .build());
    rep.entries.push_back(Clause("Th4", "3" + tag)
                              .between(dq.hopf[i], dq.mu[i], si.K)
                              .between(dq.mu[j], sj.K, c)
                              .less(sj.rho, b)
                              .value("d_i/(a_j-d_i)", c)
                              .value("bound", b)
                              .build());
  }
  return rep;
}

ConditionReport check_theorem5(const ModelParams& p) {
  const DerivedQuantities dq = derived(p);
  ConditionReport rep;
  for (int i : {0, 1}) {
    const int j = 1 - i;
    const Site si = p.site(i), sj = p.site(j);
    const double c_ji = threshold(p, j, i);
    const double b = (si.d - si.K * (si.a - si.d)) / (dq.nu[j] * (si.K * (si.a - sj.d) - sj.d));
    rep.entries.push_back(Clause("Th5", "1" + order_tag(i, j))
                              .between(dq.hopf[j], dq.mu[j], sj.K)
                              .less(0.0, c_ji)
                              .between(c_ji, si.K, dq.mu[i])
                              .greater(si.rho, b)
                              .value("d_j/(a_i-d_j)", c_ji)
                              .value("bound", b)
                              .build());
  }
  Clause both("Th5", "2(both orders)");
  for (int i : {0, 1}) {
    const int j = 1 - i;
    const Site si = p.site(i), sj = p.site(j);
    both.between(dq.hopf[j], dq.mu[j], sj.K).greater(dq.mu[i], dq.hopf[i]).greater(si.K, dq.mu[i]).greater(
        si.K, threshold(p, j, i));
  }
  rep.entries.push_back(both.build());
  for (int i : {0, 1}) {
    const int j = 1 - i;
    const Site si = p.site(i), sj = p.site(j);
    const double c_ji = threshold(p, j, i), c_ij = threshold(p, i, j);
    const double b = rho_bound_small(p, dq, i, j);
    rep.entries.push_back(Clause("Th5", "3" + order_tag(i, j))
                              .between(dq.hopf[i], dq.mu[i], si.K)
                              .greater(si.K, dq.mu[i])
                              .greater(si.K, c_ji)
                              .between(dq.hopf[j], dq.mu[j], sj.K)
                              .less(sj.K, c_ij)
                              .less(sj.rho, b)
                              .value("bound", b)
                              .build());
  }
  return rep;
}

ConditionReport condition_report(const ModelParams& p) {
  if (p.variant == Variant::DensityDriven) return classic_condition_report(p);
  ConditionReport rep;
  const ConditionReport t3 = check_theorem3(p), t4 = check_theorem4(p), t5 = check_theorem5(p);
  rep.append(t3);
  rep.append(t4);
  rep.append(t5);
  // t4 entries are grouped by predator: y1 first, then y2
  std::vector<Verdict> y1, y2;
  for (std::size_t k = 0; k < t4.entries.size(); ++k) (k < 3 ? y1 : y2).push_back(t4.entries[k].fired);
  rep.flags.emplace_back("predator1_persistent_sufficient", any_of(y1));
  rep.flags.emplace_back("predator2_persistent_sufficient", any_of(y2));
  rep.flags.emplace_back("permanent_sufficient", flag_of(t5));
  rep.flags.emplace_back("global_BothK_sufficient", flag_of(t3));
  return rep;
}

}  // namespace patchdyn
