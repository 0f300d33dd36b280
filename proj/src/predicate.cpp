#include "patchdyn/predicate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace patchdyn {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Boundary: return "boundary";
  }
  return "false";
}

Verdict negate(Verdict v) {
  if (v == Verdict::Boundary) return v;
  return v == Verdict::True ? Verdict::False : Verdict::True;
}

Verdict all_of(const std::vector<Verdict>& vs) {
  bool boundary = false;
  for (Verdict v : vs) {
    if (v == Verdict::False) return Verdict::False;
    boundary = boundary || v == Verdict::Boundary;
  }
  return boundary ? Verdict::Boundary : Verdict::True;
}

Verdict any_of(const std::vector<Verdict>& vs) {
  bool boundary = false;
  for (Verdict v : vs) {
    if (v == Verdict::True) return Verdict::True;
    boundary = boundary || v == Verdict::Boundary;
  }
  return boundary ? Verdict::Boundary : Verdict::False;
}

Verdict all_of(std::initializer_list<Verdict> vs) { return all_of(std::vector<Verdict>(vs)); }
Verdict any_of(std::initializer_list<Verdict> vs) { return any_of(std::vector<Verdict>(vs)); }

double slack_less(double lhs, double rhs) {
  if (std::isnan(lhs) || std::isnan(rhs)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(lhs) && std::isinf(rhs) && lhs == rhs) return 0.0;
  return rhs - lhs;
}

Verdict compare_less(double lhs, double rhs) {
  const double s = slack_less(lhs, rhs);
  if (std::isnan(s)) return Verdict::False;
  // Two equal infinities are not comparable strictly.
  if (std::isinf(lhs) && lhs == rhs) return Verdict::False;
  if (std::fabs(s) < kPredicateBand) return Verdict::Boundary;
  return s > 0.0 ? Verdict::True : Verdict::False;
}

const ConditionEntry* ConditionReport::find(const std::string& theorem, const std::string& clause) const {
  for (const auto& e : entries)
    if (e.theorem == theorem && e.clause == clause) return &e;
  return nullptr;
}

std::optional<Verdict> ConditionReport::flag(const std::string& name) const {
  for (const auto& [k, v] : flags)
    if (k == name) return v;
  return std::nullopt;
}

void ConditionReport::append(const ConditionReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  flags.insert(flags.end(), other.flags.begin(), other.flags.end());
}

double Clause::kInf() { return std::numeric_limits<double>::infinity(); }

Clause::Clause(std::string theorem, std::string clause) {
  entry_.theorem = std::move(theorem);
  entry_.clause = std::move(clause);
}

Clause& Clause::less(double lhs, double rhs) {
  return require(compare_less(lhs, rhs), slack_less(lhs, rhs));
}

Clause& Clause::require(Verdict v, double margin) {
  fired_ = all_of({fired_, v});
  if (std::isnan(margin) || std::isnan(margin_))
    margin_ = std::numeric_limits<double>::quiet_NaN();
  else
    margin_ = std::min(margin_, margin);
  return *this;
}

Clause& Clause::value(std::string name, double v) {
  entry_.values.emplace_back(std::move(name), v);
  return *this;
}

ConditionEntry Clause::build() const {
  ConditionEntry e = entry_;
  e.fired = fired_;
  e.margin = margin_;
  return e;
}

}  // namespace patchdyn
