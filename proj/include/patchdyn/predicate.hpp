#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace patchdyn {

// Band inside which a strict comparison is reported as a boundary case.
inline constexpr double kPredicateBand = 1e-12;

enum class Verdict { False, True, Boundary };

const char* to_string(Verdict v);

// Conjunction / disjunction over three-valued verdicts.
Verdict negate(Verdict v);
Verdict all_of(std::initializer_list<Verdict> vs);
Verdict any_of(std::initializer_list<Verdict> vs);
Verdict all_of(const std::vector<Verdict>& vs);
Verdict any_of(const std::vector<Verdict>& vs);

struct ConditionEntry {
  std::string theorem;
  std::string clause;
  Verdict fired = Verdict::False;
  // Smallest signed slack of the strict comparisons (positive when all hold).
  double margin = 0.0;
  std::vector<std::pair<std::string, double>> values;
};

struct ConditionReport {
  std::vector<ConditionEntry> entries;
  std::vector<std::pair<std::string, Verdict>> flags;

  const ConditionEntry* find(const std::string& theorem, const std::string& clause) const;
  std::optional<Verdict> flag(const std::string& name) const;
  void append(const ConditionReport& other);
};

// Accumulates a conjunction of strict comparisons into one entry.
class Clause {
 public:
  Clause(std::string theorem, std::string clause);

  // lhs < rhs. NaN operands evaluate to False.
  Clause& less(double lhs, double rhs);
  Clause& greater(double lhs, double rhs) { return less(rhs, lhs); }
  // lo < x < hi
  Clause& between(double lo, double x, double hi) { return less(lo, x).less(x, hi); }
  // Fold an already evaluated sub-condition in, with its own margin.
  Clause& require(Verdict v, double margin);
  Clause& value(std::string name, double v);

  ConditionEntry build() const;
  Verdict verdict() const { return fired_; }
  double margin() const { return margin_; }

 private:
  ConditionEntry entry_;
  Verdict fired_ = Verdict::True;
  double margin_ = kInf();
  static double kInf();
};

// Indicator of a single strict comparison.
Verdict compare_less(double lhs, double rhs);
double slack_less(double lhs, double rhs);

}  // namespace patchdyn
