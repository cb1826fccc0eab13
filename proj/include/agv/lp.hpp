#pragma once

#include <utility>
#include <vector>

#include "agv/rational.hpp"

namespace agv {

using LinExpr = std::vector<std::pair<int, Rational>>;  // (variable, coefficient)

enum class Rel { LE, GE, EQ };

struct Constraint {
  LinExpr lhs;
  Rel rel = Rel::LE;
  Rational rhs;
};

// All variables are implicitly nonnegative.
struct LinearProgram {
  int num_vars = 0;
  std::vector<Constraint> constraints;
  LinExpr objective;
  bool maximize = false;

  int add_var() { return num_vars++; }
  void add(LinExpr lhs, Rel rel, Rational rhs) { constraints.push_back({std::move(lhs), rel, std::move(rhs)}); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
const char* lp_status_name(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

// Exact two-phase simplex with Bland's rule.
LpResult solve(const LinearProgram& lp);

}  // namespace agv
