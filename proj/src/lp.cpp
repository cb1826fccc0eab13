#include "agv/lp.hpp"

#include <map>

namespace agv {

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : a_(rows, std::vector<Rational>(cols, 0)), b_(rows, 0), basis_(rows, -1), cols_(cols) {}

  std::vector<std::vector<Rational>>& a() { return a_; }
  std::vector<Rational>& b() { return b_; }
  std::vector<int>& basis() { return basis_; }

  // Minimizes cost over the current basis; columns with allowed[j] == false never enter.
  // Returns false when unbounded.
  bool minimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    for (;;) {
      reduced(cost);
      int enter = -1;
      for (int j = 0; j < cols_; ++j)
        if (allowed[j] && red_[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][enter] <= 0) continue;
        Rational ratio = b_[i] / a_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    Rational inv = 1 / a_[r][c];
    auto& row = a_[r];
    std::vector<int> nz;
    for (int j = 0; j < cols_; ++j)
      if (row[j] != 0) {
        row[j] *= inv;
        nz.push_back(j);
      }
    b_[r] *= inv;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (static_cast<int>(i) == r || a_[i][c] == 0) continue;
      Rational f = a_[i][c];
      for (int j : nz) a_[i][j] -= f * row[j];
      b_[i] -= f * b_[r];
    }
    basis_[r] = c;
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) v += cost[basis_[i]] * b_[i];
    return v;
  }

  void drop_row(int r) {
    a_.erase(a_.begin() + r);
    b_.erase(b_.begin() + r);
    basis_.erase(basis_.begin() + r);
  }

 private:
  void reduced(const std::vector<Rational>& cost) {
    red_ = cost;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < cols_; ++j)
        if (a_[i][j] != 0) red_[j] -= cb * a_[i][j];
    }
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<int> basis_;
  std::vector<Rational> red_;
  int cols_;
};

}  // namespace

LpResult solve(const LinearProgram& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.constraints.size());
  // Column layout: original variables, then one slack/surplus per inequality, then artificials.
  int slack_count = 0, art_count = 0;
  std::vector<Rel> rels(m);
  std::vector<int> sign(m, 1);
  for (int i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    Rel rel = c.rel;
    if (c.rhs < 0) {
      sign[i] = -1;
      if (rel == Rel::LE) rel = Rel::GE;
      else if (rel == Rel::GE) rel = Rel::LE;
    }
    rels[i] = rel;
    if (rel != Rel::EQ) ++slack_count;
    if (rel != Rel::LE) ++art_count;
  }
  const int cols = n + slack_count + art_count;
  Tableau t(m, cols);
  int next_slack = n, next_art = n + slack_count;
  for (int i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    for (const auto& [v, coef] : c.lhs) t.a()[i][v] += sign[i] * coef;
    t.b()[i] = sign[i] * c.rhs;
    if (rels[i] == Rel::LE) {
      t.a()[i][next_slack] = 1;
      t.basis()[i] = next_slack++;
    } else {
      if (rels[i] == Rel::GE) t.a()[i][next_slack++] = -1;
      t.a()[i][next_art] = 1;
      t.basis()[i] = next_art++;
    }
  }
  const int first_art = n + slack_count;
  std::vector<bool> allowed(cols, true);

  LpResult result;
  if (art_count > 0) {
    std::vector<Rational> phase1(cols, 0);
    for (int j = first_art; j < cols; ++j) phase1[j] = 1;
    t.minimize(phase1, allowed);
    if (t.objective(phase1) > 0) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Pivot remaining (zero-valued) artificials out of the basis or drop redundant rows.
    for (int i = static_cast<int>(t.basis().size()) - 1; i >= 0; --i) {
      if (t.basis()[i] < first_art) continue;
      int col = -1;
      for (int j = 0; j < first_art && col < 0; ++j)
        if (t.a()[i][j] != 0) col = j;
      if (col >= 0) t.pivot(i, col);
      else t.drop_row(i);
    }
    for (int j = first_art; j < cols; ++j) allowed[j] = false;
  }

  std::vector<Rational> cost(cols, 0);
  for (const auto& [v, coef] : lp.objective) cost[v] += lp.maximize ? -coef : coef;
  if (!t.minimize(cost, allowed)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, 0);
  for (std::size_t i = 0; i < t.basis().size(); ++i)
    if (t.basis()[i] < n) result.x[t.basis()[i]] = t.b()[i];
  result.value = 0;
  for (const auto& [v, coef] : lp.objective) result.value += coef * result.x[v];
  return result;
}

}  // namespace agv
