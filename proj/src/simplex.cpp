#include "bscoop/simplex.hpp"

#include <stdexcept>

namespace bscoop {

namespace {

// Dense tableau kept in canonical form: basis columns are unit vectors and
// every rhs stays nonnegative.
struct Tableau {
  int m = 0;
  int cols = 0;
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> rhs;
  std::vector<int> basis;

  void pivot(int row, int col) {
    Rat inv = Rat(1) / a[row][col];
    for (int j = 0; j < cols; ++j) a[row][j] *= inv;
    rhs[row] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat factor = a[i][col];
      for (int j = 0; j < cols; ++j) a[i][j] -= factor * a[row][j];
      rhs[i] -= factor * rhs[row];
    }
    basis[row] = col;
  }
};

// Minimizes over the tableau with Bland's rule. cost holds reduced costs and
// obj the objective value of the current basic solution; both stay consistent
// across pivots. allowed masks columns that may enter. False when unbounded.
bool run_simplex(Tableau& t, std::vector<Rat>& cost, Rat& obj, const std::vector<bool>& allowed) {
  for (;;) {
    int entering = -1;
    for (int j = 0; j < t.cols; ++j) {
      if (allowed[j] && cost[j] < 0) {
        entering = j;
        break;  // Bland: smallest index enters
      }
    }
    if (entering < 0) return true;

    int leaving = -1;
    Rat best_ratio;
    for (int i = 0; i < t.m; ++i) {
      if (t.a[i][entering] <= 0) continue;
      Rat ratio = t.rhs[i] / t.a[i][entering];
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[i] < t.basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) return false;

    Rat cbar = cost[entering];
    obj += cbar * best_ratio;
    t.pivot(leaving, entering);
    for (int j = 0; j < t.cols; ++j) cost[j] -= cbar * t.a[leaving][j];
  }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  if (static_cast<int>(lp.objective.size()) != n)
    throw std::invalid_argument("solve_lp: objective size mismatch");

  // column layout: [structural n][slacks][artificials]
  int num_slacks = 0;
  for (const auto& row : lp.rows)
    if (row.sense != LinearProgram::Sense::Eq) ++num_slacks;

  Tableau t;
  t.m = m;
  t.cols = n + num_slacks;
  t.a.assign(m, std::vector<Rat>(t.cols));
  t.rhs.assign(m, Rat(0));
  t.basis.assign(m, -1);

  std::vector<int> slack_col(m, -1);
  int next_slack = n;
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    if (static_cast<int>(row.coeffs.size()) != n)
      throw std::invalid_argument("solve_lp: row size mismatch");
    for (int j = 0; j < n; ++j) t.a[i][j] = row.coeffs[j];
    t.rhs[i] = row.rhs;
    if (row.sense != LinearProgram::Sense::Eq) {
      slack_col[i] = next_slack++;
      t.a[i][slack_col[i]] = row.sense == LinearProgram::Sense::LessEq ? 1 : -1;
    }
    if (t.rhs[i] < 0) {
      for (int j = 0; j < t.cols; ++j) t.a[i][j] = -t.a[i][j];
      t.rhs[i] = -t.rhs[i];
    }
  }

  // rows whose slack kept coefficient +1 start basic; the rest get artificials
  std::vector<int> artificial_rows;
  for (int i = 0; i < m; ++i) {
    if (slack_col[i] >= 0 && t.a[i][slack_col[i]] == 1) {
      t.basis[i] = slack_col[i];
    } else {
      artificial_rows.push_back(i);
    }
  }
  const int num_art = static_cast<int>(artificial_rows.size());
  const int art_start = t.cols;
  t.cols += num_art;
  for (auto& row : t.a) row.resize(t.cols, Rat(0));
  for (int idx = 0; idx < num_art; ++idx) {
    t.a[artificial_rows[idx]][art_start + idx] = 1;
    t.basis[artificial_rows[idx]] = art_start + idx;
  }

  std::vector<bool> allowed(t.cols, true);

  if (num_art > 0) {
    // phase 1: minimize the artificial sum
    std::vector<Rat> cost(t.cols, Rat(0));
    Rat obj(0);
    for (int idx = 0; idx < num_art; ++idx) cost[art_start + idx] = 1;
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] >= art_start) {
        for (int j = 0; j < t.cols; ++j) cost[j] -= t.a[i][j];
        obj += t.rhs[i];
      }
    }
    if (!run_simplex(t, cost, obj, allowed))
      throw std::logic_error("solve_lp: phase 1 unbounded");
    if (obj != 0) return LpResult{LpStatus::Infeasible, Rat(0), {}};

    // drive leftover artificials (all at value zero) out of the basis
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < art_start) continue;
      for (int j = 0; j < art_start; ++j) {
        if (t.a[i][j] != 0) {
          t.pivot(i, j);
          break;
        }
      }
      // a fully zero row is redundant; its artificial stays basic at zero
    }
    for (int j = art_start; j < t.cols; ++j) allowed[j] = false;
  }

  // phase 2
  std::vector<Rat> cost(t.cols, Rat(0));
  Rat obj(0);
  for (int j = 0; j < n; ++j) cost[j] = lp.objective[j];
  for (int i = 0; i < m; ++i) {
    Rat factor = cost[t.basis[i]];
    if (factor != 0) {
      for (int j = 0; j < t.cols; ++j) cost[j] -= factor * t.a[i][j];
      obj += factor * t.rhs[i];
    }
  }
  if (!run_simplex(t, cost, obj, allowed)) return LpResult{LpStatus::Unbounded, Rat(0), {}};

  LpResult result;
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) result.x[t.basis[i]] = t.rhs[i];
  }
  result.objective_value = 0;
  for (int j = 0; j < n; ++j) result.objective_value += lp.objective[j] * result.x[j];
  return result;
}

}  // namespace bscoop
