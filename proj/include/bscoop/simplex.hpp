#pragma once

#include "bscoop/rational.hpp"

#include <vector>

namespace bscoop {

// Small dense linear program over exact rationals. All variables are
// implicitly >= 0; put upper bounds in as rows.
struct LinearProgram {
  enum class Sense { LessEq, GreaterEq, Eq };
  struct Row {
    std::vector<Rat> coeffs;
    Sense sense = Sense::LessEq;
    Rat rhs;
  };

  int num_vars = 0;
  std::vector<Rat> objective;  // minimized
  std::vector<Row> rows;

  void add_row(std::vector<Rat> coeffs, Sense sense, Rat rhs) {
    rows.push_back(Row{std::move(coeffs), sense, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat objective_value;
  std::vector<Rat> x;
};

// Two-phase primal simplex with Bland's rule; exact, terminating, no scaling.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace bscoop
