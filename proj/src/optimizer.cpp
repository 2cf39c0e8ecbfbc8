#include "bscoop/optimizer.hpp"

#include "bscoop/simplex.hpp"

#include <stdexcept>

namespace bscoop {

namespace {

struct LayerSums {
  Rat weighted;  // sum_{l <= rho} w_l r_l
  Rat plain;     // sum_{l <= rho} r_l
};

LayerSums layer_sums(const SystemParams& p, const std::vector<Rat>& r, int rho) {
  if (rho < 0 || rho > p.M) throw std::out_of_range("rho must be in [0, M]");
  if (static_cast<int>(r.size()) < rho) throw std::invalid_argument("r shorter than rho");
  LayerSums sums{Rat(0), Rat(0)};
  for (int l = 0; l < rho; ++l) {
    if (r[l] < 0 || r[l] > p.b[l]) throw std::invalid_argument("r_l outside [0, b_l]");
    sums.weighted += p.w[l] * r[l];
    sums.plain += r[l];
  }
  return sums;
}

}  // namespace

OperatingPoint mscr_point(const SystemParams& p, const std::vector<Rat>& r, int rho) {
  LayerSums sums = layer_sums(p, r, rho);
  Rat denom = Rat(p.k) * (Rat(p.d) + sums.plain + p.t - p.k);
  if (denom <= 0) throw std::domain_error("mscr_point: requires d + sum r + t > k");
  OperatingPoint point;
  point.alpha = p.F / p.k;
  point.gamma = p.F * (Rat(p.d) + sums.weighted + p.t - 1) / denom;
  Rat beta = p.F / denom;
  point.witness = make_variables(p, beta, beta, r, rho);
  return point;
}

OperatingPoint mbccr_point(const SystemParams& p, const std::vector<Rat>& r, int rho) {
  LayerSums sums = layer_sums(p, r, rho);
  Rat denom = Rat(p.k) * (2 * (Rat(p.d) + sums.plain) + p.t - p.k);
  if (denom <= 0) throw std::domain_error("mbccr_point: non-positive denominator");
  OperatingPoint point;
  point.gamma = p.F * (2 * (Rat(p.d) + sums.weighted) + p.t - 1) / denom;
  point.alpha = p.F * (2 * (Rat(p.d) + sums.plain) + p.t - 1) / denom;
  Rat beta = 2 * p.F / denom;
  point.witness = make_variables(p, beta, beta / 2, r, rho);
  return point;
}

Rat prop1_threshold(const SystemParams& p, PointKind kind, const Rat& d_bar, const Rat& b_bar) {
  Rat num, den;
  if (kind == PointKind::MSCR) {
    num = d_bar + p.t - 1;
    den = b_bar + p.t - p.k;
  } else {
    num = 2 * d_bar + p.t - 1;
    den = 2 * b_bar + p.t - p.k;
  }
  if (den <= 0) throw std::domain_error("prop1_threshold: non-positive denominator");
  return num / den;
}

bool prop1_holds(const SystemParams& p, const std::vector<Rat>& r, int rho, PointKind kind) {
  LayerSums sums = layer_sums(p, r, rho);
  Rat w_bar = prop1_threshold(p, kind, Rat(p.d), Rat(p.d));
  return sums.weighted <= w_bar * sums.plain;
}

int opt_bs_count(const SystemParams& p, PointKind kind) {
  int rho_min = 0;
  Rat d_bar(p.d), b_bar(p.d);
  for (int i = 0; i < p.M; ++i) {
    Rat w_bar = prop1_threshold(p, kind, d_bar, b_bar);
    if (p.w[i] > w_bar) break;
    ++rho_min;
    d_bar += p.w[i] * p.b[i];
    b_bar += p.b[i];
  }
  return rho_min;
}

std::pair<OperatingPoint, OperatingPoint> optimal_points(const SystemParams& p) {
  int rho_mscr = opt_bs_count(p, PointKind::MSCR);
  int rho_mbccr = opt_bs_count(p, PointKind::MBCCR);
  return {mscr_point(p, p.b, rho_mscr), mbccr_point(p, p.b, rho_mbccr)};
}

namespace {

// One regime of the linearized program for a fixed prefix selector.
// Variables x = (beta, beta', z_1..z_rho) with z_l = r_l * beta.
LpResult solve_regime(const SystemParams& p, const Rat& alpha, int rho, bool beta_dominant) {
  LinearProgram lp;
  lp.num_vars = 2 + rho;
  lp.objective.assign(lp.num_vars, Rat(0));
  lp.objective[0] = Rat(p.d);
  lp.objective[1] = Rat(p.t - 1);
  for (int l = 0; l < rho; ++l) lp.objective[2 + l] = p.w[l];

  // recoverability rows, one per g in 1..k (g = 0 is the alpha*k >= F gate)
  for (int g = 1; g <= p.k; ++g) {
    std::vector<Rat> coeffs(lp.num_vars, Rat(0));
    Rat gr(g);
    if (beta_dominant) {
      coeffs[0] = gr * (Rat(p.d) - p.k) + gr * (gr + 1) / 2;
      coeffs[1] = gr * (p.t - 1);
    } else {
      Rat correction = psi(g, p.t);
      coeffs[0] = gr * (Rat(p.d) - p.k + gr / 2) + correction / 2;
      coeffs[1] = gr * p.t - correction;
    }
    for (int l = 0; l < rho; ++l) coeffs[2 + l] = gr;
    lp.add_row(std::move(coeffs), LinearProgram::Sense::GreaterEq, p.F - alpha * (p.k - g));
  }

  // download caps
  {
    std::vector<Rat> c(lp.num_vars, Rat(0));
    c[0] = 1;
    lp.add_row(c, LinearProgram::Sense::LessEq, p.F / p.d);
    std::fill(c.begin(), c.end(), Rat(0));
    c[1] = 1;
    lp.add_row(c, LinearProgram::Sense::LessEq, p.F / p.d);
  }

  // link capacities z_l <= b_l * beta
  for (int l = 0; l < rho; ++l) {
    std::vector<Rat> c(lp.num_vars, Rat(0));
    c[2 + l] = 1;
    c[0] = -p.b[l];
    lp.add_row(std::move(c), LinearProgram::Sense::LessEq, Rat(0));
  }

  // regime plane: beta >= 2 beta' or beta <= 2 beta'
  {
    std::vector<Rat> c(lp.num_vars, Rat(0));
    c[0] = 1;
    c[1] = -2;
    lp.add_row(std::move(c),
               beta_dominant ? LinearProgram::Sense::GreaterEq : LinearProgram::Sense::LessEq,
               Rat(0));
  }

  return solve_lp(lp);
}

}  // namespace

OperatingPoint min_cost_at_storage(const SystemParams& p, const Rat& alpha) {
  auto violations = validate_params(p);
  if (!violations.empty())
    throw std::invalid_argument("min_cost_at_storage: " + violations.front());
  if (alpha * p.k < p.F)
    throw std::domain_error("min_cost_at_storage: alpha below F/k is infeasible");

  bool have_best = false;
  Rat best_cost;
  RepairVariables best_witness;
  for (int rho = 0; rho <= p.M; ++rho) {
    for (bool beta_dominant : {false, true}) {
      LpResult res = solve_regime(p, alpha, rho, beta_dominant);
      if (res.status != LpStatus::Optimal) continue;
      if (have_best && res.objective_value >= best_cost) continue;
      have_best = true;
      best_cost = res.objective_value;
      std::vector<Rat> r(rho, Rat(0));
      if (res.x[0] > 0) {
        for (int l = 0; l < rho; ++l) r[l] = res.x[2 + l] / res.x[0];
      }
      best_witness = make_variables(p, res.x[0], res.x[1], r, rho);
    }
  }
  if (!have_best) throw std::domain_error("min_cost_at_storage: no feasible assignment");

  OperatingPoint point;
  point.alpha = alpha;
  point.gamma = best_cost;
  point.witness = best_witness;
  return point;
}

std::vector<OperatingPoint> tradeoff_curve(const SystemParams& p, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("tradeoff_curve: grid_size >= 2");
  auto [mscr, mbccr] = optimal_points(p);
  Rat lo = mscr.alpha;
  Rat hi = mbccr.alpha;
  std::vector<OperatingPoint> curve;
  curve.reserve(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    Rat alpha = lo + (hi - lo) * i / (grid_size - 1);
    curve.push_back(min_cost_at_storage(p, alpha));
  }
  return curve;
}

BaselineCosts baseline_costs(const SystemParams& p, const Rat& beta, const std::vector<Rat>& r) {
  if (p.M != 2) throw std::invalid_argument("baseline_costs: two-layer scenario required");
  if (beta <= 0) throw std::invalid_argument("baseline_costs: beta must be positive");

  BaselineCosts costs;
  costs.no_coop_local = p.F;
  costs.coop_local = mscr_point(p, {}, 0).gamma;
  RepairVariables layered = make_variables(p, beta, beta, r, p.M);
  costs.coop_layer = repair_cost(p, layered);
  Rat alpha = p.F / p.k;
  costs.full_layer = p.b[0] * beta * p.w[0] + (alpha - p.b[0] * beta) * p.w[1];
  return costs;
}

}  // namespace bscoop
