#pragma once

#include "bscoop/bounds.hpp"
#include "bscoop/model.hpp"

#include <utility>
#include <vector>

namespace bscoop {

enum class PointKind { MSCR, MBCCR };

// Minimum-storage point for a given BS usage: alpha = F/k,
// gamma = F*(d + sum w_l r_l + t - 1) / (k*(d + sum r_l + t - k)),
// witness beta = beta' = F / (k*(d + sum r_l + t - k)).
OperatingPoint mscr_point(const SystemParams& p, const std::vector<Rat>& r, int rho);

// Minimum-bandwidth-cost point: gamma and alpha share the denominator
// k*(2*(d + sum r_l) + t - k); witness beta' = beta/2.
OperatingPoint mbccr_point(const SystemParams& p, const std::vector<Rat>& r, int rho);

// Layer-inclusion threshold: (d_bar + t - 1)/(b_bar + t - k) for MSCR,
// (2*d_bar + t - 1)/(2*b_bar + t - k) for MBCCR.
Rat prop1_threshold(const SystemParams& p, PointKind kind, const Rat& d_bar, const Rat& b_bar);

// Weighted-sum condition sum w_l r_l <= w_bar * sum r_l over the first rho
// layers, with the un-augmented threshold (d_bar = b_bar = d).
bool prop1_holds(const SystemParams& p, const std::vector<Rat>& r, int rho, PointKind kind);

// Greedy linear scan for the optimal number of base stations: include layer i
// while w_i <= threshold(d + sum_{l<i} w_l b_l, d + sum_{l<i} b_l); strict
// excess breaks.
int opt_bs_count(const SystemParams& p, PointKind kind);

// The two trade-off endpoints with r_l = b_l for l <= rho_min(kind).
std::pair<OperatingPoint, OperatingPoint> optimal_points(const SystemParams& p);

// Exact minimum repair cost at fixed storage alpha >= F/k, over all prefix
// selectors, both regimes of the piecewise bound, and all feasible
// (beta, beta', r). Solved as small rational LPs in (beta, beta', z_l = r_l*beta).
OperatingPoint min_cost_at_storage(const SystemParams& p, const Rat& alpha);

// min_cost_at_storage sampled on a uniform alpha grid from F/k to the
// minimum-bandwidth-cost storage, endpoints inclusive.
std::vector<OperatingPoint> tradeoff_curve(const SystemParams& p, int grid_size);

// The four comparison schemes of the two-layer scenario table.
struct BaselineCosts {
  Rat no_coop_local;  // download the whole file locally
  Rat coop_local;     // cooperative repair, no BS
  Rat coop_layer;     // cooperative repair with BS assistance at given beta, r
  Rat full_layer;     // no local assistance: b_1*beta from the BS, rest from layer 2
};
BaselineCosts baseline_costs(const SystemParams& p, const Rat& beta, const std::vector<Rat>& r);

}  // namespace bscoop
