#include "bscoop/model.hpp"

#include <stdexcept>

namespace bscoop {

Rat CostLedger::recompute(const std::vector<Rat>& w) const {
  Rat weighted = Rat(local_symbols) + Rat(coop_symbols);
  for (size_t l = 0; l < bs_symbols.size(); ++l) {
    weighted += (l < w.size() ? w[l] : Rat(1)) * Rat(bs_symbols[l]);
  }
  return symbol_size * weighted;
}

std::vector<std::string> validate_params(const SystemParams& p) {
  std::vector<std::string> violations;
  auto bad = [&](const std::string& msg) { violations.push_back(msg); };

  if (p.n < 1) bad("n >= 1");
  if (p.k < 1 || p.k > p.n) bad("1 <= k <= n");
  if (p.t < 1) bad("t >= 1");
  if (p.d < p.k || p.d > p.n - p.t) bad("k <= d <= n - t");
  if (p.M < 0) bad("M >= 0");
  if (static_cast<int>(p.w.size()) != p.M) bad("w has length M");
  if (static_cast<int>(p.b.size()) != p.M) bad("b has length M");
  for (size_t l = 0; l < p.w.size(); ++l) {
    if (p.w[l] < 1) bad("w_" + std::to_string(l + 1) + " >= 1");
    if (l > 0 && p.w[l] < p.w[l - 1]) bad("w non-descending");
  }
  for (size_t l = 0; l < p.b.size(); ++l) {
    if (p.b[l] < 0) bad("b_" + std::to_string(l + 1) + " >= 0");
  }
  if (p.F <= 0) bad("F > 0");
  return violations;
}

std::vector<std::string> validate_variables(const SystemParams& p, const RepairVariables& v) {
  std::vector<std::string> violations;
  auto bad = [&](const std::string& msg) { violations.push_back(msg); };

  Rat cap = p.d > 0 ? p.F / p.d : Rat(0);
  if (v.beta < 0 || v.beta > cap) bad("0 <= beta <= F/d");
  if (v.beta_prime < 0 || v.beta_prime > cap) bad("0 <= beta' <= F/d");
  if (static_cast<int>(v.r.size()) != p.M) bad("r has length M");
  if (static_cast<int>(v.selector.s.size()) != p.M) bad("selector has length M");
  for (size_t l = 0; l < v.r.size() && l < p.b.size(); ++l) {
    if (v.r[l] < 0 || v.r[l] > p.b[l]) bad("0 <= r_" + std::to_string(l + 1) + " <= b_l");
    if (!v.selector.uses(static_cast<int>(l)) && v.r[l] != 0)
      bad("r_" + std::to_string(l + 1) + " = 0 where s_l = 0");
  }
  return violations;
}

LayerSelector selector(int rho, int M) {
  if (rho < 0 || rho > M) throw std::out_of_range("selector: rho must be in [0, M]");
  LayerSelector sel;
  sel.rho = rho;
  sel.s.assign(M, 0);
  for (int l = 0; l < rho; ++l) sel.s[l] = 1;
  return sel;
}

RepairVariables make_variables(const SystemParams& p, const Rat& beta, const Rat& beta_prime,
                               const std::vector<Rat>& r, int rho) {
  RepairVariables v;
  v.beta = beta;
  v.beta_prime = beta_prime;
  v.selector = selector(rho, p.M);
  v.r.assign(p.M, Rat(0));
  for (int l = 0; l < rho && l < static_cast<int>(r.size()); ++l) v.r[l] = r[l];
  return v;
}

}  // namespace bscoop
