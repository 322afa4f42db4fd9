#include "primelab/params.hpp"

#include <cmath>
#include <stdexcept>

namespace primelab {

CrucialResult crucial_lhs(u64 k, u64 l, const Rat& theta) {
  if (k == 0) throw std::domain_error("crucial_lhs: k = 0");
  if (theta <= 0 || theta > 1) throw std::domain_error("crucial_lhs: theta outside (0,1]");
  Rat lhs = Rat(k, k + 2 * l + 1) * Rat(2 * l + 1, l + 1) * theta;
  lhs.canonicalize();
  return {lhs, lhs > 1};
}

Int c0_of_theta(const Rat& delta) {
  if (delta <= 0) throw std::domain_error("c0_of_theta: delta <= 0");
  Int m = rat_ceil(Rat(1) / (2 * delta));
  Int side = 2 * m + 1;
  return side * side;
}

u64 optimal_l(u64 k) {
  if (k == 0) throw std::domain_error("optimal_l: k = 0");
  // Continuous argmax of (2l+1) / ((k+2l+1)(l+1)) at l = (sqrt(k)-1)/2.
  double star = (std::sqrt(static_cast<double>(k)) - 1.0) / 2.0;
  u64 lo = star <= 0.0 ? 0 : static_cast<u64>(star);
  Rat best = crucial_lhs(k, lo, Rat(1)).lhs;
  u64 best_l = lo;
  for (u64 cand : {lo + 1, lo + 2}) {  // guard against sqrt rounding
    Rat v = crucial_lhs(k, cand, Rat(1)).lhs;
    if (v > best) {
      best = v;
      best_l = cand;
    }
  }
  if (lo > 0) {
    Rat v = crucial_lhs(k, lo - 1, Rat(1)).lhs;
    if (v > best) best_l = lo - 1;
  }
  return best_l;
}

MinimalKResult minimal_k(const Rat& theta, u64 l_max) {
  if (theta <= 0 || theta > 1) throw std::domain_error("minimal_k: theta outside (0,1]");
  MinimalKResult res;
  if (theta * 2 <= 1) {
    res.reason = "theta <= 1/2: lhs < k/(k+2l+1) * 2 * theta <= 1 for every k, l";
    return res;
  }
  // Solve per l: lhs > 1  <=>  k (theta(2l+1) - (l+1)) > (2l+1)(l+1),
  // feasible only when the coefficient is positive.
  bool any = false;
  bool capped = false;
  for (u64 l = 0; l <= l_max; ++l) {
    Rat coef = theta * Rat(2 * l + 1) - Rat(l + 1);
    if (coef <= 0) continue;
    Rat bound = Rat((2 * l + 1) * (l + 1)) / coef;
    // smallest integer k with k > bound
    Int kmin = rat_ceil(bound);
    if (Rat(kmin) == bound) kmin += 1;  // strict
    if (kmin > Int(1) << 62) {  // theta barely above 1/2: k out of reach
      capped = true;
      continue;
    }
    u64 kk = kmin.get_ui();
    if (kk == 0) kk = 1;
    if (!any || kk < res.k || (kk == res.k && l < res.l)) {
      any = true;
      res.k = kk;
      res.l = l;
    }
  }
  if (!any) {
    res.reason = capped ? "minimal k exceeds the 2^62 search cap"
                        : "no l <= l_max gives theta(2l+1)/(l+1) > 1";
    return res;
  }
  res.found = true;
  res.lhs = crucial_lhs(res.k, res.l, theta).lhs;
  return res;
}

}  // namespace primelab
