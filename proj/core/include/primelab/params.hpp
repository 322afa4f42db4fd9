// params.hpp — exact-rational planner for the crucial inequality
//   k/(k+2l+1) * (2l+1)/(l+1) * theta > 1  (strict),
// the sufficient tuple size C0, and optimal/minimal parameter searches.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "primelab/rat.hpp"
#include "primelab/util.hpp"

namespace primelab {

struct CrucialResult {
  Rat lhs;      // exact value of the left-hand side
  bool pass;    // lhs > 1 strictly; equality is a fail
};

// theta is the level of distribution; theta in (0, 1] enforced.
CrucialResult crucial_lhs(u64 k, u64 l, const Rat& theta);

// Sufficient tuple size for level 1/2 + delta:  (2*ceil(1/(2 delta)) + 1)^2.
// delta <= 0 is a domain error.
Int c0_of_theta(const Rat& delta);

// The l maximizing the crucial LHS at fixed k (theta cancels). The continuous
// optimum sits at (sqrt(k)-1)/2; the two integer neighbours are compared
// exactly, ties resolved toward the smaller l.
u64 optimal_l(u64 k);

struct MinimalKResult {
  bool found = false;
  u64 k = 0;
  u64 l = 0;
  Rat lhs;
  std::string reason;  // set when !found
};

// Smallest k admitting some l <= l_max with a strict pass at level theta;
// ties on k resolved toward smaller l. For theta <= 1/2 no (k, l) exists:
// lhs < 1 * 2 * theta <= 1 always.
MinimalKResult minimal_k(const Rat& theta, u64 l_max);

}  // namespace primelab
