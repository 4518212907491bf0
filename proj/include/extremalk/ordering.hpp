#pragma once

#include <string>
#include <vector>

#include "extremalk/base_distribution.hpp"

namespace extremalk {

// One pointwise cdf-dominance claim evaluated on a quantile grid.
// max_violation is the largest amount by which the required-larger cdf
// falls below the required-smaller one (negative when the claim holds
// strictly everywhere).
struct OrderingCheck {
  std::string claim_id;  // "i" .. "vii"
  int k = 1;
  int r = 1;
  double max_violation = 0.0;
  bool pass = false;
};

// The seven dominance claims, in the pointwise form the proofs
// establish:
//   i    U_1 >= F
//   ii   F_{k+1} >= F_k, H_{k+1} >= H_k, R_{k+1} >= R_k, T_{k+1} >= T_k
//   iii  U_{k+1} >= U_k >= F
//   iv   R_k >= H_k >= F
//   v    F_k >= F and T_k >= F^r
//   vi   R_k >= T_k
//   vii  U_k >= F_k
OrderingCheck check_ordering(const std::string& claim_id,
                             const BaseDistribution& base, int k, int r,
                             int grid_size);

// All seven claims over k = 1..k_max, r = 1..r_max; one row per claim
// carrying the worst (k, r) found.
std::vector<OrderingCheck> ordering_report(const BaseDistribution& base,
                                           int k_max, int r_max,
                                           int grid_size);

}  // namespace extremalk
