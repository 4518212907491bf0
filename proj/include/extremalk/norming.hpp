#pragma once

#include <cstdint>
#include <span>

#include "extremalk/base_distribution.hpp"
#include "extremalk/tail_transform.hpp"

namespace extremalk {

struct Norming {
  double a;  // scale, > 0
  double b;  // location
};

enum class NormingMode { ClosedForm, QuantileBased };

// Family constant eta_k entering the closed-form norming recipes; equal
// to the family's tail-equivalence constant.
double eta_constant(const TailTransform& t);

// Norming constants for the base df itself, per its attractor:
// Frechet (F^-(1-1/n), 0); Weibull (r(F) - F^-(1-1/n), r(F));
// Gumbel (v(b_n), F^-(1-1/n)).
Norming base_norming(const BaseDistribution& dist, std::uint64_t n);

// Norming constants for the derived df V_k.  QuantileBased (the
// default-recommended path) reads location and scale off V_k's own
// quantiles; ClosedForm uses the eta_k recipes and serves as the
// cross-check.
Norming transform_norming(const TailTransform& t, const BaseDistribution& base,
                          std::uint64_t n, NormingMode mode);

// The max-stable law V_k is attracted to (alpha scaled by k in the
// Frechet and Weibull domains).
MaxStableLaw transform_target_law(const TailTransform& t,
                                  const BaseDistribution& base);

// max over the grid of |n (1 - V_k(a_n x + b_n)) - (-log G_target(x))|.
double verify_norming(const TailTransform& t, const BaseDistribution& base,
                      NormingMode mode, std::uint64_t n,
                      std::span<const double> xs);

}  // namespace extremalk
