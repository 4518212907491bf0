#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "extremalk/base_distribution.hpp"
#include "extremalk/max_stable.hpp"

namespace extremalk {

enum class Family { Hk, Fk, Uk, Rk, Tk, Bk };

// Finitely supported mixing law for the Bk family: atoms (value, weight)
// with positive values and weights summing to 1.
class TauSpec {
 public:
  explicit TauSpec(std::vector<std::pair<double, double>> atoms);
  static TauSpec degenerate(double value = 1.0) { return TauSpec({{value, 1.0}}); }

  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }
  double moment(int i) const;  // E[tau^i]

 private:
  std::vector<std::pair<double, double>> atoms_;
};

// A member of one of the six derived-df families, applied to a base df
// by the transform_* operations below.  k (and r for Tk) are capped at
// 20 in this interface.
class TailTransform {
 public:
  static TailTransform hk(int k) { return {Family::Hk, k, 1, std::nullopt}; }
  static TailTransform fk(int k) { return {Family::Fk, k, 1, std::nullopt}; }
  static TailTransform uk(int k) { return {Family::Uk, k, 1, std::nullopt}; }
  static TailTransform rk(int k) { return {Family::Rk, k, 1, std::nullopt}; }
  static TailTransform tk(int k, int r) { return {Family::Tk, k, r, std::nullopt}; }
  static TailTransform bk(int k, TauSpec tau) {
    return {Family::Bk, k, 1, std::move(tau)};
  }

  Family family() const { return family_; }
  int k() const { return k_; }
  int r() const { return r_; }
  const TauSpec& tau() const { return *tau_; }

 private:
  TailTransform(Family family, int k, int r, std::optional<TauSpec> tau);
  Family family_;
  int k_;
  int r_;
  std::optional<TauSpec> tau_;
};

// Family kernels as functions of xi = -ln F; shared by the transform
// evaluations and the random-size limit laws.
double family_cdf_xi(const TailTransform& t, double xi);
double family_log_sf_xi(const TailTransform& t, double xi);

double transform_cdf(const TailTransform& t, const BaseDistribution& base,
                     double x);
double transform_sf(const TailTransform& t, const BaseDistribution& base,
                    double x);
double transform_log_sf(const TailTransform& t, const BaseDistribution& base,
                        double x);
double transform_pdf(const TailTransform& t, const BaseDistribution& base,
                     double x);
// Inverse of transform_cdf by monotone bisection on the kernel; for p
// near 1 the survival kernel is inverted instead so deep-tail quantiles
// keep full relative accuracy.
double transform_quantile(const TailTransform& t, const BaseDistribution& base,
                          double p);

// c with (1 - V_k(x)) / (1 - F(x))^k -> c at the right extremity.
double tail_equivalence_constant(const TailTransform& t);

// (1 - V_k(x)) / (1 - p)^k at x = base quantile(p), evaluated in log
// space.  Throws std::domain_error once the tail underflows.
double empirical_tail_ratio(const TailTransform& t,
                            const BaseDistribution& base, double p);

// V_{k+1}(x) minus the family's recurrence right-hand side; zero up to
// rounding.  Only Fk, Uk, Tk and Bk carry a recurrence.
double recurrence_residual(const TailTransform& t,
                           const BaseDistribution& base, double x);

// r_k(x) - (1 - R_k(x)) h1(x), the defect in the Burr-family ODE
// satisfied by R_k; zero up to rounding.
double burr_ode_residual(const BaseDistribution& base, int k, double x);

enum class LimitFamily { Gk, Jk, Lk, Sk, BarakatNigm };

// Limit dfs of normalized k-th maxima under the random-size regimes,
// evaluated through the same kernels with xi = -log G(x).
double limit_law_cdf(LimitFamily family, const MaxStableLaw& law, int k, int r,
                     const TauSpec* tau, double x);

}  // namespace extremalk
