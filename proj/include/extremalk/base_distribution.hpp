#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "extremalk/max_stable.hpp"

namespace extremalk {

struct Mda {
  enum class Kind { Frechet, Weibull, Gumbel, Unknown };
  Kind kind = Kind::Unknown;
  double alpha = 0.0;  // meaningful for Frechet / Weibull only
};

// An absolutely continuous df bundled with the evaluations the rest of
// the library needs: cdf/pdf/quantile plus tail-accurate survival
// forms, the support extremities, and the max-domain classification.
// Instances are immutable after construction and safe to share.
class BaseDistribution {
 public:
  using Fn = std::function<double(double)>;

  BaseDistribution(std::string name, std::map<std::string, double> params,
                   Fn cdf, Fn pdf, Fn quantile, Fn sf, Fn isf, double lo,
                   double hi, Mda mda, Fn auxiliary = nullptr,
                   Fn second_derivative = nullptr);

  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }

  double cdf(double x) const { return cdf_(x); }
  double pdf(double x) const { return pdf_(x); }
  double quantile(double p) const;
  double sf(double x) const { return sf_(x); }      // 1 - cdf, tail-accurate
  double isf(double s) const;                       // quantile(1 - s)

  double left_extremity() const { return lo_; }
  double right_extremity() const { return hi_; }
  Mda mda() const { return mda_; }

  bool has_auxiliary() const { return static_cast<bool>(aux_); }
  double auxiliary_closed(double t) const { return aux_(t); }
  bool has_second_derivative() const { return static_cast<bool>(d2_); }
  double second_derivative(double x) const { return d2_(x); }

 private:
  std::string name_;
  std::map<std::string, double> params_;
  Fn cdf_, pdf_, quantile_, sf_, isf_;
  double lo_, hi_;
  Mda mda_;
  Fn aux_, d2_;
};

// Resolve a distribution by name ("frechet", "pareto", "weibull-law",
// "uniform", "normal", "ratio-exp", "gamma", "exponential", "log-gamma",
// "cauchy", "beta"), with family parameters (alpha, beta, c) overriding
// the defaults.  Unknown names or parameters outside the family's
// validity domain throw std::invalid_argument.
BaseDistribution make_base(const std::string& name,
                           const std::map<std::string, double>& params = {});

// Every named entry with its default parameters.
std::vector<BaseDistribution> catalog();

// The max-stable law a distribution's maxima converge to.
MaxStableLaw attractor_law(const BaseDistribution& dist);

// (1 - F(t x)) / (1 - F(t)); compares against x^-alpha in the heavy-tail
// domain.  Throws std::domain_error once F(t) = 1.
double regular_variation_ratio(const BaseDistribution& dist, double x,
                               double t);

// (1 - F(x)) F''(x) / F'(x)^2 with F'' by central difference of the pdf
// (step max(1e-6, 1e-6 |x|)) unless a closed-form second derivative is
// registered; -1 in the limit certifies Gumbel-domain membership.
double von_mises_ratio(const BaseDistribution& dist, double x);

// Gumbel-domain auxiliary function; the registered closed form when one
// exists, otherwise the mean residual life by adaptive quadrature.
double auxiliary_function(const BaseDistribution& dist, double t);

// Mean-residual-life evaluation, always by quadrature (cross-check path).
double auxiliary_mrl(const BaseDistribution& dist, double t);

}  // namespace extremalk
