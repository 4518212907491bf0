#pragma once

#include <cstdint>

namespace extremalk {

enum class LawKind { Frechet, Weibull, Gumbel };

// One of the three max-stable types, with its shape parameter where
// one exists (Gumbel carries none).
class MaxStableLaw {
 public:
  static MaxStableLaw frechet(double alpha) { return {LawKind::Frechet, alpha}; }
  static MaxStableLaw weibull(double alpha) { return {LawKind::Weibull, alpha}; }
  static MaxStableLaw gumbel() { return {LawKind::Gumbel, 0.0}; }

  LawKind kind() const { return kind_; }
  double alpha() const { return alpha_; }

  double cdf(double x) const;
  // -log cdf, evaluated from the closed form so it stays exact where the
  // cdf itself rounds to 1.  Returns +inf where the cdf is 0.
  double neg_log_cdf(double x) const;
  double pdf(double x) const;
  double quantile(double p) const;

  double support_lo() const;
  double support_hi() const;

 private:
  MaxStableLaw(LawKind kind, double alpha);
  LawKind kind_;
  double alpha_;
};

struct StabilityNorming {
  double a;
  double b;
};

// Constants with G^n(a x + b) = G(x) for all x.
StabilityNorming stability_norming(const MaxStableLaw& law, std::uint64_t n);

// Limit df of the k-th largest of n draws once the maxima of the
// underlying df converge to `law`.
double limit_kth_cdf(const MaxStableLaw& law, int k, double x);

}  // namespace extremalk
