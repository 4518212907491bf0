#include "extremalk/max_stable.hpp"

#include <cmath>
#include <stdexcept>

#include "extremalk/numerics.hpp"

namespace extremalk {

MaxStableLaw::MaxStableLaw(LawKind kind, double alpha)
    : kind_(kind), alpha_(alpha) {
  if (kind != LawKind::Gumbel && !(alpha > 0.0))
    throw std::invalid_argument("max-stable law: alpha must be > 0");
}

double MaxStableLaw::neg_log_cdf(double x) const {
  switch (kind_) {
    case LawKind::Frechet:
      return x <= 0.0 ? num::inf : std::pow(x, -alpha_);
    case LawKind::Weibull:
      return x >= 0.0 ? 0.0 : std::pow(-x, alpha_);
    case LawKind::Gumbel:
      return std::exp(-x);
  }
  return 0.0;
}

double MaxStableLaw::cdf(double x) const { return std::exp(-neg_log_cdf(x)); }

double MaxStableLaw::pdf(double x) const {
  switch (kind_) {
    case LawKind::Frechet:
      if (x <= 0.0) return 0.0;
      return alpha_ * std::pow(x, -alpha_ - 1.0) * cdf(x);
    case LawKind::Weibull:
      if (x >= 0.0) return 0.0;
      return alpha_ * std::pow(-x, alpha_ - 1.0) * cdf(x);
    case LawKind::Gumbel:
      return std::exp(-x) * cdf(x);
  }
  return 0.0;
}

double MaxStableLaw::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("max_stable_quantile: p outside (0,1)");
  double y = -std::log(p);
  switch (kind_) {
    case LawKind::Frechet:
      return std::pow(y, -1.0 / alpha_);
    case LawKind::Weibull:
      return -std::pow(y, 1.0 / alpha_);
    case LawKind::Gumbel:
      return -std::log(y);
  }
  return 0.0;
}

double MaxStableLaw::support_lo() const {
  return kind_ == LawKind::Frechet ? 0.0 : -num::inf;
}

double MaxStableLaw::support_hi() const {
  return kind_ == LawKind::Weibull ? 0.0 : num::inf;
}

StabilityNorming stability_norming(const MaxStableLaw& law, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("stability_norming: n must be >= 1");
  double nd = static_cast<double>(n);
  switch (law.kind()) {
    case LawKind::Frechet:
      return {std::pow(nd, 1.0 / law.alpha()), 0.0};
    case LawKind::Weibull:
      return {std::pow(nd, -1.0 / law.alpha()), 0.0};
    case LawKind::Gumbel:
      return {1.0, std::log(nd)};
  }
  return {1.0, 0.0};
}

double limit_kth_cdf(const MaxStableLaw& law, int k, double x) {
  if (k < 1) throw std::invalid_argument("limit_kth_cdf: k must be >= 1");
  double xi = law.neg_log_cdf(x);
  if (std::isinf(xi)) return 0.0;
  return num::poisson_cdf(k - 1, xi);
}

}  // namespace extremalk
