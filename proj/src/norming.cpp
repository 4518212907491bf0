#include "extremalk/norming.hpp"

#include <cmath>
#include <stdexcept>

#include "extremalk/numerics.hpp"

namespace extremalk {

double eta_constant(const TailTransform& t) { return tail_equivalence_constant(t); }

Norming base_norming(const BaseDistribution& dist, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("base_norming: n must be >= 1");
  // F^-(1 - 1/n); at n = 1 this is the left extremity.
  auto tail_quantile = [&dist, n]() {
    if (n > 1) return dist.isf(1.0 / static_cast<double>(n));
    double lo = dist.left_extremity();
    if (!std::isfinite(lo))
      throw std::domain_error("base_norming: degenerate at n = 1");
    return lo;
  };
  auto checked = [](Norming nm) {
    if (!(nm.a > 0.0))
      throw std::domain_error("base_norming: degenerate scale");
    return nm;
  };
  switch (dist.mda().kind) {
    case Mda::Kind::Frechet:
      return checked({tail_quantile(), 0.0});
    case Mda::Kind::Weibull: {
      double r = dist.right_extremity();
      return checked({r - tail_quantile(), r});
    }
    case Mda::Kind::Gumbel: {
      double b = tail_quantile();
      return checked({auxiliary_function(dist, b), b});
    }
    case Mda::Kind::Unknown:
      break;
  }
  throw std::domain_error("base_norming: max domain of attraction unknown");
}

Norming transform_norming(const TailTransform& t, const BaseDistribution& base,
                          std::uint64_t n, NormingMode mode) {
  if (n < 2) throw std::invalid_argument("transform_norming: n must be >= 2");
  double nd = static_cast<double>(n);
  int k = t.k();
  Mda::Kind kind = base.mda().kind;
  if (kind == Mda::Kind::Unknown)
    throw std::domain_error("transform_norming: max domain of attraction unknown");

  if (mode == NormingMode::ClosedForm) {
    switch (kind) {
      case Mda::Kind::Frechet: {
        double eps = std::pow(1.0 / (nd * eta_constant(t)), 1.0 / k);
        return {base.isf(eps), 0.0};
      }
      case Mda::Kind::Weibull: {
        double eps = std::pow(1.0 / (nd * eta_constant(t)), 1.0 / k);
        double r = base.right_extremity();
        return {r - base.isf(eps), r};
      }
      case Mda::Kind::Gumbel: {
        double b = transform_quantile(t, base, 1.0 - 1.0 / nd);
        return {auxiliary_function(base, b) / k, b};
      }
      default:
        break;
    }
  } else {
    double q = transform_quantile(t, base, 1.0 - 1.0 / nd);
    switch (kind) {
      case Mda::Kind::Frechet:
        return {q, 0.0};
      case Mda::Kind::Weibull: {
        double r = base.right_extremity();
        return {r - q, r};
      }
      case Mda::Kind::Gumbel: {
        double top = transform_quantile(t, base, 1.0 - 1.0 / (nd * 2.718281828459045235));
        return {top - q, q};
      }
      default:
        break;
    }
  }
  throw std::domain_error("transform_norming: unreachable");
}

MaxStableLaw transform_target_law(const TailTransform& t,
                                  const BaseDistribution& base) {
  Mda mda = base.mda();
  switch (mda.kind) {
    case Mda::Kind::Frechet:
      return MaxStableLaw::frechet(t.k() * mda.alpha);
    case Mda::Kind::Weibull:
      return MaxStableLaw::weibull(t.k() * mda.alpha);
    case Mda::Kind::Gumbel:
      return MaxStableLaw::gumbel();
    case Mda::Kind::Unknown:
      break;
  }
  throw std::domain_error("transform_target_law: max domain of attraction unknown");
}

double verify_norming(const TailTransform& t, const BaseDistribution& base,
                      NormingMode mode, std::uint64_t n,
                      std::span<const double> xs) {
  Norming nm = transform_norming(t, base, n, mode);
  MaxStableLaw target = transform_target_law(t, base);
  double nd = static_cast<double>(n);
  double worst = 0.0;
  for (double x : xs) {
    double y = nm.a * x + nm.b;
    double scaled = nd * std::exp(transform_log_sf(t, base, y));
    double dev = std::fabs(scaled - target.neg_log_cdf(x));
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace extremalk
