#include "extremalk/base_distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "extremalk/numerics.hpp"

namespace extremalk {

BaseDistribution::BaseDistribution(std::string name,
                                   std::map<std::string, double> params,
                                   Fn cdf, Fn pdf, Fn quantile, Fn sf, Fn isf,
                                   double lo, double hi, Mda mda, Fn auxiliary,
                                   Fn second_derivative)
    : name_(std::move(name)),
      params_(std::move(params)),
      cdf_(std::move(cdf)),
      pdf_(std::move(pdf)),
      quantile_(std::move(quantile)),
      sf_(std::move(sf)),
      isf_(std::move(isf)),
      lo_(lo),
      hi_(hi),
      mda_(mda),
      aux_(std::move(auxiliary)),
      d2_(std::move(second_derivative)) {}

double BaseDistribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("quantile: p outside (0,1)");
  return quantile_(p);
}

double BaseDistribution::isf(double s) const {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("isf: survival probability outside (0,1)");
  return isf_(s);
}

namespace {

using Fn = BaseDistribution::Fn;

double get_param(const std::map<std::string, double>& params,
                 const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Quantile by doubling bracket expansion plus bisection on the cdf.
double quantile_by_bisection(const Fn& cdf, double lo, double hi, double p) {
  double a = std::isinf(lo) ? -1.0 : lo;
  double b = std::isinf(hi) ? 1.0 : hi;
  if (std::isinf(lo)) {
    while (cdf(a) > p) a *= 2.0;
  }
  if (std::isinf(hi)) {
    while (cdf(b) < p) b *= 2.0;
  }
  auto f = [&cdf, p](double x) { return cdf(x) - p; };
  double xtol = 1e-12 * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
  return num::bisect_root(f, a, b, xtol, 300);
}

BaseDistribution make_exponential() {
  return BaseDistribution(
      "exponential", {},
      [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); },
      [](double x) { return x <= 0 ? 0.0 : std::exp(-x); },
      [](double p) { return -std::log1p(-p); },
      [](double x) { return x <= 0 ? 1.0 : std::exp(-x); },
      [](double s) { return -std::log(s); }, 0.0, num::inf,
      {Mda::Kind::Gumbel, 0.0},
      [](double) { return 1.0; },
      [](double x) { return x <= 0 ? 0.0 : -std::exp(-x); });
}

BaseDistribution make_frechet(double alpha) {
  require(alpha > 0, "frechet: alpha must be > 0");
  return BaseDistribution(
      "frechet", {{"alpha", alpha}},
      [alpha](double x) { return x <= 0 ? 0.0 : std::exp(-std::pow(x, -alpha)); },
      [alpha](double x) {
        if (x <= 0) return 0.0;
        double y = std::pow(x, -alpha);
        return alpha * y / x * std::exp(-y);
      },
      [alpha](double p) { return std::pow(-std::log(p), -1.0 / alpha); },
      [alpha](double x) {
        return x <= 0 ? 1.0 : -std::expm1(-std::pow(x, -alpha));
      },
      [alpha](double s) { return std::pow(-std::log1p(-s), -1.0 / alpha); },
      0.0, num::inf, {Mda::Kind::Frechet, alpha});
}

BaseDistribution make_pareto(double c, double alpha) {
  require(c > 0, "pareto: c must be > 0");
  require(alpha > 0, "pareto: alpha must be > 0");
  double lo = std::pow(c, 1.0 / alpha);  // where c x^-alpha reaches 1
  return BaseDistribution(
      "pareto", {{"c", c}, {"alpha", alpha}},
      [c, alpha, lo](double x) {
        return x <= lo ? 0.0 : 1.0 - c * std::pow(x, -alpha);
      },
      [c, alpha, lo](double x) {
        return x <= lo ? 0.0 : c * alpha * std::pow(x, -alpha - 1.0);
      },
      [c, alpha](double p) { return std::pow(c / (1.0 - p), 1.0 / alpha); },
      [c, alpha, lo](double x) {
        return x <= lo ? 1.0 : c * std::pow(x, -alpha);
      },
      [c, alpha](double s) { return std::pow(c / s, 1.0 / alpha); }, lo,
      num::inf, {Mda::Kind::Frechet, alpha});
}

BaseDistribution make_weibull_law(double alpha) {
  require(alpha > 0, "weibull-law: alpha must be > 0");
  return BaseDistribution(
      "weibull-law", {{"alpha", alpha}},
      [alpha](double x) {
        return x >= 0 ? 1.0 : std::exp(-std::pow(-x, alpha));
      },
      [alpha](double x) {
        if (x >= 0) return 0.0;
        double y = std::pow(-x, alpha);
        return alpha * y / (-x) * std::exp(-y);
      },
      [alpha](double p) { return -std::pow(-std::log(p), 1.0 / alpha); },
      [alpha](double x) {
        return x >= 0 ? 0.0 : -std::expm1(-std::pow(-x, alpha));
      },
      [alpha](double s) { return -std::pow(-std::log1p(-s), 1.0 / alpha); },
      -num::inf, 0.0, {Mda::Kind::Weibull, alpha});
}

BaseDistribution make_uniform() {
  return BaseDistribution(
      "uniform", {},
      [](double x) { return x <= 0 ? 0.0 : (x >= 1 ? 1.0 : x); },
      [](double x) { return (x > 0 && x < 1) ? 1.0 : 0.0; },
      [](double p) { return p; },
      [](double x) { return x <= 0 ? 1.0 : (x >= 1 ? 0.0 : 1.0 - x); },
      [](double s) { return 1.0 - s; }, 0.0, 1.0, {Mda::Kind::Weibull, 1.0});
}

BaseDistribution make_normal() {
  return BaseDistribution(
      "normal", {}, [](double x) { return num::normal_cdf(x); },
      [](double x) { return num::normal_pdf(x); },
      [](double p) { return num::normal_quantile(p); },
      [](double x) { return num::normal_sf(x); },
      [](double s) { return -num::normal_quantile(s); }, -num::inf, num::inf,
      {Mda::Kind::Gumbel, 0.0});
}

// F(x) = 1 - exp(-x / (1 - x)) on [0, 1); auxiliary function (1 - x)^2.
BaseDistribution make_ratio_exp() {
  auto sf = [](double x) {
    if (x <= 0) return 1.0;
    if (x >= 1) return 0.0;
    return std::exp(-x / (1.0 - x));
  };
  return BaseDistribution(
      "ratio-exp", {},
      [](double x) {
        if (x <= 0) return 0.0;
        if (x >= 1) return 1.0;
        return -std::expm1(-x / (1.0 - x));
      },
      [sf](double x) {
        if (x <= 0 || x >= 1) return 0.0;
        double om = 1.0 - x;
        return sf(x) / (om * om);
      },
      [](double p) {
        double y = -std::log1p(-p);
        return y / (1.0 + y);
      },
      sf,
      [](double s) {
        double y = -std::log(s);
        return y / (1.0 + y);
      },
      0.0, 1.0, {Mda::Kind::Gumbel, 0.0},
      [](double t) { return (1.0 - t) * (1.0 - t); },
      [sf](double x) {
        if (x <= 0 || x >= 1) return 0.0;
        double om = 1.0 - x;
        return sf(x) * (1.0 - 2.0 * x) / (om * om * om * om);
      });
}

// pdf x^alpha e^-x / Gamma(alpha+1); alpha = 0 is the exponential member.
BaseDistribution make_gamma(double alpha) {
  require(alpha >= 0, "gamma: alpha must be >= 0");
  double shape = alpha + 1.0;
  double lognorm = std::lgamma(shape);
  auto cdf = [shape](double x) { return x <= 0 ? 0.0 : num::gamma_p(shape, x); };
  auto sf = [shape](double x) { return x <= 0 ? 1.0 : num::gamma_q(shape, x); };
  return BaseDistribution(
      "gamma", {{"alpha", alpha}}, cdf,
      [alpha, lognorm](double x) {
        if (x <= 0) return 0.0;
        return std::exp(alpha * std::log(x) - x - lognorm);
      },
      [cdf](double p) { return quantile_by_bisection(cdf, 0.0, num::inf, p); },
      sf,
      [sf](double s) {
        double hi = 1.0;
        while (sf(hi) > s) hi *= 2.0;
        auto f = [&sf, s](double x) { return s - sf(x); };
        return num::bisect_root(f, 0.0, hi, 1e-12 * std::max(1.0, hi), 300);
      },
      0.0, num::inf, {Mda::Kind::Gumbel, 0.0}, [](double) { return 1.0; });
}

// pdf alpha^beta x^-(alpha+1) (ln x)^(beta-1) / Gamma(beta) on x > 1,
// i.e. exp of a Gamma(beta, rate alpha) variable.
BaseDistribution make_log_gamma(double alpha, double beta) {
  require(alpha > 0, "log-gamma: alpha must be > 0");
  require(beta > 0, "log-gamma: beta must be > 0");
  auto cdf = [alpha, beta](double x) {
    return x <= 1 ? 0.0 : num::gamma_p(beta, alpha * std::log(x));
  };
  auto sf = [alpha, beta](double x) {
    return x <= 1 ? 1.0 : num::gamma_q(beta, alpha * std::log(x));
  };
  return BaseDistribution(
      "log-gamma", {{"alpha", alpha}, {"beta", beta}}, cdf,
      [alpha, beta](double x) {
        if (x <= 1) return 0.0;
        double lx = std::log(x);
        return std::exp(beta * std::log(alpha) - (alpha + 1.0) * lx +
                        (beta - 1.0) * std::log(lx) - std::lgamma(beta));
      },
      [alpha, beta](double p) {
        auto g = [beta](double y) { return num::gamma_p(beta, y); };
        double y = quantile_by_bisection(g, 0.0, num::inf, p);
        return std::exp(y / alpha);
      },
      sf,
      [alpha, beta](double s) {
        double hi = 1.0;
        while (num::gamma_q(beta, hi) > s) hi *= 2.0;
        auto f = [beta, s](double y) { return s - num::gamma_q(beta, y); };
        double y = num::bisect_root(f, 0.0, hi, 1e-12 * std::max(1.0, hi), 300);
        return std::exp(y / alpha);
      },
      1.0, num::inf, {Mda::Kind::Frechet, alpha});
}

BaseDistribution make_cauchy() {
  const double pi = 3.14159265358979323846;
  // atan(1/x)/pi keeps both tails exact where 1/2 + atan(x)/pi would not
  return BaseDistribution(
      "cauchy", {},
      [pi](double x) {
        if (x < 0) return std::atan(-1.0 / x) / pi;
        if (x > 0) return 1.0 - std::atan(1.0 / x) / pi;
        return 0.5;
      },
      [pi](double x) { return 1.0 / (pi * (1.0 + x * x)); },
      [pi](double p) {
        if (p < 0.5) return -1.0 / std::tan(pi * p);
        if (p > 0.5) return 1.0 / std::tan(pi * (1.0 - p));
        return 0.0;
      },
      [pi](double x) {
        if (x > 0) return std::atan(1.0 / x) / pi;
        if (x < 0) return 1.0 - std::atan(-1.0 / x) / pi;
        return 0.5;
      },
      [pi](double s) {
        if (s < 0.5) return 1.0 / std::tan(pi * s);
        if (s > 0.5) return -1.0 / std::tan(pi * (1.0 - s));
        return 0.0;
      },
      -num::inf, num::inf, {Mda::Kind::Frechet, 1.0});
}

// Conventional beta pdf; cdf and survival by adaptive quadrature of the
// pdf, quantiles by bisection.  Accuracy target 1e-10 for shapes >= 1.
BaseDistribution make_beta(double a, double b) {
  require(a > 0, "beta: alpha must be > 0");
  require(b > 0, "beta: beta must be > 0");
  double lognorm = std::log(num::beta_fn(a, b));
  auto pdf = [a, b, lognorm](double x) {
    if (x <= 0 || x >= 1) return 0.0;
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
                    lognorm);
  };
  auto cdf = [pdf](double x) {
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    return std::min(1.0, num::integrate(pdf, 0.0, x, 1e-11));
  };
  auto sf = [pdf](double x) {
    if (x <= 0) return 1.0;
    if (x >= 1) return 0.0;
    return std::min(1.0, num::integrate(pdf, x, 1.0, 1e-11));
  };
  return BaseDistribution(
      "beta", {{"alpha", a}, {"beta", b}}, cdf, pdf,
      [cdf](double p) { return quantile_by_bisection(cdf, 0.0, 1.0, p); },
      sf,
      [sf](double s) {
        auto f = [&sf, s](double x) { return s - sf(x); };
        return num::bisect_root(f, 0.0, 1.0, 1e-13, 300);
      },
      0.0, 1.0, {Mda::Kind::Weibull, b});
}

}  // namespace

BaseDistribution make_base(const std::string& name,
                           const std::map<std::string, double>& params) {
  for (const auto& [key, value] : params) {
    (void)value;
    if (key != "alpha" && key != "beta" && key != "c")
      throw std::invalid_argument("unknown distribution parameter: " + key);
  }
  if (name == "exponential") return make_exponential();
  if (name == "frechet") return make_frechet(get_param(params, "alpha", 1.0));
  if (name == "pareto")
    return make_pareto(get_param(params, "c", 1.0),
                       get_param(params, "alpha", 1.0));
  if (name == "weibull-law")
    return make_weibull_law(get_param(params, "alpha", 1.0));
  if (name == "uniform") return make_uniform();
  if (name == "normal") return make_normal();
  if (name == "ratio-exp") return make_ratio_exp();
  if (name == "gamma") return make_gamma(get_param(params, "alpha", 1.0));
  if (name == "log-gamma")
    return make_log_gamma(get_param(params, "alpha", 2.0),
                          get_param(params, "beta", 2.0));
  if (name == "cauchy") return make_cauchy();
  if (name == "beta")
    return make_beta(get_param(params, "alpha", 2.0),
                     get_param(params, "beta", 3.0));
  throw std::invalid_argument("unknown base distribution: " + name);
}

std::vector<BaseDistribution> catalog() {
  std::vector<BaseDistribution> entries;
  for (const char* name :
       {"frechet", "pareto", "weibull-law", "uniform", "normal", "ratio-exp",
        "gamma", "exponential", "log-gamma", "cauchy", "beta"})
    entries.push_back(make_base(name));
  return entries;
}

MaxStableLaw attractor_law(const BaseDistribution& dist) {
  switch (dist.mda().kind) {
    case Mda::Kind::Frechet:
      return MaxStableLaw::frechet(dist.mda().alpha);
    case Mda::Kind::Weibull:
      return MaxStableLaw::weibull(dist.mda().alpha);
    case Mda::Kind::Gumbel:
      return MaxStableLaw::gumbel();
    case Mda::Kind::Unknown:
      break;
  }
  throw std::domain_error("attractor_law: max domain of attraction unknown");
}

double regular_variation_ratio(const BaseDistribution& dist, double x,
                               double t) {
  double denom = dist.sf(t);
  if (denom <= 0.0)
    throw std::domain_error("regular_variation_ratio: beyond right extremity");
  return dist.sf(t * x) / denom;
}

double von_mises_ratio(const BaseDistribution& dist, double x) {
  double f = dist.pdf(x);
  if (f <= 0.0) throw std::domain_error("von_mises_ratio: ratio undefined");
  double d2;
  if (dist.has_second_derivative()) {
    d2 = dist.second_derivative(x);
  } else {
    double h = std::max(1e-6, 1e-6 * std::fabs(x));
    d2 = (dist.pdf(x + h) - dist.pdf(x - h)) / (2.0 * h);
  }
  return dist.sf(x) * d2 / (f * f);
}

double auxiliary_mrl(const BaseDistribution& dist, double t) {
  double s = dist.sf(t);
  if (s <= 0.0) throw std::domain_error("auxiliary_mrl: beyond right extremity");
  auto tail = [&dist](double u) { return dist.sf(u); };
  double integral =
      num::integrate(tail, t, dist.right_extremity(), 1e-10 * s);
  double v = integral / s;
  if (!std::isfinite(v))
    throw std::domain_error("auxiliary_mrl: not in Gumbel domain");
  return v;
}

double auxiliary_function(const BaseDistribution& dist, double t) {
  if (dist.mda().kind != Mda::Kind::Gumbel)
    throw std::domain_error("auxiliary_function: not a Gumbel-domain df");
  if (!(t < dist.right_extremity()))
    throw std::domain_error("auxiliary_function: t beyond right extremity");
  if (dist.has_auxiliary()) return dist.auxiliary_closed(t);
  return auxiliary_mrl(dist, t);
}

}  // namespace extremalk
