#include "extremalk/tail_transform.hpp"

#include <cmath>
#include <stdexcept>

#include "extremalk/numerics.hpp"

namespace extremalk {

TauSpec::TauSpec(std::vector<std::pair<double, double>> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("tau: no atoms");
  double total = 0.0;
  for (const auto& [value, weight] : atoms_) {
    if (!(value > 0.0)) throw std::invalid_argument("tau: values must be > 0");
    if (!(weight >= 0.0)) throw std::invalid_argument("tau: negative weight");
    total += weight;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("tau: weights must sum to 1");
}

double TauSpec::moment(int i) const {
  double m = 0.0;
  for (const auto& [value, weight] : atoms_) m += weight * std::pow(value, i);
  return m;
}

TailTransform::TailTransform(Family family, int k, int r,
                             std::optional<TauSpec> tau)
    : family_(family), k_(k), r_(r), tau_(std::move(tau)) {
  if (k < 1 || k > 20) throw std::invalid_argument("transform: k must be in 1..20");
  if (family == Family::Tk && (r < 1 || r > 20))
    throw std::invalid_argument("transform: r must be in 1..20");
}

namespace {

using num::inf;

// sum_{l > k} xi^l / l!, i.e. e^xi minus its order-k partial sum,
// accumulated without cancellation.
double exp_tail(int k, double xi) {
  if (xi <= 0) return 0.0;
  if (xi > k + 40.0) {
    double partial = 1.0, term = 1.0;
    for (int l = 1; l <= k; ++l) {
      term *= xi / l;
      partial += term;
    }
    return std::exp(xi) - partial;
  }
  double term = 1.0;
  for (int l = 1; l <= k + 1; ++l) term *= xi / l;
  double sum = term;
  for (int l = k + 2; l < k + 500; ++l) {
    term *= xi / l;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// sum_{l > k} xi^(l-2) / l!; finite at xi = 0 and equal to exp_tail/xi^2.
double exp_tail_over_xi2(int k, double xi) {
  if (xi < 0) return 0.0;
  if (xi > k + 40.0) return exp_tail(k, xi) / (xi * xi);
  double term = std::pow(xi, k - 1.0) / std::exp(num::log_factorial(k + 1));
  double sum = term;
  for (int l = k + 2; l < k + 500; ++l) {
    term *= xi / l;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

double hk_cdf(int k, double xi) {
  if (xi <= 0) return 1.0;
  double s = -std::expm1(-xi);  // base survival
  if (s >= 1.0) return 0.0;
  return -std::expm1(k * std::log(s));
}

double uk_cdf(int k, double xi) {
  if (xi <= 0) return 1.0;
  if (std::isinf(xi)) return 0.0;
  double u1 = -std::expm1(-xi) / xi;
  double sum = 0.0;
  if (k > 1) {
    double pow_xi = 1.0, fact = 1.0;  // xi^(l-1) / l! built incrementally
    for (int l = 1; l <= k - 1; ++l) {
      fact *= l;
      sum += (k - l) * pow_xi / fact;
      pow_xi *= xi;
    }
    sum *= std::exp(-xi);
  }
  return k * u1 - sum;
}

// 1 - U_k = sum_{j > k} e^-xi xi^(j-1) (j-k) / j!; ascending series used
// where the direct complement would cancel.
double log_uk_sf(int k, double xi) {
  if (xi <= 0) return -inf;
  if (std::isinf(xi)) return 0.0;
  double cdf = uk_cdf(k, xi);
  if (cdf < 0.5) return std::log1p(-cdf);
  // leading term j = k+1; remaining terms scaled against it
  double c = 1.0, s = 1.0;
  for (int i = 2; i < 500; ++i) {
    c *= xi / (k + i) * (static_cast<double>(i) / (i - 1));
    s += c;
    if (c < s * 1e-17) break;
  }
  return -xi + k * std::log(xi) - num::log_factorial(k + 1) + std::log(s);
}

double rk_log_sf(int k, double xi) {
  if (xi <= 0) return -inf;
  return k * (std::log(xi) - std::log1p(xi));
}

double rk_cdf(int k, double xi) {
  if (xi <= 0) return 1.0;
  return -std::expm1(rk_log_sf(k, xi));
}

// Negative-binomial mass recursion with p = 1/(1+xi), q = xi/(1+xi).
double nb_cdf(int k, int r, double xi) {
  if (xi <= 0) return 1.0;
  if (std::isinf(xi)) return 0.0;
  double q = xi / (1.0 + xi);
  double pmf = std::exp(-r * std::log1p(xi));  // p^r
  double sum = pmf;
  for (int l = 1; l <= k - 1; ++l) {
    pmf *= q * (l - 1.0 + r) / l;
    sum += pmf;
  }
  return std::min(sum, 1.0);
}

double log_nb_sf(int k, int r, double xi) {
  if (xi <= 0) return -inf;
  if (std::isinf(xi)) return 0.0;
  double cdf = nb_cdf(k, r, xi);
  if (cdf < 0.5) return std::log1p(-cdf);
  double q = xi / (1.0 + xi);
  double c = 1.0, s = 1.0;
  for (int j = 1; j < 100000; ++j) {
    c *= q * (k + r + j - 1.0) / (k + j);
    s += c;
    if (c < s * 1e-17) break;
  }
  return num::log_binomial(k + r - 1.0, k) - r * std::log1p(xi) +
         k * (std::log(xi) - std::log1p(xi)) + std::log(s);
}

double bk_cdf(const TauSpec& tau, int k, double xi) {
  if (xi <= 0) return 1.0;
  double sum = 0.0;
  for (const auto& [value, weight] : tau.atoms())
    sum += weight * num::poisson_cdf(k - 1, value * xi);
  return sum;
}

double log_bk_sf(const TauSpec& tau, int k, double xi) {
  if (xi <= 0) return -inf;
  double peak = -inf;
  std::vector<double> logs;
  logs.reserve(tau.atoms().size());
  for (const auto& [value, weight] : tau.atoms()) {
    double l = num::log_poisson_sf(k, value * xi) + std::log(weight);
    logs.push_back(l);
    peak = std::max(peak, l);
  }
  if (!std::isfinite(peak)) return -inf;
  double s = 0.0;
  for (double l : logs) s += std::exp(l - peak);
  return peak + std::log(s);
}

// xi = -ln F(x), taken from the survival side once F passes 1/2.  When
// the survival rounds to 1 the cdf itself still resolves F-levels down
// to the double floor, so consult it before declaring F = 0.
double xi_at(const BaseDistribution& base, double x) {
  double s = base.sf(x);
  if (s <= 0.0) return 0.0;
  if (s < 0.5) return -std::log1p(-s);
  double F = base.cdf(x);
  if (F <= 0.0) return inf;
  return -std::log(F);
}

}  // namespace

double family_cdf_xi(const TailTransform& t, double xi) {
  switch (t.family()) {
    case Family::Hk: return hk_cdf(t.k(), xi);
    case Family::Fk: return num::poisson_cdf(t.k() - 1, xi);
    case Family::Uk: return uk_cdf(t.k(), xi);
    case Family::Rk: return rk_cdf(t.k(), xi);
    case Family::Tk: return nb_cdf(t.k(), t.r(), xi);
    case Family::Bk: return bk_cdf(t.tau(), t.k(), xi);
  }
  return 0.0;
}

double family_log_sf_xi(const TailTransform& t, double xi) {
  switch (t.family()) {
    case Family::Hk:
      return xi <= 0 ? -inf
                     : (std::isinf(xi) ? 0.0
                                       : t.k() * std::log(-std::expm1(-xi)));
    case Family::Fk: return num::log_poisson_sf(t.k(), xi);
    case Family::Uk: return log_uk_sf(t.k(), xi);
    case Family::Rk: return rk_log_sf(t.k(), xi);
    case Family::Tk: return log_nb_sf(t.k(), t.r(), xi);
    case Family::Bk: return log_bk_sf(t.tau(), t.k(), xi);
  }
  return -inf;
}

double transform_cdf(const TailTransform& t, const BaseDistribution& base,
                     double x) {
  return family_cdf_xi(t, xi_at(base, x));
}

double transform_log_sf(const TailTransform& t, const BaseDistribution& base,
                        double x) {
  return family_log_sf_xi(t, xi_at(base, x));
}

double transform_sf(const TailTransform& t, const BaseDistribution& base,
                    double x) {
  double xi = xi_at(base, x);
  double cdf = family_cdf_xi(t, xi);
  if (cdf < 0.5) return 1.0 - cdf;
  return std::exp(family_log_sf_xi(t, xi));
}

double transform_pdf(const TailTransform& t, const BaseDistribution& base,
                     double x) {
  double f = base.pdf(x);
  if (f <= 0.0) return 0.0;
  double xi = xi_at(base, x);
  if (std::isinf(xi)) return 0.0;
  int k = t.k();
  switch (t.family()) {
    case Family::Hk: {
      double s = -std::expm1(-xi);
      return k * std::pow(s, k - 1.0) * f;
    }
    case Family::Fk:
      return f * std::pow(xi, k - 1.0) / std::exp(num::log_factorial(k - 1));
    case Family::Uk:
      return k * f * exp_tail_over_xi2(k, xi);
    case Family::Rk:
      return k * f *
             std::exp(xi + (k - 1.0) * std::log(xi) -
                      (k + 1.0) * std::log1p(xi));
    case Family::Tk:
      return f *
             std::exp(xi + (k - 1.0) * std::log(xi) -
                      (t.r() + k) * std::log1p(xi)) /
             num::beta_fn(t.r(), k);
    case Family::Bk: {
      double mix = 0.0;
      for (const auto& [value, weight] : t.tau().atoms())
        mix += weight * std::pow(value, k) * std::exp(-(value - 1.0) * xi);
      return f * std::pow(xi, k - 1.0) / std::exp(num::log_factorial(k - 1)) *
             mix;
    }
  }
  return 0.0;
}

namespace {

// Invert the kernel in xi; the kernel is decreasing in xi, so this is a
// plain bisection on log xi.  The upper end covers the fat left tails
// (U_k, R_k, T_k decay only like xi^-1 there).
double kernel_xi_for_cdf(const TailTransform& t, double p) {
  auto f = [&t, p](double eta) { return p - family_cdf_xi(t, std::exp(eta)); };
  return std::exp(num::bisect_root(f, -700.0, 34.0, 1e-14, 300));
}

double kernel_xi_for_sf(const TailTransform& t, double s) {
  auto f = [&t, s](double eta) {
    return family_log_sf_xi(t, std::exp(eta)) - std::log(s);
  };
  return std::exp(num::bisect_root(f, -700.0, 34.0, 1e-14, 300));
}

double x_from_xi(const BaseDistribution& base, double xi) {
  double s = -std::expm1(-xi);
  if (s < 1.0) return base.isf(s);
  double F = std::exp(-xi);
  // the implied base level has underflowed; the extremity is the
  // closest representable point
  if (F <= 0.0) return base.left_extremity();
  return base.quantile(F);
}

}  // namespace

double transform_quantile(const TailTransform& t, const BaseDistribution& base,
                          double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("transform_quantile: p outside (0,1)");
  double xi = (1.0 - p <= 0.5) ? kernel_xi_for_sf(t, 1.0 - p)
                               : kernel_xi_for_cdf(t, p);
  return x_from_xi(base, xi);
}

double tail_equivalence_constant(const TailTransform& t) {
  int k = t.k();
  switch (t.family()) {
    case Family::Hk: return 1.0;
    case Family::Fk: return std::exp(-num::log_factorial(k));
    case Family::Uk: return std::exp(-num::log_factorial(k + 1));
    case Family::Rk: return 1.0;
    case Family::Tk: return 1.0 / (k * num::beta_fn(t.r(), k));
    case Family::Bk:
      return t.tau().moment(k) * std::exp(-num::log_factorial(k));
  }
  return 1.0;
}

double empirical_tail_ratio(const TailTransform& t,
                            const BaseDistribution& base, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("empirical_tail_ratio: p outside (0,1)");
  double x = base.quantile(p);
  double log_sf = transform_log_sf(t, base, x);
  if (!std::isfinite(log_sf))
    throw std::domain_error("empirical_tail_ratio: tail too deep");
  return std::exp(log_sf - t.k() * std::log1p(-p));
}

double recurrence_residual(const TailTransform& t,
                           const BaseDistribution& base, double x) {
  int k = t.k();
  if (k > 19)
    throw std::invalid_argument("recurrence_residual: k+1 exceeds cap");
  double xi = xi_at(base, x);
  if (xi <= 0.0 || std::isinf(xi)) return 0.0;
  double F = std::exp(-xi);
  switch (t.family()) {
    case Family::Fk: {
      double lhs = num::poisson_cdf(k, xi);
      double step = F * std::pow(xi, k) / std::exp(num::log_factorial(k));
      return lhs - (num::poisson_cdf(k - 1, xi) + step);
    }
    case Family::Uk: {
      double lhs = uk_cdf(k + 1, xi);
      double sum = 0.0, pow_xi = 1.0, fact = 1.0;
      for (int l = 1; l <= k; ++l) {
        fact *= l;
        sum += pow_xi / fact;
        pow_xi *= xi;
      }
      return lhs - (uk_cdf(k, xi) + uk_cdf(1, xi) - F * sum);
    }
    case Family::Tk: {
      int r = t.r();
      double lhs = nb_cdf(k + 1, r, xi);
      double step = num::binomial_coeff(k + r - 1.0, k) *
                    std::exp(k * std::log(xi) - (k + r) * std::log1p(xi));
      return lhs - (nb_cdf(k, r, xi) + step);
    }
    case Family::Bk: {
      double lhs = bk_cdf(t.tau(), k + 1, xi);
      double mix = 0.0;
      for (const auto& [value, weight] : t.tau().atoms())
        mix += weight * std::pow(value, k) * std::exp(-value * xi);
      double step = std::pow(xi, k) / std::exp(num::log_factorial(k)) * mix;
      return lhs - (bk_cdf(t.tau(), k, xi) + step);
    }
    case Family::Hk:
    case Family::Rk:
      throw std::domain_error("recurrence_residual: family has no recurrence");
  }
  return 0.0;
}

double burr_ode_residual(const BaseDistribution& base, int k, double x) {
  if (k < 1 || k > 20)
    throw std::invalid_argument("burr_ode_residual: k must be in 1..20");
  double f = base.pdf(x);
  double xi = xi_at(base, x);
  if (xi <= 0.0 || std::isinf(xi) || f <= 0.0) return 0.0;
  double F = std::exp(-xi);
  double pdf = k * f *
               std::exp(xi + (k - 1.0) * std::log(xi) -
                        (k + 1.0) * std::log1p(xi));
  double h1 = k * f / (F * xi * (1.0 + xi));
  double sf = std::exp(rk_log_sf(k, xi));
  return pdf - sf * h1;
}

double limit_law_cdf(LimitFamily family, const MaxStableLaw& law, int k, int r,
                     const TauSpec* tau, double x) {
  double xi = law.neg_log_cdf(x);
  switch (family) {
    case LimitFamily::Gk:
      return std::isinf(xi) ? 0.0 : num::poisson_cdf(k - 1, xi);
    case LimitFamily::Jk:
      return family_cdf_xi(TailTransform::uk(k), xi);
    case LimitFamily::Lk:
      return family_cdf_xi(TailTransform::rk(k), xi);
    case LimitFamily::Sk:
      return family_cdf_xi(TailTransform::tk(k, r), xi);
    case LimitFamily::BarakatNigm:
      if (tau == nullptr)
        throw std::invalid_argument("limit_law_cdf: tau required");
      return family_cdf_xi(TailTransform::bk(k, *tau), xi);
  }
  return 0.0;
}

}  // namespace extremalk
