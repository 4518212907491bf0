#include "extremalk/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace extremalk::num {

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n < 0");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial_coeff(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  // Exact in the integer range a double can hold.
  if (n < 60) {
    double c = 1.0;
    for (int i = 0; i < static_cast<int>(k); ++i)
      c = c * (n - i) / (i + 1.0);
    return c;
  }
  return std::exp(log_binomial(n, k));
}

double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

namespace {

// Lower incomplete gamma by ascending series, valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by Lentz continued fraction, valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0) throw std::invalid_argument("gamma_p: a <= 0");
  if (x <= 0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0) throw std::invalid_argument("gamma_q: a <= 0");
  if (x <= 0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double poisson_cdf(int kmax, double xi) {
  if (kmax < 0) return 0.0;
  if (xi <= 0) return 1.0;
  if (std::isinf(xi)) return 0.0;
  double t = std::exp(-xi);
  if (t > 0) {
    double s = t;
    for (int i = 1; i <= kmax; ++i) {
      t *= xi / i;
      s += t;
    }
    return s < 1.0 ? s : 1.0;
  }
  // exp(-xi) underflowed; accumulate the terms in log space.
  double s = 0.0;
  for (int i = 0; i <= kmax; ++i)
    s += std::exp(i * std::log(xi) - xi - log_factorial(i));
  return s;
}

double log_poisson_sf(int k, double xi) {
  if (k <= 0) return 0.0;
  if (xi <= 0) return -inf;
  double cdf = poisson_cdf(k - 1, xi);
  if (cdf < 0.5) return std::log1p(-cdf);
  // P(Pois >= k) = xi^k e^-xi / k! * (1 + xi/(k+1) + xi^2/((k+1)(k+2)) + ...)
  double c = 1.0, s = 1.0;
  for (int j = 1; j < 500; ++j) {
    c *= xi / (k + j);
    s += c;
    if (c < s * 1e-17) break;
  }
  return k * std::log(xi) - xi - log_factorial(k) + std::log(s);
}

double poisson_sf(int k, double xi) {
  if (k <= 0) return 1.0;
  if (xi <= 0) return 0.0;
  double cdf = poisson_cdf(k - 1, xi);
  if (cdf < 0.5) return 1.0 - cdf;
  return std::exp(log_poisson_sf(k, xi));
}

double normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

double normal_sf(double x) { return 0.5 * std::erfc(x * 0.7071067811865475244); }

namespace {

// Acklam's rational initial estimate, refined below by Halley steps.
double normal_quantile_estimate(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("normal_quantile: p outside (0,1)");
  double x = normal_quantile_estimate(p);
  for (int it = 0; it < 2; ++it) {
    // Halley refinement; err is evaluated tail-accurately on either side.
    double err = (p < 0.5) ? (normal_cdf(x) - p) : ((1.0 - p) - normal_sf(x));
    double u = err / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double integrate_finite(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  if (!std::isfinite(fa)) fa = f(a + (b - a) * 1e-12);
  if (!std::isfinite(fb)) fb = f(b - (b - a) * 1e-12);
  double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 60);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return integrate_finite(f, a, b, tol);
  if (lo_inf && hi_inf) {
    return integrate(f, 0.0, inf, 0.5 * tol) +
           integrate(f, -inf, 0.0, 0.5 * tol);
  }
  if (lo_inf) {
    auto g = [&f, b](double x) { return f(2.0 * b - x); };
    return integrate(g, b, inf, tol);
  }
  // Map (a, inf) onto t in (0, 1) via x = a + t/(1-t).
  auto g = [&f, a](double t) {
    double om = 1.0 - t;
    return f(a + t / om) / (om * om);
  };
  return integrate_finite(g, 0.0, 1.0 - 1e-13, tol);
}

double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double xtol, int maxit) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
  for (int i = 0; i < maxit && (hi - lo) > xtol; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval below double resolution
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace extremalk::num
