#pragma once

#include <cstdint>
#include <functional>
#include <limits>

// Shared numerical routines: log-space combinatorics, regularized
// incomplete gamma, Poisson tail sums, normal distribution functions,
// adaptive quadrature and root bracketing.
namespace extremalk::num {

inline constexpr double inf = std::numeric_limits<double>::infinity();

double log_factorial(int n);
double log_binomial(double n, double k);
double binomial_coeff(double n, double k);

// Complete beta function B(a, b).
double beta_fn(double a, double b);

// Regularized incomplete gamma: gamma_p = P(a, x), gamma_q = Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// P(Pois(xi) <= kmax) and P(Pois(xi) >= k).  The survival form is
// computed by an ascending series when the complement would cancel,
// so it stays accurate down to xi ~ 1e-300.
double poisson_cdf(int kmax, double xi);
double poisson_sf(int k, double xi);
double log_poisson_sf(int k, double xi);

// Standard normal.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_sf(double x);
double normal_quantile(double p);

// Adaptive Simpson quadrature; either endpoint may be infinite
// (mapped internally).  tol is an absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol);

// Bisection for a monotone function with f(lo) and f(hi) bracketing 0.
double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double xtol, int maxit = 200);

}  // namespace extremalk::num
