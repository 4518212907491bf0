#include "extremalk/order_stat_sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "extremalk/norming.hpp"
#include "extremalk/numerics.hpp"

namespace extremalk {

namespace {

constexpr std::size_t kMaxTableEntries = 20'000'000;

// Cumulative masses from a pmf recursion, carried to the 1 - 1e-12
// quantile.  first = pmf at the first support point j0; step(pmf, j)
// maps pmf at j to pmf at j+1.
template <typename Step>
std::shared_ptr<const std::vector<double>> build_table(double first,
                                                       std::uint64_t j0,
                                                       Step step) {
  auto table = std::make_shared<std::vector<double>>();
  double cum = 0.0, pmf = first;
  std::uint64_t j = j0;
  while (cum < 1.0 - 1e-12) {
    cum += pmf;
    table->push_back(cum);
    if (table->size() > kMaxTableEntries)
      throw std::domain_error(
          "size law: inversion table too large for this parameter regime");
    pmf = step(pmf, j);
    ++j;
  }
  return table;
}

std::uint64_t draw_from_table(const std::vector<double>& cum,
                              std::uint64_t offset, Rng& rng) {
  for (;;) {
    double u = rng.next_unit();
    if (u > cum.back()) continue;  // beyond the tabled quantile: resample
    auto it = std::lower_bound(cum.begin(), cum.end(), u);
    return offset + static_cast<std::uint64_t>(it - cum.begin());
  }
}

// Binomial(n, p) by geometric skips over the rarer outcome; exact and
// O(n min(p, 1-p)) per draw.
std::uint64_t binomial_draw(std::uint64_t n, double p, Rng& rng) {
  if (p >= 1.0) return n;
  if (p <= 0.0) return 0;
  bool flipped = p > 0.5;
  double q = flipped ? 1.0 - p : p;
  double log_1mq = std::log1p(-q);
  std::uint64_t count = 0, pos = 0;
  for (;;) {
    double skip = std::floor(std::log(rng.next_unit()) / log_1mq) + 1.0;
    if (skip > static_cast<double>(n - pos)) break;
    pos += static_cast<std::uint64_t>(skip);
    if (pos > n) break;
    ++count;
    if (pos == n) break;
  }
  return flipped ? n - count : count;
}

std::uint64_t poisson_inversion(double lambda, Rng& rng) {
  double u = rng.next_unit();
  double pmf = std::exp(-lambda), cum = pmf;
  std::uint64_t j = 0;
  while (u > cum && j < 2000) {
    ++j;
    pmf *= lambda / static_cast<double>(j);
    cum += pmf;
  }
  return j;
}

// Transformed-rejection Poisson sampler (exact) for large means.
std::uint64_t poisson_ptrs(double lambda, Rng& rng) {
  double b = 0.931 + 2.53 * std::sqrt(lambda);
  double a = -0.059 + 0.02483 * b;
  double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  double v_r = 0.9277 - 3.6224 / (b - 2.0);
  double log_lambda = std::log(lambda);
  for (;;) {
    double u = rng.next_unit() - 0.5;
    double v = rng.next_unit();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * log_lambda - lambda - std::lgamma(kf + 1.0))
      return static_cast<std::uint64_t>(kf);
  }
}

}  // namespace

SampleSizeLaw SampleSizeLaw::fixed(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("fixed size law: n must be >= 1");
  SampleSizeLaw law;
  law.kind_ = Kind::Fixed;
  law.n_ = n;
  return law;
}

SampleSizeLaw SampleSizeLaw::discrete_uniform(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("discrete uniform size law: m, n must be >= 1");
  SampleSizeLaw law;
  law.kind_ = Kind::DiscreteUniform;
  law.m_ = m;
  law.n_ = n;
  return law;
}

SampleSizeLaw SampleSizeLaw::shifted_binomial(std::uint64_t m, std::uint64_t n,
                                              double p) {
  if (m < 1) throw std::invalid_argument("binomial size law: m must be >= 1");
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial size law: p must be in (0,1]");
  SampleSizeLaw law;
  law.kind_ = Kind::ShiftedBinomial;
  law.m_ = m;
  law.n_ = n;
  law.p_ = p;
  return law;
}

SampleSizeLaw SampleSizeLaw::shifted_poisson(std::uint64_t m, double lambda) {
  if (m < 1) throw std::invalid_argument("poisson size law: m must be >= 1");
  if (!(lambda > 0.0))
    throw std::invalid_argument("poisson size law: lambda must be > 0");
  SampleSizeLaw law;
  law.kind_ = Kind::ShiftedPoisson;
  law.m_ = m;
  law.lambda_ = lambda;
  return law;
}

SampleSizeLaw SampleSizeLaw::shifted_logarithmic(std::uint64_t n, double theta) {
  if (n < 1) throw std::invalid_argument("logarithmic size law: n must be >= 1");
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("logarithmic size law: theta must be in (0,1)");
  SampleSizeLaw law;
  law.kind_ = Kind::ShiftedLogarithmic;
  law.n_ = n;
  law.theta_ = theta;
  double norm = -std::log1p(-theta);
  law.table_offset_ = 1;
  law.table_ = build_table(theta / norm, 1, [theta](double pmf, std::uint64_t j) {
    return pmf * theta * static_cast<double>(j) / static_cast<double>(j + 1);
  });
  return law;
}

SampleSizeLaw SampleSizeLaw::shifted_geometric(std::uint64_t m, double p) {
  if (m < 1) throw std::invalid_argument("geometric size law: m must be >= 1");
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("geometric size law: p must be in (0,1]");
  SampleSizeLaw law;
  law.kind_ = Kind::ShiftedGeometric;
  law.m_ = m;
  law.p_ = p;
  return law;
}

SampleSizeLaw SampleSizeLaw::shifted_neg_binomial(std::uint64_t m, int r,
                                                  double p) {
  if (m < 1)
    throw std::invalid_argument("negative binomial size law: m must be >= 1");
  if (r < 1 || r > 20)
    throw std::invalid_argument("negative binomial size law: r must be in 1..20");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("negative binomial size law: p must be in (0,1)");
  SampleSizeLaw law;
  law.kind_ = Kind::ShiftedNegBinomial;
  law.m_ = m;
  law.r_ = r;
  law.p_ = p;
  double q = 1.0 - p;
  law.table_offset_ = 0;
  law.table_ =
      build_table(std::pow(p, r), 0, [q, r](double pmf, std::uint64_t j) {
        return pmf * q * (static_cast<double>(j) + r) /
               (static_cast<double>(j) + 1.0);
      });
  return law;
}

std::uint64_t SampleSizeLaw::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::Fixed:
      return n_;
    case Kind::DiscreteUniform: {
      double u = rng.next_unit();
      auto j = static_cast<std::uint64_t>(u * static_cast<double>(n_));
      if (j >= n_) j = n_ - 1;
      return m_ + 1 + j;
    }
    case Kind::ShiftedBinomial:
      return m_ + binomial_draw(n_, p_, rng);
    case Kind::ShiftedPoisson:
      return m_ + (lambda_ < 10.0 ? poisson_inversion(lambda_, rng)
                                  : poisson_ptrs(lambda_, rng));
    case Kind::ShiftedLogarithmic:
      return n_ + draw_from_table(*table_, table_offset_, rng);
    case Kind::ShiftedGeometric: {
      if (p_ >= 1.0) return m_;
      double j = std::floor(std::log(rng.next_unit()) / std::log1p(-p_));
      return m_ + static_cast<std::uint64_t>(j);
    }
    case Kind::ShiftedNegBinomial:
      return m_ + draw_from_table(*table_, table_offset_, rng);
  }
  return 0;
}

std::uint64_t sample_size(const SampleSizeLaw& law, Rng& rng) {
  return law.sample(rng);
}

double kth_upper_order_stat(const BaseDistribution& base, std::uint64_t N,
                            int k, Rng& rng) {
  if (k < 1 || static_cast<std::uint64_t>(k) > N)
    throw std::domain_error("kth_upper_order_stat: requires 1 <= k <= N");
  double log_u = 0.0;
  for (int j = 0; j < k; ++j)
    log_u += std::log(rng.next_unit()) / static_cast<double>(N - j);
  double s = -std::expm1(log_u);  // survival level of U_(N-k+1)
  if (s < 5e-324) s = 5e-324;
  if (s >= 1.0) s = 1.0 - 1e-16;
  return base.isf(s);
}

std::function<double(double)> predicted_limit(SampleSizeLaw::Kind kind,
                                              const MaxStableLaw& law, int k,
                                              int r, const TauSpec* tau) {
  if (tau != nullptr) {
    TauSpec spec = *tau;
    return [law, k, spec](double x) {
      return limit_law_cdf(LimitFamily::BarakatNigm, law, k, 1, &spec, x);
    };
  }
  switch (kind) {
    case SampleSizeLaw::Kind::Fixed:
    case SampleSizeLaw::Kind::ShiftedBinomial:
    case SampleSizeLaw::Kind::ShiftedPoisson:
    case SampleSizeLaw::Kind::ShiftedLogarithmic:
      return [law, k](double x) { return limit_kth_cdf(law, k, x); };
    case SampleSizeLaw::Kind::DiscreteUniform:
      return [law, k](double x) {
        return limit_law_cdf(LimitFamily::Jk, law, k, 1, nullptr, x);
      };
    case SampleSizeLaw::Kind::ShiftedGeometric:
      return [law, k](double x) {
        return limit_law_cdf(LimitFamily::Lk, law, k, 1, nullptr, x);
      };
    case SampleSizeLaw::Kind::ShiftedNegBinomial:
      return [law, k, r](double x) {
        return limit_law_cdf(LimitFamily::Sk, law, k, r, nullptr, x);
      };
  }
  throw std::domain_error("predicted_limit: unknown size law");
}

double ks_distance(std::span<const double> sorted_sample,
                   const std::function<double(double)>& cdf) {
  if (sorted_sample.empty())
    throw std::invalid_argument("ks_distance: empty sample");
  double m = static_cast<double>(sorted_sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
    double F = cdf(sorted_sample[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / m - F);
    d = std::max(d, F - static_cast<double>(i) / m);
  }
  return d;
}

SampleSizeLaw coupled_law(SampleSizeLaw::Kind kind, std::uint64_t m, int r,
                          std::uint64_t n) {
  double nd = static_cast<double>(n);
  switch (kind) {
    case SampleSizeLaw::Kind::Fixed:
      return SampleSizeLaw::fixed(n);
    case SampleSizeLaw::Kind::DiscreteUniform:
      return SampleSizeLaw::discrete_uniform(m, n);
    case SampleSizeLaw::Kind::ShiftedBinomial:
      return SampleSizeLaw::shifted_binomial(m, n, 1.0 - 1.0 / std::sqrt(nd));
    case SampleSizeLaw::Kind::ShiftedPoisson:
      return SampleSizeLaw::shifted_poisson(m, nd);
    case SampleSizeLaw::Kind::ShiftedLogarithmic:
      // theta -> 1 is all the limit needs; 1 - 1/sqrt(n) keeps N_n/n
      // concentrated at 1 (the 1 - 1/n choice approaches the limit only
      // at a 1/log n rate)
      return SampleSizeLaw::shifted_logarithmic(n, 1.0 - 1.0 / std::sqrt(nd));
    case SampleSizeLaw::Kind::ShiftedGeometric:
      return SampleSizeLaw::shifted_geometric(m, 1.0 / nd);
    case SampleSizeLaw::Kind::ShiftedNegBinomial:
      return SampleSizeLaw::shifted_neg_binomial(m, r, 1.0 / nd);
  }
  throw std::domain_error("coupled_law: unknown size law");
}

namespace {

// Replicate i always consumes its own substream (seed, i), so the
// merged sample does not depend on how replicates are chunked over
// threads.
void run_replicates(const BaseDistribution& base, const SampleSizeLaw& law,
                    const TauSpec* tau, std::uint64_t n, int k,
                    std::uint64_t seed, const Norming& nm,
                    std::vector<double>& out, std::uint64_t lo,
                    std::uint64_t hi) {
  for (std::uint64_t i = lo; i < hi; ++i) {
    Rng rng(seed, i);
    std::uint64_t N;
    if (tau != nullptr) {
      double u = rng.next_unit();
      double cum = 0.0;
      double value = tau->atoms().back().first;
      for (const auto& [v, w] : tau->atoms()) {
        cum += w;
        if (u <= cum) {
          value = v;
          break;
        }
      }
      N = static_cast<std::uint64_t>(
          std::llround(value * static_cast<double>(n)));
    } else {
      N = law.sample(rng);
    }
    if (N < static_cast<std::uint64_t>(k))
      throw std::domain_error("convergence_study: sample size below k");
    double x = kth_upper_order_stat(base, N, k, rng);
    out[i] = (x - nm.b) / nm.a;
  }
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const BaseDistribution& base,
                                              const StudySpec& spec) {
  if (spec.replicates < 1)
    throw std::invalid_argument("convergence_study: replicates must be >= 1");
  if (spec.k < 1) throw std::invalid_argument("convergence_study: k must be >= 1");
  if (!spec.tau && spec.size_law != SampleSizeLaw::Kind::Fixed &&
      spec.size_law != SampleSizeLaw::Kind::ShiftedLogarithmic &&
      spec.m < static_cast<std::uint64_t>(spec.k))
    throw std::invalid_argument("convergence_study: requires m >= k");
  MaxStableLaw law = attractor_law(base);
  auto limit = predicted_limit(spec.size_law, law, spec.k, spec.r,
                               spec.tau ? &*spec.tau : nullptr);
  int workers = std::max(1, spec.workers);

  std::vector<ConvergenceRow> rows;
  for (std::uint64_t n : spec.n_grid) {
    auto start = std::chrono::steady_clock::now();
    SampleSizeLaw size_law = coupled_law(spec.size_law, spec.m, spec.r, n);
    Norming nm = base_norming(base, n);
    std::vector<double> draws(spec.replicates);
    if (workers == 1) {
      run_replicates(base, size_law, spec.tau ? &*spec.tau : nullptr, n,
                     spec.k, spec.seed, nm, draws, 0, spec.replicates);
    } else {
      std::vector<std::thread> pool;
      std::uint64_t chunk = (spec.replicates + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        std::uint64_t lo = w * chunk;
        std::uint64_t hi = std::min(spec.replicates, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
          run_replicates(base, size_law, spec.tau ? &*spec.tau : nullptr, n,
                         spec.k, spec.seed, nm, draws, lo, hi);
        });
      }
      for (auto& th : pool) th.join();
    }
    std::sort(draws.begin(), draws.end());
    double ks = ks_distance(draws, limit);
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    rows.push_back({n, spec.replicates, ks, spec.seed, wall});
  }
  return rows;
}

}  // namespace extremalk
