#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "extremalk/base_distribution.hpp"
#include "extremalk/rng.hpp"
#include "extremalk/tail_transform.hpp"

namespace extremalk {

// Distribution of the random sample size N_n.  Laws whose exact
// inversion needs a cumulative table (logarithmic, negative binomial)
// build it once at construction, up to the 1 - 1e-12 quantile; draws
// beyond the table resample.
class SampleSizeLaw {
 public:
  enum class Kind {
    Fixed,
    DiscreteUniform,
    ShiftedBinomial,
    ShiftedPoisson,
    ShiftedLogarithmic,
    ShiftedGeometric,
    ShiftedNegBinomial
  };

  static SampleSizeLaw fixed(std::uint64_t n);
  // pmf 1/n on m+1 .. m+n
  static SampleSizeLaw discrete_uniform(std::uint64_t m, std::uint64_t n);
  // N = m + Binomial(n, p)
  static SampleSizeLaw shifted_binomial(std::uint64_t m, std::uint64_t n, double p);
  // N = m + Poisson(lambda)
  static SampleSizeLaw shifted_poisson(std::uint64_t m, double lambda);
  // N = n + Logarithmic(theta), support n+1, n+2, ...
  static SampleSizeLaw shifted_logarithmic(std::uint64_t n, double theta);
  // N = m + Geometric(p) on m, m+1, ...
  static SampleSizeLaw shifted_geometric(std::uint64_t m, double p);
  // N = m + NegBinomial(r, p) on m, m+1, ...
  static SampleSizeLaw shifted_neg_binomial(std::uint64_t m, int r, double p);

  Kind kind() const { return kind_; }
  std::uint64_t m() const { return m_; }
  std::uint64_t n() const { return n_; }
  int r() const { return r_; }
  double p() const { return p_; }
  double lambda() const { return lambda_; }
  double theta() const { return theta_; }

  std::uint64_t sample(Rng& rng) const;

 private:
  SampleSizeLaw() = default;
  Kind kind_ = Kind::Fixed;
  std::uint64_t m_ = 0, n_ = 0;
  int r_ = 1;
  double p_ = 0, lambda_ = 0, theta_ = 0;
  std::uint64_t table_offset_ = 0;
  std::shared_ptr<const std::vector<double>> table_;  // cumulative masses
};

std::uint64_t sample_size(const SampleSizeLaw& law, Rng& rng);

// One draw of the k-th largest of N iid observations from `base`,
// via the descending record recursion on uniform order statistics;
// O(k) work regardless of N.
double kth_upper_order_stat(const BaseDistribution& base, std::uint64_t N,
                            int k, Rng& rng);

// The limit df the normalized k-th maximum converges to under the given
// size law; a non-null tau overrides the law with the N_n/n -> tau regime.
std::function<double(double)> predicted_limit(SampleSizeLaw::Kind kind,
                                              const MaxStableLaw& law, int k,
                                              int r = 1,
                                              const TauSpec* tau = nullptr);

// Exact sup-distance between a sorted sample and a cdf.
double ks_distance(std::span<const double> sorted_sample,
                   const std::function<double(double)>& cdf);

struct ConvergenceRow {
  std::uint64_t n;
  std::uint64_t replicates;
  double ks;
  std::uint64_t seed;
  double wall_seconds;
};

struct StudySpec {
  SampleSizeLaw::Kind size_law = SampleSizeLaw::Kind::Fixed;
  std::uint64_t m = 1;           // shift (ignored for Fixed / Logarithmic)
  int k = 1;
  int r = 1;                     // negative-binomial shape
  std::optional<TauSpec> tau;    // N_n = round(tau_i n) mixture when set
  std::vector<std::uint64_t> n_grid;
  std::uint64_t replicates = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
};

// For each n: instantiate the size law at its coupling parameters
// (geometric / negative binomial p = 1/n, Poisson lambda = n, binomial
// and logarithmic parameter 1 - 1/sqrt(n)), draw the normalized k-th
// maxima, and measure the exact KS distance to the predicted limit.
// Deterministic given the seed, independent of worker count.
std::vector<ConvergenceRow> convergence_study(const BaseDistribution& base,
                                              const StudySpec& spec);

// The size law convergence_study instantiates at index n.
SampleSizeLaw coupled_law(SampleSizeLaw::Kind kind, std::uint64_t m, int r,
                          std::uint64_t n);

}  // namespace extremalk
