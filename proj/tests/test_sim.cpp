#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "extremalk/norming.hpp"
#include "extremalk/numerics.hpp"
#include "extremalk/order_stat_sim.hpp"
#include "test_helpers.hpp"

using namespace extremalk;

namespace {

std::vector<double> draw_sizes(const SampleSizeLaw& law, std::uint64_t seed,
                               int m) {
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) {
    Rng rng(seed, i);
    out[i] = static_cast<double>(law.sample(rng));
  }
  return out;
}

// sup over lattice points of |empirical cdf - cdf|; the right
// comparison for integer-valued laws, where ks_distance's continuity
// assumption would count whole atoms as discrepancy.
double lattice_cdf_sup_dev(const std::vector<double>& draws,
                           const std::function<double(double)>& cdf) {
  std::vector<double> sorted = draws;
  std::sort(sorted.begin(), sorted.end());
  double m = static_cast<double>(sorted.size());
  double dev = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    dev = std::max(dev, std::fabs((i + 1) / m - cdf(sorted[i])));
  }
  return dev;
}

}  // namespace

TEST_CASE("degenerate size laws") {
  Rng rng(1, 0);
  auto fixed = SampleSizeLaw::fixed(7);
  for (int i = 0; i < 10; ++i) CHECK(fixed.sample(rng) == 7);
  auto geo1 = SampleSizeLaw::shifted_geometric(3, 1.0);
  for (int i = 0; i < 10; ++i) CHECK(geo1.sample(rng) == 3);
}

TEST_CASE("discrete uniform sampler: chi-square over the support") {
  auto law = SampleSizeLaw::discrete_uniform(2, 3);  // uniform on {3,4,5}
  const int m = 100000;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < m; ++i) {
    Rng rng(99, i);
    std::uint64_t v = law.sample(rng);
    REQUIRE(v >= 3);
    REQUIRE(v <= 5);
    counts[v - 3]++;
  }
  double expect = m / 3.0, chi2 = 0.0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 13.8);  // 99.9% point of chi2 with 2 dof
}

TEST_CASE("binomial sampler matches the exact pmf") {
  const std::uint64_t n = 30;
  const double p = 0.9;
  auto law = SampleSizeLaw::shifted_binomial(2, n, p);
  const int m = 100000;
  std::vector<int> counts(n + 1, 0);
  for (int i = 0; i < m; ++i) {
    Rng rng(7, i);
    std::uint64_t v = law.sample(rng);
    REQUIRE(v >= 2);
    REQUIRE(v <= 2 + n);
    counts[v - 2]++;
  }
  double chi2 = 0.0;
  for (std::uint64_t j = 15; j <= n; ++j) {  // bins with healthy mass
    double pj = num::binomial_coeff(static_cast<double>(n),
                                    static_cast<double>(j)) *
                std::pow(p, static_cast<double>(j)) *
                std::pow(1 - p, static_cast<double>(n - j));
    double e = m * pj;
    if (e < 20) continue;
    chi2 += (counts[j] - e) * (counts[j] - e) / e;
  }
  CHECK(chi2 < 40.0);  // ~13 dof, far beyond the 99.9% point only on failure
}

TEST_CASE("poisson samplers are exact in both regimes") {
  for (double lambda : {3.0, 50.0, 400.0}) {
    auto law = SampleSizeLaw::shifted_poisson(1, lambda);
    auto draws = draw_sizes(law, 11, 100000);
    auto cdf = [lambda](double x) {
      return num::poisson_cdf(static_cast<int>(std::floor(x)) - 1, lambda);
    };
    CHECK(lattice_cdf_sup_dev(draws, cdf) < 0.01);
  }
}

TEST_CASE("logarithmic sampler matches its pmf") {
  const double theta = 0.9;
  auto law = SampleSizeLaw::shifted_logarithmic(5, theta);
  const int m = 100000;
  std::vector<int> counts(200, 0);
  double mean = 0.0;
  for (int i = 0; i < m; ++i) {
    Rng rng(13, i);
    std::uint64_t v = law.sample(rng);
    REQUIRE(v >= 6);
    mean += static_cast<double>(v - 5) / m;
    if (v - 5 < counts.size()) counts[v - 5]++;
  }
  double norm = -std::log1p(-theta);
  double chi2 = 0.0;
  int dof = 0;
  for (int j = 1; j <= 40; ++j) {
    double pj = std::pow(theta, j) / (j * norm);
    double e = m * pj;
    if (e < 20) continue;
    chi2 += (counts[j] - e) * (counts[j] - e) / e;
    ++dof;
  }
  CHECK(dof > 10);
  CHECK(chi2 < 80.0);
  CHECK(mean == doctest::Approx(theta / ((1 - theta) * norm)).epsilon(0.02));
}

TEST_CASE("negative binomial sampler matches its pmf") {
  const int r = 2;
  const double p = 0.05;
  auto law = SampleSizeLaw::shifted_neg_binomial(2, r, p);
  auto draws = draw_sizes(law, 17, 100000);
  auto cdf = [r, p](double x) {
    // P(N <= x) with N = 2 + NB(r, p); xi-form cdf with q = 1-p
    double j = std::floor(x) - 2.0;
    if (j < 0) return 0.0;
    double q = 1.0 - p;
    double pmf = std::pow(p, r), cum = pmf;
    for (int l = 1; l <= static_cast<int>(j); ++l) {
      pmf *= q * (l - 1.0 + r) / l;
      cum += pmf;
    }
    return std::min(cum, 1.0);
  };
  CHECK(lattice_cdf_sup_dev(draws, cdf) < 0.01);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((void)SampleSizeLaw::shifted_geometric(2, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)SampleSizeLaw::shifted_logarithmic(5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)SampleSizeLaw::shifted_poisson(1, -2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)SampleSizeLaw::shifted_neg_binomial(2, 0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)SampleSizeLaw::fixed(0), std::invalid_argument);
}

TEST_CASE("k-th maximum draws: unit and small-N exactness") {
  auto unif = make_base("uniform");
  auto expo = make_base("exponential");

  // N = 1: plain draw from the base df
  {
    std::vector<double> xs(20000);
    for (int i = 0; i < 20000; ++i) {
      Rng rng(5, i);
      xs[i] = kth_upper_order_stat(expo, 1, 1, rng);
    }
    std::sort(xs.begin(), xs.end());
    CHECK(ks_distance(xs, [&expo](double x) { return expo.cdf(x); }) < 0.02);
  }

  // min of two uniforms has mean 1/3
  {
    double mean = 0.0;
    const int m = 1000000;
    for (int i = 0; i < m; ++i) {
      Rng rng(6, i);
      mean += kth_upper_order_stat(unif, 2, 2, rng) / m;
    }
    CHECK(mean == doctest::Approx(1.0 / 3.0).epsilon(0.006));
  }

  // huge N stays O(k) and matches the exact u^N cdf in log space
  {
    const std::uint64_t N = 1000000000ull;
    std::vector<double> xs(10000);
    for (int i = 0; i < 10000; ++i) {
      Rng rng(8, i);
      xs[i] = kth_upper_order_stat(unif, N, 1, rng);
    }
    std::sort(xs.begin(), xs.end());
    auto cdf = [N](double x) {
      if (x <= 0) return 0.0;
      if (x >= 1) return 1.0;
      return std::exp(static_cast<double>(N) * std::log(x));
    };
    CHECK(ks_distance(xs, cdf) < 0.02);
  }

  CHECK_THROWS_AS(
      [&] {
        Rng rng(1, 1);
        (void)kth_upper_order_stat(unif, 2, 3, rng);
      }(),
      std::domain_error);
}

TEST_CASE("small-N draws match the exact order-statistic df") {
  auto expo = make_base("exponential");
  const int m = 100000;
  for (std::uint64_t N : {2ull, 5ull, 8ull}) {
    for (int k = 1; k <= static_cast<int>(N); k += (N > 2 ? 2 : 1)) {
      std::vector<double> xs(m);
      for (int i = 0; i < m; ++i) {
        Rng rng(1000 + N * 10 + k, i);
        xs[i] = kth_upper_order_stat(expo, N, k, rng);
      }
      std::sort(xs.begin(), xs.end());
      auto cdf = [&expo, N, k](double x) {
        // sum_{i<k} C(N,i) F^{N-i} (1-F)^i
        double F = expo.cdf(x), s = 0.0;
        for (int i = 0; i < k; ++i)
          s += num::binomial_coeff(static_cast<double>(N), i) *
               std::pow(F, static_cast<double>(N - i)) *
               std::pow(1.0 - F, i);
        return s;
      };
      CHECK(ks_distance(xs, cdf) < 0.01);
    }
  }
}

TEST_CASE("predicted limits") {
  auto gumbel = MaxStableLaw::gumbel();
  auto logistic = predicted_limit(SampleSizeLaw::Kind::ShiftedGeometric, gumbel, 1);
  for (double x : {-1.0, 0.0, 2.0})
    CHECK(logistic(x) ==
          doctest::Approx(1.0 / (1.0 + std::exp(-x))).epsilon(1e-14));

  auto frechet = MaxStableLaw::frechet(1);
  auto fixed = predicted_limit(SampleSizeLaw::Kind::Fixed, frechet, 1);
  CHECK(fixed(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  auto nb1 = predicted_limit(SampleSizeLaw::Kind::ShiftedNegBinomial, frechet, 2, 1);
  auto geo = predicted_limit(SampleSizeLaw::Kind::ShiftedGeometric, frechet, 2);
  for (double x : {0.3, 1.0, 4.0})
    CHECK(nb1(x) == doctest::Approx(geo(x)).epsilon(1e-14));
}

TEST_CASE("ks distance") {
  // sample placed exactly at the (i - 1/2)/M quantiles
  {
    const int m = 64;
    std::vector<double> xs(m);
    for (int i = 0; i < m; ++i) xs[i] = (i + 0.5) / m;
    CHECK(ks_distance(xs, [](double x) { return x; }) ==
          doctest::Approx(1.0 / (2 * m)).epsilon(1e-12));
  }
  {
    std::vector<double> xs = {0.25, 0.75};
    CHECK(ks_distance(xs, [](double x) { return x; }) ==
          doctest::Approx(0.25).epsilon(1e-15));
  }
  {
    std::vector<double> xs = {0.8, 0.8, 0.8};
    double d = ks_distance(xs, [](double x) { return x < 0.8 ? 0.0 : 0.8; });
    CHECK(d == doctest::Approx(0.8).epsilon(1e-15));
  }
}

TEST_CASE("convergence studies are reproducible and worker-independent") {
  auto expo = make_base("exponential");
  StudySpec spec;
  spec.size_law = SampleSizeLaw::Kind::ShiftedGeometric;
  spec.m = 1;
  spec.k = 1;
  spec.n_grid = {1000};
  spec.replicates = 20000;
  spec.seed = 42;
  spec.workers = 1;
  auto rows1 = convergence_study(expo, spec);
  auto rows2 = convergence_study(expo, spec);
  spec.workers = 3;
  auto rows3 = convergence_study(expo, spec);
  CHECK(rows1[0].ks == rows2[0].ks);
  CHECK(rows1[0].ks == rows3[0].ks);

  spec.seed = 43;
  auto rows4 = convergence_study(expo, spec);
  CHECK(rows1[0].ks != rows4[0].ks);
}

TEST_CASE("ks shrinks along the n-grid (up to the sampling floor)") {
  auto expo = make_base("exponential");
  for (auto kind : {SampleSizeLaw::Kind::Fixed,
                    SampleSizeLaw::Kind::ShiftedGeometric,
                    SampleSizeLaw::Kind::DiscreteUniform}) {
    StudySpec spec;
    spec.size_law = kind;
    spec.m = 2;
    spec.k = 2;
    spec.n_grid = {100, 1000, 10000};
    spec.replicates = 20000;
    spec.seed = 21;
    auto rows = convergence_study(expo, spec);
    double floor = 2.0 * 1.36 / std::sqrt(static_cast<double>(spec.replicates));
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].ks <= rows[i - 1].ks + floor);
    CHECK(rows.back().ks < 0.03);
  }
}

TEST_CASE("binomial, Poisson and logarithmic regimes share the fixed-n limit") {
  auto pareto = make_base("pareto");
  auto draw_normalized = [&pareto](SampleSizeLaw::Kind kind, std::uint64_t seed) {
    StudySpec spec;
    spec.size_law = kind;
    spec.m = 2;
    spec.k = 2;
    spec.n_grid = {10000};
    spec.replicates = 50000;
    spec.seed = seed;
    // reuse the study internals by drawing through convergence_study's
    // own machinery: ks against the shared G_k limit
    return convergence_study(pareto, spec)[0].ks;
  };
  // each matches G_k on its own...
  CHECK(draw_normalized(SampleSizeLaw::Kind::Fixed, 3) < 0.02);
  CHECK(draw_normalized(SampleSizeLaw::Kind::ShiftedBinomial, 3) < 0.03);
  CHECK(draw_normalized(SampleSizeLaw::Kind::ShiftedPoisson, 3) < 0.03);
  CHECK(draw_normalized(SampleSizeLaw::Kind::ShiftedLogarithmic, 3) < 0.03);

  // ...and the raw samples are mutually close (two-sample KS)
  auto sample_of = [&pareto](SampleSizeLaw::Kind kind) {
    const std::uint64_t n = 10000;
    auto law = coupled_law(kind, 2, 1, n);
    auto nm = base_norming(pareto, n);
    std::vector<double> xs(50000);
    for (int i = 0; i < 50000; ++i) {
      Rng rng(3, i);
      std::uint64_t N = law.sample(rng);
      xs[i] = (kth_upper_order_stat(pareto, N, 2, rng) - nm.b) / nm.a;
    }
    return xs;
  };
  auto fixed = sample_of(SampleSizeLaw::Kind::Fixed);
  for (auto kind : {SampleSizeLaw::Kind::ShiftedBinomial,
                    SampleSizeLaw::Kind::ShiftedPoisson,
                    SampleSizeLaw::Kind::ShiftedLogarithmic}) {
    CHECK(testhelp::two_sample_ks(fixed, sample_of(kind)) < 0.03);
  }
}

TEST_CASE("tau-mixture study converges to the Barakat-Nigm limit") {
  auto pareto = make_base("pareto");
  StudySpec spec;
  spec.size_law = SampleSizeLaw::Kind::Fixed;
  spec.tau = TauSpec({{1.0, 0.5}, {2.0, 0.5}});
  spec.k = 2;
  spec.n_grid = {10000};
  spec.replicates = 30000;
  spec.seed = 9;
  auto rows = convergence_study(pareto, spec);
  CHECK(rows[0].ks < 0.03);
}
