#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "extremalk/norming.hpp"
#include "test_helpers.hpp"

using namespace extremalk;

namespace {

std::vector<double> target_grid(const TailTransform& t,
                                const BaseDistribution& base) {
  MaxStableLaw law = transform_target_law(t, base);
  return {law.quantile(0.1), law.quantile(0.5), law.quantile(0.9)};
}

}  // namespace

TEST_CASE("eta constants") {
  CHECK(eta_constant(TailTransform::fk(2)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eta_constant(TailTransform::tk(2, 2)) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(eta_constant(TailTransform::bk(2, TauSpec::degenerate())) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eta_constant(TailTransform::hk(3)) == 1.0);
  CHECK(eta_constant(TailTransform::rk(3)) == 1.0);
  CHECK(eta_constant(TailTransform::uk(2)) == doctest::Approx(1.0 / 6).epsilon(1e-15));
}

TEST_CASE("base norming constants") {
  auto pareto = make_base("pareto");
  auto nm = base_norming(pareto, 100);
  CHECK(nm.a == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(nm.b == 0.0);

  auto unif = make_base("uniform");
  nm = base_norming(unif, 100);
  CHECK(nm.a == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(nm.b == doctest::Approx(1.0));

  auto expo = make_base("exponential");
  nm = base_norming(expo, 20);  // e^3 rounded
  CHECK(nm.a == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(nm.b == doctest::Approx(std::log(20.0)).epsilon(1e-12));
}

TEST_CASE("closed-form transform norming (frozen quantile values)") {
  auto pareto = make_base("pareto");
  auto nm = transform_norming(TailTransform::fk(2), pareto, 200,
                              NormingMode::ClosedForm);
  CHECK(nm.a == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(nm.b == 0.0);
  nm = transform_norming(TailTransform::hk(2), pareto, 100,
                         NormingMode::ClosedForm);
  CHECK(nm.a == doctest::Approx(10.0).epsilon(1e-12));
  nm = transform_norming(TailTransform::uk(2), pareto, 600,
                         NormingMode::ClosedForm);
  CHECK(nm.a == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("norming sequences are positive; Gumbel locations grow") {
  auto expo = make_base("exponential");
  auto pareto = make_base("pareto");
  auto unif = make_base("uniform");
  for (const auto* base : {&expo, &pareto, &unif}) {
    for (int k = 1; k <= 3; ++k) {
      double prev_b = -num::inf;
      for (std::uint64_t n : {10ull, 100ull, 10000ull, 1000000ull}) {
        for (auto mode : {NormingMode::ClosedForm, NormingMode::QuantileBased}) {
          auto t = TailTransform::fk(k);
          auto nm = transform_norming(t, *base, n, mode);
          CHECK(nm.a > 0.0);
          if (base->mda().kind == Mda::Kind::Gumbel &&
              mode == NormingMode::QuantileBased) {
            CHECK(nm.b >= prev_b);
            prev_b = nm.b;
          }
        }
      }
    }
  }
}

TEST_CASE("convergence of the tail criterion under both modes") {
  std::vector<BaseDistribution> bases = {
      make_base("pareto"), make_base("pareto", {{"alpha", 2.0}}),
      make_base("uniform"), make_base("exponential")};
  for (const auto& base : bases) {
    for (int k = 1; k <= 3; ++k) {
      std::vector<TailTransform> fams = {
          TailTransform::hk(k), TailTransform::fk(k), TailTransform::uk(k),
          TailTransform::rk(k), TailTransform::tk(k, 2)};
      for (const auto& t : fams) {
        auto xs = target_grid(t, base);
        for (auto mode : {NormingMode::QuantileBased, NormingMode::ClosedForm}) {
          double prev = num::inf;
          for (std::uint64_t n : {10000ull, 100000ull, 1000000ull}) {
            double dev = verify_norming(t, base, mode, n, xs);
            // decreasing in n above the quantile-solver noise floor
            CHECK(dev <= std::max(prev * 1.05, 1e-8));
            prev = dev;
          }
          CHECK(prev <= 0.02);  // at n = 1e6
        }
      }
    }
  }
}

TEST_CASE("modes are asymptotically interchangeable") {
  auto pareto = make_base("pareto");
  auto t = TailTransform::uk(2);
  auto xs = target_grid(t, pareto);
  double qb = verify_norming(t, pareto, NormingMode::QuantileBased, 1000000, xs);
  double cf = verify_norming(t, pareto, NormingMode::ClosedForm, 1000000, xs);
  CHECK(qb <= 0.02);
  CHECK(cf <= 0.02);
}

TEST_CASE("exact max-stable base: the criterion residual is the n(1-G^{1/n}) defect") {
  // For H_1 = F = Frechet, n(1 - F(a_n x)) differs from x^-alpha only
  // through the curvature of -log, a Theta(xi^2 / n) effect.
  auto frechet = make_base("frechet");
  auto t = TailTransform::hk(1);
  auto xs = target_grid(t, frechet);
  double xi_max = 0.0;
  for (double x : xs) xi_max = std::max(xi_max, std::pow(x, -1.0));
  for (std::uint64_t n : {100ull, 10000ull, 1000000ull}) {
    double dev = verify_norming(t, frechet, NormingMode::ClosedForm, n, xs);
    CHECK(dev <= xi_max * xi_max / static_cast<double>(n));
  }
}

TEST_CASE("unknown attractor is rejected") {
  BaseDistribution odd(
      "odd", {}, [](double x) { return x < 0 ? 0.0 : (x > 1 ? 1.0 : x); },
      [](double) { return 1.0; }, [](double p) { return p; },
      [](double x) { return 1.0 - x; }, [](double s) { return 1.0 - s; }, 0.0,
      1.0, {Mda::Kind::Unknown, 0.0});
  CHECK_THROWS_AS((void)base_norming(odd, 10), std::domain_error);
  CHECK_THROWS_AS((void)transform_norming(TailTransform::fk(2), odd, 10,
                                          NormingMode::QuantileBased),
                  std::domain_error);
}
