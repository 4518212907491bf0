#include "extremalk/ordering.hpp"

#include <cmath>
#include <stdexcept>

#include "extremalk/numerics.hpp"
#include "extremalk/tail_transform.hpp"

namespace extremalk {

namespace {

constexpr double kTolerance = 1e-12;

std::vector<double> quantile_grid(const BaseDistribution& base, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("ordering: grid too small");
  std::vector<double> xs(grid_size);
  const double lo = 1e-4, hi = 1.0 - 1e-4;
  for (int i = 0; i < grid_size; ++i) {
    double p = lo + (hi - lo) * i / (grid_size - 1);
    xs[i] = base.quantile(p);
  }
  return xs;
}

}  // namespace

OrderingCheck check_ordering(const std::string& claim_id,
                             const BaseDistribution& base, int k, int r,
                             int grid_size) {
  auto xs = quantile_grid(base, grid_size);
  // gap(x) = required-smaller - required-larger; positive means violation
  auto worst = [&xs](auto&& gap) {
    double w = -num::inf;
    for (double x : xs) w = std::max(w, gap(x));
    return w;
  };
  auto cdf = [&base](const TailTransform& t, double x) {
    return transform_cdf(t, base, x);
  };

  double violation;
  if (claim_id == "i") {
    violation = worst([&](double x) {
      return base.cdf(x) - cdf(TailTransform::uk(1), x);
    });
  } else if (claim_id == "ii") {
    violation = worst([&](double x) {
      double w = cdf(TailTransform::fk(k), x) - cdf(TailTransform::fk(k + 1), x);
      w = std::max(w, cdf(TailTransform::hk(k), x) - cdf(TailTransform::hk(k + 1), x));
      w = std::max(w, cdf(TailTransform::rk(k), x) - cdf(TailTransform::rk(k + 1), x));
      w = std::max(w, cdf(TailTransform::tk(k, r), x) - cdf(TailTransform::tk(k + 1, r), x));
      return w;
    });
  } else if (claim_id == "iii") {
    violation = worst([&](double x) {
      double w = cdf(TailTransform::uk(k), x) - cdf(TailTransform::uk(k + 1), x);
      return std::max(w, base.cdf(x) - cdf(TailTransform::uk(k), x));
    });
  } else if (claim_id == "iv") {
    violation = worst([&](double x) {
      double w = cdf(TailTransform::hk(k), x) - cdf(TailTransform::rk(k), x);
      return std::max(w, base.cdf(x) - cdf(TailTransform::hk(k), x));
    });
  } else if (claim_id == "v") {
    violation = worst([&](double x) {
      double w = base.cdf(x) - cdf(TailTransform::fk(k), x);
      double fr = std::pow(base.cdf(x), r);
      return std::max(w, fr - cdf(TailTransform::tk(k, r), x));
    });
  } else if (claim_id == "vi") {
    violation = worst([&](double x) {
      return cdf(TailTransform::tk(k, r), x) - cdf(TailTransform::rk(k), x);
    });
  } else if (claim_id == "vii") {
    violation = worst([&](double x) {
      return cdf(TailTransform::fk(k), x) - cdf(TailTransform::uk(k), x);
    });
  } else {
    throw std::invalid_argument("check_ordering: unknown claim " + claim_id);
  }
  return {claim_id, k, r, violation, violation <= kTolerance};
}

std::vector<OrderingCheck> ordering_report(const BaseDistribution& base,
                                           int k_max, int r_max,
                                           int grid_size) {
  if (k_max < 1 || r_max < 1)
    throw std::invalid_argument("ordering_report: k_max, r_max must be >= 1");
  std::vector<OrderingCheck> rows;
  for (const char* claim : {"i", "ii", "iii", "iv", "v", "vi", "vii"}) {
    OrderingCheck summary{claim, 1, 1, -num::inf, true};
    for (int k = 1; k <= k_max; ++k) {
      for (int r = 1; r <= r_max; ++r) {
        OrderingCheck c = check_ordering(claim, base, k, r, grid_size);
        if (c.max_violation > summary.max_violation) {
          summary.max_violation = c.max_violation;
          summary.k = k;
          summary.r = r;
        }
      }
    }
    summary.pass = summary.max_violation <= kTolerance;
    rows.push_back(summary);
  }
  return rows;
}

}  // namespace extremalk
