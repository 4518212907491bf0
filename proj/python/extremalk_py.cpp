#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "extremalk/max_stable.hpp"
#include "extremalk/norming.hpp"
#include "extremalk/order_stat_sim.hpp"
#include "extremalk/ordering.hpp"
#include "extremalk/tail_transform.hpp"

namespace py = pybind11;
using namespace extremalk;

namespace {

MaxStableLaw law_from_name(const std::string& kind, double alpha) {
  if (kind == "frechet") return MaxStableLaw::frechet(alpha);
  if (kind == "weibull") return MaxStableLaw::weibull(alpha);
  if (kind == "gumbel") return MaxStableLaw::gumbel();
  throw std::invalid_argument("unknown max-stable law: " + kind);
}

TailTransform transform_from_name(const std::string& family, int k, int r,
                                  const std::optional<TauSpec>& tau) {
  if (family == "hk") return TailTransform::hk(k);
  if (family == "fk") return TailTransform::fk(k);
  if (family == "uk") return TailTransform::uk(k);
  if (family == "rk") return TailTransform::rk(k);
  if (family == "tk") return TailTransform::tk(k, r);
  if (family == "bk")
    return TailTransform::bk(k, tau.value_or(TauSpec::degenerate()));
  throw std::invalid_argument("unknown transform family: " + family);
}

LimitFamily limit_from_name(const std::string& family) {
  if (family == "gk") return LimitFamily::Gk;
  if (family == "jk") return LimitFamily::Jk;
  if (family == "lk") return LimitFamily::Lk;
  if (family == "sk") return LimitFamily::Sk;
  if (family == "bn") return LimitFamily::BarakatNigm;
  throw std::invalid_argument("unknown limit family: " + family);
}

SampleSizeLaw::Kind size_law_from_name(const std::string& name) {
  if (name == "fixed") return SampleSizeLaw::Kind::Fixed;
  if (name == "discrete-uniform") return SampleSizeLaw::Kind::DiscreteUniform;
  if (name == "binomial") return SampleSizeLaw::Kind::ShiftedBinomial;
  if (name == "poisson") return SampleSizeLaw::Kind::ShiftedPoisson;
  if (name == "logarithmic") return SampleSizeLaw::Kind::ShiftedLogarithmic;
  if (name == "geometric") return SampleSizeLaw::Kind::ShiftedGeometric;
  if (name == "negative-binomial")
    return SampleSizeLaw::Kind::ShiftedNegBinomial;
  throw std::invalid_argument("unknown size law: " + name);
}

std::string mda_name(const Mda& mda) {
  switch (mda.kind) {
    case Mda::Kind::Frechet: return "frechet";
    case Mda::Kind::Weibull: return "weibull";
    case Mda::Kind::Gumbel: return "gumbel";
    default: return "unknown";
  }
}

}  // namespace

PYBIND11_MODULE(_extremalk, m) {
  m.doc() =
      "Limit distributions of k-th upper order statistics under fixed and "
      "random sample sizes";

  py::class_<TauSpec>(m, "TauSpec")
      .def(py::init<std::vector<std::pair<double, double>>>(), py::arg("atoms"))
      .def("moment", &TauSpec::moment, py::arg("i"))
      .def_static("degenerate", &TauSpec::degenerate, py::arg("value") = 1.0);

  py::class_<MaxStableLaw>(m, "MaxStableLaw")
      .def_static("make", &law_from_name, py::arg("kind"),
                  py::arg("alpha") = 1.0)
      .def("cdf", &MaxStableLaw::cdf)
      .def("pdf", &MaxStableLaw::pdf)
      .def("quantile", &MaxStableLaw::quantile)
      .def("neg_log_cdf", &MaxStableLaw::neg_log_cdf);

  m.def(
      "max_stable_cdf",
      [](const std::string& kind, double alpha, double x) {
        return law_from_name(kind, alpha).cdf(x);
      },
      py::arg("kind"), py::arg("alpha"), py::arg("x"));
  m.def(
      "max_stable_quantile",
      [](const std::string& kind, double alpha, double p) {
        return law_from_name(kind, alpha).quantile(p);
      },
      py::arg("kind"), py::arg("alpha"), py::arg("p"));
  m.def(
      "stability_norming",
      [](const std::string& kind, double alpha, std::uint64_t n) {
        auto nm = stability_norming(law_from_name(kind, alpha), n);
        return std::make_pair(nm.a, nm.b);
      },
      py::arg("kind"), py::arg("alpha"), py::arg("n"));
  m.def(
      "limit_kth_cdf",
      [](const std::string& kind, double alpha, int k, double x) {
        return limit_kth_cdf(law_from_name(kind, alpha), k, x);
      },
      py::arg("kind"), py::arg("alpha"), py::arg("k"), py::arg("x"));

  py::class_<BaseDistribution>(m, "BaseDistribution")
      .def("cdf", &BaseDistribution::cdf)
      .def("pdf", &BaseDistribution::pdf)
      .def("quantile", &BaseDistribution::quantile)
      .def("sf", &BaseDistribution::sf)
      .def("isf", &BaseDistribution::isf)
      .def_property_readonly("name", &BaseDistribution::name)
      .def_property_readonly("left_extremity",
                             &BaseDistribution::left_extremity)
      .def_property_readonly("right_extremity",
                             &BaseDistribution::right_extremity)
      .def_property_readonly("mda", [](const BaseDistribution& d) {
        return std::make_pair(mda_name(d.mda()), d.mda().alpha);
      });

  m.def("make_base", &make_base, py::arg("name"),
        py::arg("params") = std::map<std::string, double>{});
  m.def("catalog", [] {
    std::vector<py::dict> rows;
    for (const auto& d : catalog()) {
      py::dict row;
      row["name"] = d.name();
      row["params"] = d.params();
      row["mda"] = mda_name(d.mda());
      row["mda_alpha"] = d.mda().alpha;
      rows.push_back(row);
    }
    return rows;
  });
  m.def("regular_variation_ratio", &regular_variation_ratio, py::arg("dist"),
        py::arg("x"), py::arg("t"));
  m.def("von_mises_ratio", &von_mises_ratio, py::arg("dist"), py::arg("x"));
  m.def("auxiliary_function", &auxiliary_function, py::arg("dist"),
        py::arg("t"));

  m.def(
      "transform_cdf",
      [](const std::string& family, int k, const BaseDistribution& base,
         double x, int r, const std::optional<TauSpec>& tau) {
        return transform_cdf(transform_from_name(family, k, r, tau), base, x);
      },
      py::arg("family"), py::arg("k"), py::arg("base"), py::arg("x"),
      py::arg("r") = 1, py::arg("tau") = std::nullopt);
  m.def(
      "transform_pdf",
      [](const std::string& family, int k, const BaseDistribution& base,
         double x, int r, const std::optional<TauSpec>& tau) {
        return transform_pdf(transform_from_name(family, k, r, tau), base, x);
      },
      py::arg("family"), py::arg("k"), py::arg("base"), py::arg("x"),
      py::arg("r") = 1, py::arg("tau") = std::nullopt);
  m.def(
      "transform_quantile",
      [](const std::string& family, int k, const BaseDistribution& base,
         double p, int r, const std::optional<TauSpec>& tau) {
        return transform_quantile(transform_from_name(family, k, r, tau), base,
                                  p);
      },
      py::arg("family"), py::arg("k"), py::arg("base"), py::arg("p"),
      py::arg("r") = 1, py::arg("tau") = std::nullopt);
  m.def(
      "tail_equivalence_constant",
      [](const std::string& family, int k, int r,
         const std::optional<TauSpec>& tau) {
        return tail_equivalence_constant(transform_from_name(family, k, r, tau));
      },
      py::arg("family"), py::arg("k"), py::arg("r") = 1,
      py::arg("tau") = std::nullopt);
  m.def(
      "empirical_tail_ratio",
      [](const std::string& family, int k, const BaseDistribution& base,
         double p, int r, const std::optional<TauSpec>& tau) {
        return empirical_tail_ratio(transform_from_name(family, k, r, tau),
                                    base, p);
      },
      py::arg("family"), py::arg("k"), py::arg("base"), py::arg("p"),
      py::arg("r") = 1, py::arg("tau") = std::nullopt);
  m.def(
      "limit_law_cdf",
      [](const std::string& family, const std::string& kind, double alpha,
         int k, double x, int r, const std::optional<TauSpec>& tau) {
        return limit_law_cdf(limit_from_name(family), law_from_name(kind, alpha),
                             k, r, tau ? &*tau : nullptr, x);
      },
      py::arg("family"), py::arg("kind"), py::arg("alpha"), py::arg("k"),
      py::arg("x"), py::arg("r") = 1, py::arg("tau") = std::nullopt);

  m.def(
      "base_norming",
      [](const BaseDistribution& base, std::uint64_t n) {
        auto nm = base_norming(base, n);
        return std::make_pair(nm.a, nm.b);
      },
      py::arg("base"), py::arg("n"));
  m.def(
      "transform_norming",
      [](const std::string& family, int k, const BaseDistribution& base,
         std::uint64_t n, const std::string& mode, int r,
         const std::optional<TauSpec>& tau) {
        auto nm = transform_norming(transform_from_name(family, k, r, tau),
                                    base, n,
                                    mode == "closed-form"
                                        ? NormingMode::ClosedForm
                                        : NormingMode::QuantileBased);
        return std::make_pair(nm.a, nm.b);
      },
      py::arg("family"), py::arg("k"), py::arg("base"), py::arg("n"),
      py::arg("mode") = "quantile", py::arg("r") = 1,
      py::arg("tau") = std::nullopt);
  m.def(
      "verify_norming",
      [](const std::string& family, int k, const BaseDistribution& base,
         std::uint64_t n, const std::vector<double>& xs,
         const std::string& mode, int r, const std::optional<TauSpec>& tau) {
        return verify_norming(transform_from_name(family, k, r, tau), base,
                              mode == "closed-form"
                                  ? NormingMode::ClosedForm
                                  : NormingMode::QuantileBased,
                              n, xs);
      },
      py::arg("family"), py::arg("k"), py::arg("base"), py::arg("n"),
      py::arg("xs"), py::arg("mode") = "quantile", py::arg("r") = 1,
      py::arg("tau") = std::nullopt);

  m.def(
      "kth_upper_order_stat",
      [](const BaseDistribution& base, std::uint64_t N, int k,
         std::uint64_t seed, std::uint64_t stream) {
        Rng rng(seed, stream);
        return kth_upper_order_stat(base, N, k, rng);
      },
      py::arg("base"), py::arg("N"), py::arg("k"), py::arg("seed"),
      py::arg("stream") = 0);
  m.def(
      "ks_distance",
      [](std::vector<double> sample, const std::function<double(double)>& cdf) {
        std::sort(sample.begin(), sample.end());
        return ks_distance(sample, cdf);
      },
      py::arg("sample"), py::arg("cdf"));
  m.def(
      "convergence_study",
      [](const BaseDistribution& base, const std::string& size_law,
         std::uint64_t m, int k, int r, std::vector<std::uint64_t> n_grid,
         std::uint64_t replicates, std::uint64_t seed, int workers,
         const std::optional<TauSpec>& tau) {
        StudySpec spec;
        spec.size_law = size_law_from_name(size_law);
        spec.m = m;
        spec.k = k;
        spec.r = r;
        spec.tau = tau;
        spec.n_grid = std::move(n_grid);
        spec.replicates = replicates;
        spec.seed = seed;
        spec.workers = workers;
        std::vector<py::dict> rows;
        for (const auto& row : convergence_study(base, spec)) {
          py::dict d;
          d["n"] = row.n;
          d["M"] = row.replicates;
          d["ks"] = row.ks;
          d["seed"] = row.seed;
          d["wall_time_s"] = row.wall_seconds;
          rows.push_back(d);
        }
        return rows;
      },
      py::arg("base"), py::arg("size_law"), py::arg("m"), py::arg("k"),
      py::arg("r"), py::arg("n_grid"), py::arg("replicates"), py::arg("seed"),
      py::arg("workers") = 1, py::arg("tau") = std::nullopt);

  m.def(
      "ordering_report",
      [](const BaseDistribution& base, int k_max, int r_max, int grid) {
        std::vector<py::dict> rows;
        for (const auto& row : ordering_report(base, k_max, r_max, grid)) {
          py::dict d;
          d["claim_id"] = row.claim_id;
          d["k"] = row.k;
          d["r"] = row.r;
          d["max_violation"] = row.max_violation;
          d["pass"] = row.pass;
          rows.push_back(d);
        }
        return rows;
      },
      py::arg("base"), py::arg("k_max"), py::arg("r_max"),
      py::arg("grid") = 1000);
}
