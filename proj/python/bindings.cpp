#include "tensorrank/axioms.hpp"
#include "tensorrank/errors.hpp"
#include "tensorrank/fullrank.hpp"
#include "tensorrank/generators.hpp"
#include "tensorrank/io.hpp"
#include "tensorrank/rank_functions.hpp"
#include "tensorrank/tucker.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
namespace tr = tensorrank;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

tr::DenseTensor to_tensor(const Array& a) {
    if (a.ndim() < 1) throw tr::ArgumentError("expected an array with at least one dimension");
    tr::Shape shape(a.shape(), a.shape() + a.ndim());
    std::vector<double> values(a.data(), a.data() + a.size());
    return tr::DenseTensor(std::move(shape), std::move(values));
}

Array to_array(const tr::DenseTensor& x) {
    std::vector<py::ssize_t> shape(x.shape().begin(), x.shape().end());
    Array out(shape);
    std::copy(x.values().begin(), x.values().end(), out.mutable_data());
    return out;
}

tr::RankFunction rank_function(const std::string& name, const std::string& tol) {
    const auto t = tr::RankTolerance::parse(tol);
    if (name == "max") return tr::max_tucker(t);
    if (name == "submax") return tr::submax_tucker(t);
    if (name == "min") return tr::min_rank(tr::max_tucker(t), tr::submax_tucker(t));
    if (name == "closure-max") return tr::closure_rank_function(tr::max_tucker(t));
    if (name == "closure-submax") return tr::closure_rank_function(tr::submax_tucker(t));
    throw tr::ArgumentError("unknown rank function '" + name + "'");
}

py::dict certificate(const tr::FullRankCertificate& c) {
    py::dict d;
    d["mode"] = c.mode ? py::object(py::int_(*c.mode)) : py::object(py::none());
    d["indices"] = c.indices;
    d["rank"] = c.rank;
    d["selection"] = c.selection.per_mode();
    return d;
}

py::dict model_dict(const tr::TuckerModel& m) {
    py::dict d;
    d["core"] = to_array(m.core);
    py::list factors;
    for (const auto& f : m.factors) factors.append(py::cast(f));
    d["factors"] = factors;
    d["method"] = tr::to_string(m.method);
    d["iterations"] = m.iterations;
    d["relative_error"] = m.relative_error;
    d["error_history"] = m.error_history;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Tensor rank functions, full-rank subtensors and Tucker approximation";

    auto base = py::register_exception<tr::Error>(m, "TensorRankError", PyExc_RuntimeError);
    py::register_exception<tr::ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<tr::SelectionError>(m, "SelectionError", PyExc_IndexError);
    py::register_exception<tr::FormatError>(m, "FormatError", PyExc_OSError);
    py::register_exception<tr::CapacityError>(m, "CapacityError", base.ptr());
    py::register_exception<tr::NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<tr::InvariantError>(m, "InvariantError", base.ptr());

    m.def("n_rank", [](const Array& a, const std::string& tol) {
        return tr::n_rank(to_tensor(a), tr::RankTolerance::parse(tol)).ranks;
    }, py::arg("x"), py::arg("tol") = "default", "Rank of every mode unfolding.");
    m.def("rank", [](const Array& a, const std::string& fn, const std::string& tol) {
        return rank_function(fn, tol)(to_tensor(a));
    }, py::arg("x"), py::arg("fn") = "max", py::arg("tol") = "default",
          "Evaluate max | submax | min | closure-max | closure-submax.");
    m.def("submax", &tr::submax, py::arg("values"));

    m.def("unfold", [](const Array& a, std::size_t mode) { return tr::unfold(to_tensor(a), mode); },
          py::arg("x"), py::arg("mode"), "Mode unfolding (1-based mode).");
    m.def("fold", [](const tr::Matrix& mat, std::size_t mode, const tr::Shape& shape) {
        return to_array(tr::fold(mat, mode, shape));
    }, py::arg("matrix"), py::arg("mode"), py::arg("shape"));
    m.def("mode_product", [](const Array& a, const tr::Matrix& mat, std::size_t mode) {
        return to_array(tr::mode_product(to_tensor(a), mat, mode));
    }, py::arg("x"), py::arg("matrix"), py::arg("mode"));
    m.def("identity_tensor", [](std::size_t order, std::size_t n) { return to_array(tr::identity_tensor(order, n)); },
          py::arg("order"), py::arg("n"));
    m.def("subtensor", [](const Array& a, const std::vector<std::vector<std::size_t>>& sel) {
        return to_array(tr::subtensor(to_tensor(a), tr::IndexSelection(sel)));
    }, py::arg("x"), py::arg("selection"), "Subtensor from 1-based per-mode index lists.");

    m.def("is_full_rank", [](const Array& a, const std::string& fn, const std::string& tol) {
        const auto r = tr::is_full_rank(rank_function(fn, tol), to_tensor(a));
        return py::make_tuple(r.full, r.mode ? py::object(py::int_(*r.mode)) : py::object(py::none()), r.rank);
    }, py::arg("x"), py::arg("fn") = "max", py::arg("tol") = "default");
    m.def("extract_max_tucker", [](const Array& a, const std::string& tol) {
        auto [y, cert] = tr::extract_max_tucker(to_tensor(a), tr::RankTolerance::parse(tol));
        return py::make_tuple(to_array(y), certificate(cert));
    }, py::arg("x"), py::arg("tol") = "default");
    m.def("extract_brute_force", [](const Array& a, const std::string& fn, const std::string& tol,
                                    std::size_t cap) {
        tr::EnumerationLimits limits;
        limits.max_entries = cap;
        auto [y, cert] = tr::extract_brute_force(rank_function(fn, tol), to_tensor(a), limits);
        return py::make_tuple(to_array(y), certificate(cert));
    }, py::arg("x"), py::arg("fn") = "max", py::arg("tol") = "default", py::arg("cap") = 4096);
    m.def("closure", [](const Array& a, const std::string& fn, const std::string& tol) {
        return tr::closure_eval(rank_function(fn, tol), to_tensor(a));
    }, py::arg("x"), py::arg("fn") = "max", py::arg("tol") = "default");

    m.def("axiom_report", [](const std::string& fn, const std::string& fixtures, const std::string& tol) {
        const auto set = fixtures == "capped" ? tr::axioms::capped_fixtures() : tr::axioms::default_fixtures();
        const auto t = tr::RankTolerance::parse(tol);
        return tr::axioms::to_json(tr::axioms::axiom_report(rank_function(fn, tol), set, t));
    }, py::arg("fn") = "max", py::arg("fixtures") = "default", py::arg("tol") = "default",
          "JSON report string.");

    m.def("tucker", [](const Array& a, const tr::Shape& ranks, const std::string& method, std::size_t max_iters,
                       double fit_tol) {
        tr::HooiOptions opt;
        opt.max_iters = max_iters;
        opt.fit_tol = fit_tol;
        return model_dict(tr::decompose(to_tensor(a), ranks, tr::parse_tucker_method(method), opt));
    }, py::arg("x"), py::arg("ranks"), py::arg("method") = "hosvd", py::arg("max_iters") = 100,
          py::arg("fit_tol") = 1e-8);
    m.def("sweep", [](const std::string& config_json, bool reproducible) {
        const auto config = config_json.empty() ? tr::SweepConfig{} : tr::sweep_config_from_json(config_json);
        py::gil_scoped_release release;
        return tr::to_csv(tr::run_sweep(config, tr::sweep_source(config)), !reproducible);
    }, py::arg("config_json") = "", py::arg("reproducible") = true, "CSV text.");

    m.def("read_tns", [](const std::filesystem::path& p) { return to_array(tr::io::read_tensor(p)); },
          py::arg("path"));
    m.def("write_tns", [](const std::filesystem::path& p, const Array& a, bool binary) {
        tr::io::write_tensor(p, to_tensor(a), binary ? tr::io::Encoding::binary : tr::io::Encoding::text);
    }, py::arg("path"), py::arg("x"), py::arg("binary") = false);

    m.def("prop36", [] { return to_array(tr::gen::prop36()); });
    m.def("thm34", [] { return to_array(tr::gen::thm34()); });
    m.def("planted_tucker", [](const tr::Shape& shape, const tr::Shape& core, double snr_db, std::uint64_t seed) {
        return to_array(tr::gen::planted_tucker(shape, core, snr_db, seed));
    }, py::arg("shape"), py::arg("core"), py::arg("snr_db"), py::arg("seed"));
}
