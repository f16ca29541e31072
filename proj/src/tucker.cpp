#include "tensorrank/tucker.hpp"

#include "tensorrank/errors.hpp"
#include "tensorrank/generators.hpp"
#include "tensorrank/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace tensorrank {

namespace {

void check_ranks(const DenseTensor& x, const Shape& ranks) {
    if (ranks.size() != x.order())
        throw ArgumentError("need " + std::to_string(x.order()) + " target ranks, got " +
                            std::to_string(ranks.size()));
    for (std::size_t j = 0; j < ranks.size(); ++j)
        if (ranks[j] < 1 || ranks[j] > x.shape()[j])
            throw ArgumentError("target rank " + std::to_string(ranks[j]) + " invalid for mode " +
                                std::to_string(j + 1) + " of dimension " + std::to_string(x.shape()[j]));
}

void finalize(TuckerModel& model, const DenseTensor& x) {
    model.relative_error = relative_error(reconstruct(model), x);
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

std::string to_string(TuckerMethod m) {
    switch (m) {
        case TuckerMethod::hosvd: return "hosvd";
        case TuckerMethod::st_hosvd: return "st_hosvd";
        case TuckerMethod::hooi: return "hooi";
    }
    return "?";
}

TuckerMethod parse_tucker_method(const std::string& s) {
    if (s == "hosvd") return TuckerMethod::hosvd;
    if (s == "st_hosvd" || s == "st-hosvd" || s == "sthosvd") return TuckerMethod::st_hosvd;
    if (s == "hooi") return TuckerMethod::hooi;
    throw ArgumentError("unknown Tucker method '" + s + "'");
}

Shape TuckerModel::shape() const {
    Shape s;
    for (const auto& f : factors) s.push_back(static_cast<std::size_t>(f.rows()));
    return s;
}

Matrix leading_left_singular_vectors(const Matrix& m, std::size_t k) {
    const auto kk = static_cast<Eigen::Index>(k);
    if (kk < 1 || kk > m.rows()) throw ArgumentError("cannot take " + std::to_string(k) + " singular vectors");
    const bool thin = kk <= std::min(m.rows(), m.cols());
    Eigen::BDCSVD<Matrix> svd(m, thin ? Eigen::ComputeThinU : Eigen::ComputeFullU);
    if (svd.info() != Eigen::Success)
        throw NumericError("SVD did not converge for " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + " unfolding");
    return svd.matrixU().leftCols(kk);
}

DenseTensor project_core(const DenseTensor& x, const std::vector<Matrix>& factors) {
    DenseTensor y = x;
    for (std::size_t j = 0; j < factors.size(); ++j) y = mode_product(y, factors[j].transpose(), j + 1);
    return y;
}

TuckerModel hosvd(const DenseTensor& x, const Shape& ranks) {
    check_ranks(x, ranks);
    std::vector<Matrix> factors;
    for (std::size_t j = 0; j < ranks.size(); ++j)
        factors.push_back(leading_left_singular_vectors(unfold(x, j + 1), ranks[j]));
    TuckerModel model{project_core(x, factors), std::move(factors), TuckerMethod::hosvd, 0, 0.0, {}};
    finalize(model, x);
    return model;
}

TuckerModel st_hosvd(const DenseTensor& x, const Shape& ranks, std::vector<std::size_t> order) {
    check_ranks(x, ranks);
    const std::size_t m = x.order();
    if (order.empty()) {
        order.resize(m);
        std::iota(order.begin(), order.end(), std::size_t{1});
    }
    ModePermutation check(order);  // validates the processing order
    if (check.order() != m) throw ArgumentError("processing order must list every mode once");

    std::vector<Matrix> factors(m);
    DenseTensor core = x;
    for (auto j : order) {
        factors[j - 1] = leading_left_singular_vectors(unfold(core, j), ranks[j - 1]);
        core = mode_product(core, factors[j - 1].transpose(), j);
    }
    TuckerModel model{std::move(core), std::move(factors), TuckerMethod::st_hosvd, 0, 0.0, {}};
    finalize(model, x);
    return model;
}

TuckerModel hooi(const DenseTensor& x, const Shape& ranks, const HooiOptions& options) {
    TuckerModel model = st_hosvd(x, ranks);
    model.method = TuckerMethod::hooi;
    model.error_history = {model.relative_error};
    const double nx = frobenius_norm(x);
    if (nx == 0.0) return model;
    double prev_fit = frobenius_norm(model.core) / nx;
    const std::size_t m = x.order();

    for (std::size_t it = 1; it <= options.max_iters; ++it) {
        for (std::size_t j = 0; j < m; ++j) {
            DenseTensor y = x;
            for (std::size_t l = 0; l < m; ++l)
                if (l != j) y = mode_product(y, model.factors[l].transpose(), l + 1);
            model.factors[j] = leading_left_singular_vectors(unfold(y, j + 1), ranks[j]);
        }
        model.core = project_core(x, model.factors);
        model.iterations = it;
        finalize(model, x);
        model.error_history.push_back(model.relative_error);
        const double fit = frobenius_norm(model.core) / nx;
        if (std::abs(fit - prev_fit) < options.fit_tol) break;
        prev_fit = fit;
    }
    return model;
}

DenseTensor reconstruct(const TuckerModel& model) {
    if (model.factors.size() != model.core.order())
        throw InvariantError("model has " + std::to_string(model.factors.size()) + " factors for an order-" +
                             std::to_string(model.core.order()) + " core");
    DenseTensor y = model.core;
    for (std::size_t j = 0; j < model.factors.size(); ++j) {
        if (static_cast<std::size_t>(model.factors[j].cols()) != model.core.shape()[j])
            throw InvariantError("factor " + std::to_string(j + 1) + " does not match the core");
        y = mode_product(y, model.factors[j], j + 1);
    }
    return y;
}

double relative_error(const DenseTensor& xhat, const DenseTensor& x) {
    if (xhat.shape() != x.shape()) throw ArgumentError("relative error needs equal shapes");
    const double nx = frobenius_norm(x);
    if (nx == 0.0) throw ArgumentError("relative error undefined for a zero reference tensor");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = xhat.values()[i] - x.values()[i];
        s += d * d;
    }
    return std::sqrt(s) / nx;
}

TuckerModel decompose(const DenseTensor& x, const Shape& ranks, TuckerMethod method,
                      const HooiOptions& options) {
    switch (method) {
        case TuckerMethod::hosvd: return hosvd(x, ranks);
        case TuckerMethod::st_hosvd: return st_hosvd(x, ranks);
        case TuckerMethod::hooi: return hooi(x, ranks, options);
    }
    throw ArgumentError("unknown Tucker method");
}

bool has_truncation_tie(const DenseTensor& x, const Shape& ranks, double rel) {
    check_ranks(x, ranks);
    for (std::size_t j = 0; j < ranks.size(); ++j) {
        Eigen::BDCSVD<Matrix> svd(unfold(x, j + 1));
        const Eigen::VectorXd s = svd.singularValues();
        const auto k = static_cast<Eigen::Index>(ranks[j]);
        if (k >= s.size() || s.size() == 0) continue;
        if (s(k - 1) - s(k) <= rel * s(0)) return true;
    }
    return false;
}

void write_model(const std::filesystem::path& dir, const TuckerModel& model, const std::string& tolerance) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw FormatError("cannot create " + dir.string() + ": " + ec.message());
    io::write_tensor(dir / "core.tns", model.core);
    for (std::size_t j = 0; j < model.factors.size(); ++j)
        io::write_tensor(dir / ("factor_" + std::to_string(j + 1) + ".tns"), from_matrix(model.factors[j]));
    nlohmann::json meta{{"method", to_string(model.method)},
                        {"shape", model.shape()},
                        {"ranks", model.ranks()},
                        {"iterations", model.iterations},
                        {"relative_error", model.relative_error},
                        {"error_history", model.error_history},
                        {"tolerance", tolerance}};
    std::ofstream out(dir / "meta.json");
    out << meta.dump(2) << "\n";
    if (!out) throw FormatError("cannot write " + (dir / "meta.json").string());
}

TuckerModel read_model(const std::filesystem::path& dir) {
    std::ifstream in(dir / "meta.json");
    if (!in) throw FormatError("cannot open " + (dir / "meta.json").string());
    nlohmann::json meta;
    try {
        in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad meta.json: ") + e.what());
    }
    DenseTensor core = io::read_tensor(dir / "core.tns");
    std::vector<Matrix> factors;
    for (std::size_t j = 1; j <= core.order(); ++j)
        factors.push_back(to_matrix(io::read_tensor(dir / ("factor_" + std::to_string(j) + ".tns"))));
    TuckerModel model{std::move(core), std::move(factors), parse_tucker_method(meta.at("method")),
                      meta.at("iterations").get<std::size_t>(), meta.at("relative_error").get<double>(),
                      meta.value("error_history", std::vector<double>{})};
    return model;
}

// ---------------------------------------------------------------------------
// Sweep

void validate(const SweepConfig& config, const Shape& source_shape) {
    if (source_shape.size() < 2) throw ArgumentError("sweep needs a tensor of order >= 2");
    if (config.r_values.empty() || config.mode1_caps.empty())
        throw ArgumentError("sweep needs at least one r value and one mode-1 cap");
    std::size_t rest = std::numeric_limits<std::size_t>::max();
    for (std::size_t l = 1; l < source_shape.size(); ++l) rest = std::min(rest, source_shape[l]);
    for (auto r : config.r_values) {
        if (r < 1 || r > rest || r > source_shape[0])
            throw ArgumentError("r = " + std::to_string(r) + " exceeds the non-leading dimensions");
    }
    for (const auto& cap : config.mode1_caps)
        if (cap && (*cap < 1 || *cap > source_shape[0]))
            throw ArgumentError("mode-1 cap " + std::to_string(*cap) + " exceeds n_1 = " +
                                std::to_string(source_shape[0]));
}

SweepConfig sweep_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad sweep config: ") + e.what());
    }
    SweepConfig c;
    try {
        if (j.contains("shape")) c.shape = j["shape"].get<Shape>();
        if (j.contains("planted_core")) c.planted_core = j["planted_core"].get<Shape>();
        if (j.contains("snr_db")) c.snr_db = j["snr_db"].is_null() ? std::numeric_limits<double>::infinity()
                                                                   : j["snr_db"].get<double>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("r_values")) c.r_values = j["r_values"].get<std::vector<std::size_t>>();
        if (j.contains("mode1_caps")) {
            c.mode1_caps.clear();
            for (const auto& cap : j["mode1_caps"]) {
                if (cap.is_string() && cap.get<std::string>() == "r")
                    c.mode1_caps.emplace_back(std::nullopt);
                else
                    c.mode1_caps.emplace_back(cap.get<std::size_t>());
            }
        }
        if (j.contains("method")) c.method = parse_tucker_method(j["method"].get<std::string>());
        if (j.contains("threads")) c.threads = j["threads"].get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad sweep config field: ") + e.what());
    }
    return c;
}

std::string to_json(const SweepConfig& c) {
    nlohmann::json caps = nlohmann::json::array();
    for (const auto& cap : c.mode1_caps) caps.push_back(cap ? nlohmann::json(*cap) : nlohmann::json("r"));
    nlohmann::json j{{"shape", c.shape},   {"planted_core", c.planted_core},
                     {"seed", c.seed},     {"r_values", c.r_values},
                     {"mode1_caps", caps}, {"method", to_string(c.method)},
                     {"threads", c.threads}};
    j["snr_db"] = std::isinf(c.snr_db) ? nlohmann::json(nullptr) : nlohmann::json(c.snr_db);
    return j.dump(2);
}

DenseTensor sweep_source(const SweepConfig& config) {
    return gen::planted_tucker(config.shape, config.planted_core, config.snr_db, config.seed);
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, const DenseTensor& source) {
    validate(config, source.shape());
    std::vector<SweepRow> rows;
    for (auto r : config.r_values)
        for (const auto& cap : config.mode1_caps) rows.push_back({r, cap, config.method, 0.0, 0.0});
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.r != b.r) return a.r < b.r;
        if (a.mode1_cap.has_value() != b.mode1_cap.has_value()) return !a.mode1_cap.has_value();
        return a.mode1_cap.value_or(0) < b.mode1_cap.value_or(0);
    });

    auto run_one = [&](SweepRow& row) {
        Shape ranks(source.order(), row.r);
        ranks[0] = row.effective_cap();
        const auto t0 = std::chrono::steady_clock::now();
        row.relative_error = decompose(source, ranks, row.method).relative_error;
        row.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };

    const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, rows.size());
    if (workers == 1) {
        for (auto& row : rows) run_one(row);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < rows.size(); i = next++) run_one(rows[i]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows, bool include_timing) {
    std::ostringstream os;
    os << "r,mode1_cap,method,relative_error,elapsed_ms\n";
    for (const auto& row : rows) {
        os << row.r << ',' << (row.mode1_cap ? std::to_string(*row.mode1_cap) : std::string("r")) << ','
           << to_string(row.method) << ',' << format_double(row.relative_error) << ','
           << (include_timing ? format_double(std::round(row.elapsed_ms * 1000.0) / 1000.0) : std::string("0"))
           << '\n';
    }
    return os.str();
}

}  // namespace tensorrank
