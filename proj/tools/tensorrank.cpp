// tensorrank: command-line front end for the tensor rank library.
//
// Exit codes:
//   0  success
//   1  axioms: a declared property (or P1-P6) was falsified
//   2  usage error (bad flags or parameters)
//   3  I/O or parse error
//   4  capacity error (brute-force enumeration cap exceeded)
//   5  numeric error (decomposition failed to converge)

#include "tensorrank/axioms.hpp"
#include "tensorrank/errors.hpp"
#include "tensorrank/fullrank.hpp"
#include "tensorrank/generators.hpp"
#include "tensorrank/io.hpp"
#include "tensorrank/rank_functions.hpp"
#include "tensorrank/tucker.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace tr = tensorrank;

namespace {

// "-" reads the tensor from standard input.
tr::DenseTensor load_input(const std::string& path) {
    if (path != "-") return tr::io::read_tensor(path);
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    const std::string data = buf.str();
    if (data.rfind("TNS1", 0) == 0) return tr::io::from_binary(data);
    return tr::io::from_text(data);
}

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitNumeric = 5;

const char* kExitCodeHelp =
    "Exit codes: 0 success, 1 axioms check falsified a declared property, 2 usage error, "
    "3 I/O or parse error, 4 capacity error, 5 numeric error.";

tr::RankFunction make_rank_function(const std::string& fn, const tr::RankTolerance& tol,
                                    const tr::EnumerationLimits& limits) {
    if (fn == "max") return tr::max_tucker(tol);
    if (fn == "submax") return tr::submax_tucker(tol);
    if (fn == "min") return tr::min_rank(tr::max_tucker(tol), tr::submax_tucker(tol));
    if (fn == "closure-max") return tr::closure_rank_function(tr::max_tucker(tol), limits);
    if (fn == "closure-submax") return tr::closure_rank_function(tr::submax_tucker(tol), limits);
    throw tr::ArgumentError("unknown rank function '" + fn + "'");
}

std::string join(const std::vector<std::size_t>& v, char sep = ',') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tr::FormatError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw tr::FormatError("write failed for " + path);
}

struct GenArgs {
    std::string kind;
    std::string out;
    std::vector<std::size_t> shape;
    std::vector<std::size_t> core;
    std::size_t m = 3;
    std::size_t n = 3;
    double snr = 20.0;
    std::uint64_t seed = 1;
    bool binary = false;
    bool integer = false;
    std::string part = "sum";
};

tr::DenseTensor generate(const GenArgs& a) {
    tr::Rng rng(a.seed);
    auto need_shape = [&] {
        if (a.shape.empty()) throw tr::ArgumentError("--shape is required for kind " + a.kind);
        return tr::Shape(a.shape.begin(), a.shape.end());
    };
    if (a.kind == "zero") return tr::DenseTensor::zeros(need_shape());
    if (a.kind == "rank1") return tr::gen::random_rank_one(need_shape(), rng);
    if (a.kind == "identity") return tr::identity_tensor(a.m, a.n);
    if (a.kind == "prop36") return tr::gen::prop36();
    if (a.kind == "thm34") return tr::gen::thm34();
    if (a.kind == "block-thm35") {
        auto bp = tr::gen::block_thm35(a.seed);
        if (a.part == "y") return bp.y;
        if (a.part == "z") return bp.z;
        if (a.part == "sum") return bp.sum;
        throw tr::ArgumentError("--part must be sum, y or z");
    }
    if (a.kind == "planted-tucker") {
        if (a.core.empty()) throw tr::ArgumentError("--core is required for planted-tucker");
        return tr::gen::planted_tucker(need_shape(), tr::Shape(a.core.begin(), a.core.end()), a.snr, a.seed);
    }
    if (a.kind == "random")
        return a.integer ? tr::gen::random_integer(need_shape(), rng) : tr::gen::random_normal(need_shape(), rng);
    throw tr::ArgumentError("unknown generator kind '" + a.kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor rank functions, full-rank subtensors and Tucker approximation"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1, 1);

    std::string tol_text = "default";
    auto add_tol = [&](CLI::App* sub) {
        sub->add_option("--tol", tol_text,
                        "Rank tolerance: default | relative:<v> | absolute:<v> (default relative max(m,n)*eps)");
    };

    // gen
    GenArgs g;
    auto* gen = app.add_subcommand("gen", "Write a fixture tensor (.tns)");
    gen->add_option("--kind", g.kind, "zero|rank1|identity|prop36|thm34|block-thm35|planted-tucker|random")
        ->required();
    gen->add_option("--out", g.out, "Output path (stdout when omitted, text only)");
    gen->add_option("--shape", g.shape, "Tensor shape");
    gen->add_option("--core", g.core, "Planted Tucker core shape");
    gen->add_option("--m", g.m, "Identity tensor order");
    gen->add_option("--n", g.n, "Identity tensor dimension");
    gen->add_option("--snr", g.snr, "Planted Tucker noise level in dB (inf = noiseless)");
    gen->add_option("--seed", g.seed, "Random seed");
    gen->add_option("--part", g.part, "block-thm35 part: sum|y|z");
    gen->add_flag("--binary", g.binary, "Write the binary TNS1 variant");
    gen->add_flag("--integer", g.integer, "random: integer entries in [-4, 4]");

    // rank / nrank
    std::string file;
    std::string fn = "max";
    auto* rank = app.add_subcommand("rank", "Print max_tucker=<r> or submax_tucker=<r>");
    rank->add_option("file", file, "Tensor file")->required();
    rank->add_option("--fn", fn, "max|submax|min")->check(CLI::IsMember({"max", "submax", "min"}));
    add_tol(rank);
    auto* nrank = app.add_subcommand("nrank", "Print nrank=r1,...,rm");
    nrank->add_option("file", file, "Tensor file")->required();
    add_tol(nrank);

    // fullrank / closure
    bool brute = false;
    tr::EnumerationLimits limits;
    std::string subtensor_out;
    auto* fullrank = app.add_subcommand("fullrank", "Extract a maximum full-rank subtensor; prints certificate JSON");
    fullrank->add_option("file", file, "Tensor file")->required();
    fullrank->add_option("--fn", fn, "max|submax|min|closure-max|closure-submax");
    fullrank->add_flag("--brute", brute, "Use exhaustive enumeration instead of the constructive path");
    fullrank->add_option("--cap", limits.max_entries, "Enumeration cap on total entries");
    fullrank->add_option("--max-dim", limits.max_dim, "Enumeration cap on any dimension");
    fullrank->add_option("--subtensor-out", subtensor_out, "Write the extracted subtensor here");
    add_tol(fullrank);
    auto* closure = app.add_subcommand("closure", "Print closure_<fn>=<value> (brute force)");
    closure->add_option("file", file, "Tensor file")->required();
    closure->add_option("--fn", fn, "max|submax|min");
    closure->add_option("--cap", limits.max_entries, "Enumeration cap on total entries");
    closure->add_option("--max-dim", limits.max_dim, "Enumeration cap on any dimension");
    add_tol(closure);

    // axioms
    std::string fixtures = "default";
    std::string out;
    std::string witness_dir;
    std::uint64_t seed = 7;
    auto* axioms = app.add_subcommand("axioms", "Check the rank-function axioms; JSON report");
    axioms->add_option("--fn", fn, "max|submax|min|closure-max|closure-submax");
    axioms->add_option("--fixtures", fixtures, "default|capped")->check(CLI::IsMember({"default", "capped"}));
    axioms->add_option("--out", out, "Report path (stdout when omitted)");
    axioms->add_option("--witness-dir", witness_dir, "Directory for witness tensors (default: next to --out)");
    axioms->add_option("--seed", seed, "Seed for permutations and subtensor draws");
    add_tol(axioms);

    // tucker
    std::vector<std::size_t> ranks;
    std::string method = "hosvd";
    std::string outdir;
    tr::HooiOptions hooi_opts;
    auto* tucker = app.add_subcommand("tucker", "Rank-constrained Tucker approximation");
    tucker->add_option("file", file, "Tensor file")->required();
    tucker->add_option("--ranks", ranks, "Target rank per mode")->required();
    tucker->add_option("--method", method, "hosvd|st_hosvd|hooi")
        ->check(CLI::IsMember({"hosvd", "st_hosvd", "hooi"}));
    tucker->add_option("--outdir", outdir, "Write core.tns, factor_j.tns and meta.json here");
    tucker->add_option("--max-iters", hooi_opts.max_iters, "HOOI sweep limit");
    tucker->add_option("--fit-tol", hooi_opts.fit_tol, "HOOI fit-change tolerance");

    // sweep
    std::string config_path;
    std::string input;
    std::size_t threads = 0;
    bool reproducible = false;
    auto* sweep = app.add_subcommand("sweep", "Relative-error sweep of (n̄,r,..,r) against (r,..,r) cores; CSV");
    sweep->add_option("--config", config_path, "JSON sweep config (defaults: 100x11x11, r=1..11, caps r,10,20,40)");
    sweep->add_option("--input", input, "Use this tensor instead of the generated source");
    sweep->add_option("--out", out, "CSV path (stdout when omitted)");
    sweep->add_option("--threads", threads, "Worker threads (overrides config)");
    sweep->add_flag("--reproducible", reproducible, "Write elapsed_ms as 0 so output is byte-stable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const tr::RankTolerance tol = tr::RankTolerance::parse(tol_text);

        if (*gen) {
            const tr::DenseTensor x = generate(g);
            if (g.out.empty()) {
                if (g.binary) throw tr::ArgumentError("--binary needs --out");
                std::cout << tr::io::to_text(x);
            } else {
                tr::io::write_tensor(g.out, x, g.binary ? tr::io::Encoding::binary : tr::io::Encoding::text);
            }
            return 0;
        }
        if (*rank) {
            const auto x = load_input(file);
            const auto r = make_rank_function(fn, tol, limits);
            std::cout << r.name() << "=" << r(x) << "\n";
            return 0;
        }
        if (*nrank) {
            const auto x = load_input(file);
            std::cout << "nrank=" << join(tr::n_rank(x, tol).ranks) << "\n";
            return 0;
        }
        if (*fullrank) {
            const auto x = load_input(file);
            std::optional<std::pair<tr::DenseTensor, tr::FullRankCertificate>> result;
            if (brute) {
                result = tr::extract_brute_force(make_rank_function(fn, tol, limits), x, limits);
            } else {
                if (fn != "max") throw tr::ArgumentError("the constructive path supports --fn max only; add --brute");
                result = tr::extract_max_tucker(x, tol);
            }
            if (!subtensor_out.empty()) tr::io::write_tensor(subtensor_out, result->first);
            auto j = nlohmann::json::parse(tr::to_json(result->second));
            j["tolerance"] = tol.describe();
            j["method"] = brute ? "brute_force" : "constructive";
            std::cout << j.dump() << "\n";
            return 0;
        }
        if (*closure) {
            const auto x = load_input(file);
            const auto r = make_rank_function(fn, tol, limits);
            std::cout << "closure_" << r.name() << "=" << tr::closure_eval(r, x, limits) << "\n";
            return 0;
        }
        if (*axioms) {
            const auto r = make_rank_function(fn, tol, limits);
            const auto set = fixtures == "capped" ? tr::axioms::capped_fixtures() : tr::axioms::default_fixtures();
            const auto report = tr::axioms::axiom_report(r, set, tol, seed);
            std::optional<std::filesystem::path> wdir;
            if (!witness_dir.empty())
                wdir = witness_dir;
            else if (!out.empty())
                wdir = std::filesystem::absolute(out).parent_path();
            if (wdir) std::filesystem::create_directories(*wdir);
            const std::string json = tr::axioms::to_json(report, wdir);
            if (out.empty())
                std::cout << json << "\n";
            else
                write_text_file(out, json + "\n");
            for (const auto& row : report.rows)
                std::cerr << row.property << ": " << tr::axioms::to_string(row.status)
                          << (row.witness_id.empty() ? "" : " (witness " + row.witness_id + ")") << "\n";
            return report.declared_confirmed() ? 0 : kExitFailedCheck;
        }
        if (*tucker) {
            const auto x = load_input(file);
            const auto model = tr::decompose(x, tr::Shape(ranks.begin(), ranks.end()),
                                             tr::parse_tucker_method(method), hooi_opts);
            if (!outdir.empty()) tr::write_model(outdir, model, tol.describe());
            std::cout << "relative_error=" << model.relative_error << "\n";
            return 0;
        }
        if (*sweep) {
            tr::SweepConfig config;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw tr::FormatError("cannot open " + config_path);
                std::stringstream buf;
                buf << in.rdbuf();
                config = tr::sweep_config_from_json(buf.str());
            }
            if (threads) config.threads = threads;
            const auto source = input.empty() ? tr::sweep_source(config) : load_input(input);
            const auto csv = tr::to_csv(tr::run_sweep(config, source), !reproducible);
            if (out.empty())
                std::cout << csv;
            else
                write_text_file(out, csv);
            return 0;
        }
    } catch (const tr::CapacityError& e) {
        std::cerr << "capacity error: " << e.what()
                  << "\nhint: raise --cap/--max-dim or use the constructive path (omit --brute)\n";
        return kExitCapacity;
    } catch (const tr::FormatError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const tr::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const tr::ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
