// End-to-end acceptance run. Prints one PASS/FAIL line per criterion with the
// measured runtime, and exits nonzero if any criterion fails.

#include "tensorrank/axioms.hpp"
#include "tensorrank/fullrank.hpp"
#include "tensorrank/generators.hpp"
#include "tensorrank/io.hpp"
#include "tensorrank/linalg.hpp"
#include "tensorrank/random.hpp"
#include "tensorrank/rank_functions.hpp"
#include "tensorrank/tucker.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace tensorrank;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Criterion 1: n-rank, max and submax of the 2x3x4 fixture, each query well under a millisecond.
Outcome criterion_1() {
    Outcome out;
    const DenseTensor x = gen::prop36();
    out.require(n_rank(x).ranks == std::vector<std::size_t>{2, 3, 4}, "n-rank differs from (2,3,4)");
    out.require(max_tucker_rank(x) == 4, "max-Tucker rank differs from 4");
    out.require(submax_tucker_rank(x) == 3, "submax-Tucker rank differs from 3");
    out.require(oracle::n_rank(x) == std::vector<std::size_t>{2, 3, 4}, "exact oracle disagrees");

    constexpr int reps = 200;
    std::size_t sink = 0;
    const auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) {
        sink += n_rank(x).ranks[0];
        sink += max_tucker_rank(x);
        sink += submax_tucker_rank(x);
    }
    const double per_call_ms = 1e3 * seconds_since(t0) / reps;
    out.require(sink == reps * (2 + 4 + 3), "unstable results across repetitions");
    out.require(per_call_ms < 1.0, "one round of queries took " + std::to_string(per_call_ms) + " ms");
    std::ostringstream os;
    os << "per-round " << per_call_ms << " ms";
    if (out.ok) out.note = os.str();
    return out;
}

// Criterion 2: the 3x2x2 tensor with X_(1) = [I_3 | e].
Outcome criterion_2() {
    Outcome out;
    const DenseTensor x = gen::thm34();
    Matrix expect = Matrix::Zero(3, 4);
    expect.leftCols(3) = Matrix::Identity(3, 3);
    expect.col(3) = Eigen::Vector3d::Ones();
    out.require(x.shape() == Shape{3, 2, 2}, "shape differs from 3x2x2");
    out.require(oracle::reference_unfold(x, 1) == expect, "mode-1 unfolding is not [I_3 | e]");
    out.require(max_tucker_rank(x) == 3, "r_max differs from 3");
    out.require(submax(x.shape()) == 2, "submax of the shape differs from 2");
    out.require(max_tucker_rank(x) > submax(x.shape()), "no strongly-proper violation");

    const auto report = axioms::axiom_report(max_tucker(), axioms::default_fixtures());
    const auto& row = report.row("strongly_proper");
    out.require(row.status == axioms::Status::fail, "strongly_proper not reported FAIL");
    out.require(row.witness_id == "thm34", "witness id is '" + row.witness_id + "'");
    out.require(row.witness && row.witness->bitwise_equal(x), "witness tensor differs");
    return out;
}

// Criterion 3: the axiom suite over the default fixture set.
Outcome criterion_3() {
    Outcome out;
    const auto t0 = Clock::now();
    const auto fixtures = axioms::default_fixtures();
    out.require(fixtures.tensors.size() >= 200, "fewer than 200 fixtures");
    out.require(fixtures.pairs.size() >= 100, "fewer than 100 pairs");
    for (const auto& f : fixtures.tensors) {
        out.require(f.tensor.order() >= 2 && f.tensor.order() <= 4, f.id + " has order outside 2..4");
        for (auto n : f.tensor.shape()) out.require(n <= 6, f.id + " has a dimension above 6");
    }

    const auto rmax = axioms::axiom_report(max_tucker(), fixtures);
    const auto rsub = axioms::axiom_report(submax_tucker(), fixtures);
    for (const char* p : {"P1", "P2", "P3", "P4", "P5", "P6"}) {
        out.require(rmax.row(p).status == axioms::Status::pass, std::string("r_max fails ") + p);
        out.require(rsub.row(p).status == axioms::Status::pass, std::string("r_sub fails ") + p);
    }
    out.require(rmax.row("proper").status == axioms::Status::pass, "r_max fails proper");
    out.require(rmax.row("subadditive").status == axioms::Status::pass, "r_max fails subadditive");
    out.require(rmax.row("subadditive").checks >= 100, "fewer than 100 subadditivity pairs checked");
    out.require(rsub.row("strongly_proper").status == axioms::Status::pass, "r_sub fails strongly_proper");

    const auto& sa = rsub.row("subadditive");
    out.require(sa.status == axioms::Status::fail, "no subadditivity counterexample for r_sub");
    if (sa.witness && sa.witness_partner) {
        const auto a = oracle::n_rank(*sa.witness), b = oracle::n_rank(*sa.witness_partner);
        const auto s = oracle::n_rank(add(*sa.witness, *sa.witness_partner));
        out.require(oracle::submax_of(s) > oracle::submax_of(a) + oracle::submax_of(b),
                    "counterexample does not verify under exact arithmetic");
        out.require(a == std::vector<std::size_t>{4, 3, 2} && b == std::vector<std::size_t>{3, 4, 2},
                    "block profiles differ from (4,3,2) and (3,4,2)");
    } else {
        out.require(false, "counterexample tensors missing");
    }
    const double secs = seconds_since(t0);
    out.require(secs < 30.0, "runtime " + std::to_string(secs) + " s");
    return out;
}

// Criterion 4: constructive extraction versus exhaustive search under r_max.
Outcome criterion_4() {
    Outcome out;
    const auto t0 = Clock::now();
    Rng rng(4004);
    const RankFunction rmax = max_tucker();
    std::size_t count = 0, nontrivial = 0, largest = 0;
    while (count < 60) {
        Shape s(static_cast<std::size_t>(rng.integer(2, 4)));
        for (auto& n : s) n = static_cast<std::size_t>(rng.integer(1, 8));
        if (product(s) > 4096) continue;
        Shape core(s.size());
        for (std::size_t l = 0; l < s.size(); ++l)
            core[l] = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(s[l])));
        DenseTensor x = count % 4 == 3 ? gen::random_normal(s, rng) : gen::random_tucker_integer(s, core, rng);
        ++count;
        largest = std::max(largest, x.size());

        auto [y, cert] = extract_max_tucker(x);
        auto [yb, cb] = extract_brute_force(rmax, x);
        const std::string tag = "tensor #" + std::to_string(count);
        out.require(cert.rank == cb.rank, tag + ": constructive rank differs from exhaustive rank");
        out.require(max_tucker_rank(y) == cert.rank, tag + ": extracted subtensor rank drifted");
        if (oracle::is_integer_valued(x))
            out.require(oracle::max_of(oracle::n_rank(x)) == cert.rank, tag + ": exact rank disagrees");
        if (y.shape() != x.shape()) ++nontrivial;
        if (x.is_zero()) continue;
        out.require(cert.mode.has_value(), tag + ": nonzero tensor without a mode");
        if (!cert.mode) continue;
        const Matrix u = unfold(x, *cert.mode);
        const RowBasis basis{cert.indices};
        out.require(matrix_rank(select_rows(u, basis)) == basis.rank(), tag + ": selected rows dependent");
        for (Eigen::Index q = 0; q < u.rows(); ++q)
            out.require(in_row_span(u, basis, u.row(q).transpose()), tag + ": a row lies outside the span");
    }
    const double secs = seconds_since(t0);
    out.require(nontrivial >= 10, "too few tensors needed a proper subtensor");
    out.require(secs < 300.0, "runtime " + std::to_string(secs) + " s");
    if (out.ok) out.note = std::to_string(count) + " tensors, " + std::to_string(nontrivial) +
                          " proper extractions, largest " + std::to_string(largest) + " entries";
    return out;
}

// Criterion 5: closure identities on the capped fixture set.
Outcome criterion_5() {
    Outcome out;
    const auto t0 = Clock::now();
    const auto fixtures = axioms::capped_fixtures();
    const RankFunction rmax = max_tucker(), rsub = submax_tucker();
    const RankFunction cmax = closure_rank_function(rmax), csub = closure_rank_function(rsub);
    const RankFunction ccsub = closure_rank_function(csub);
    std::size_t below = 0, not_full = 0;
    for (const auto& f : fixtures.tensors) {
        const auto& x = f.tensor;
        out.require(cmax(x) == rmax(x), f.id + ": closure(r_max) != r_max");
        const std::size_t c = csub(x);
        out.require(c <= rsub(x), f.id + ": closure(r_sub) > r_sub");
        below += c < rsub(x);
        not_full += !is_full_rank(rsub, x).full;
        out.require(ccsub(x) == c, f.id + ": closure(closure(r_sub)) != closure(r_sub)");
        if (f.kind == axioms::FixtureKind::rank_one) {
            out.require(cmax(x) == 1 && c == 1, f.id + ": rank-one closure differs from 1");
        }
    }
    out.require(cmax(identity_tensor(3, 3)) == 3, "closure(r_max)(I_{3,3}) != 3");
    out.require(csub(identity_tensor(3, 3)) == 3, "closure(r_sub)(I_{3,3}) != 3");
    const double secs = seconds_since(t0);
    out.require(secs < 300.0, "runtime " + std::to_string(secs) + " s");
    if (out.ok) out.note = std::to_string(fixtures.tensors.size()) + " fixtures, " + std::to_string(not_full) +
                          " not full under r_sub, closure(r_sub) < r_sub on " + std::to_string(below);
    return out;
}

// Criterion 6: Tucker numerics.
Outcome criterion_6() {
    Outcome out;
    Rng rng(606);
    for (int rep = 0; rep < 10; ++rep) {
        const DenseTensor x = gen::random_normal({5, 4, 6}, rng);
        const TuckerModel m = hosvd(x, x.shape());
        out.require(relative_error(reconstruct(m), x) < 1e-12, "full-rank HOSVD error >= 1e-12");
    }

    const DenseTensor planted = gen::planted_tucker({15, 10, 9}, {4, 3, 2}, INFINITY, 66);
    for (auto method : {TuckerMethod::hosvd, TuckerMethod::st_hosvd, TuckerMethod::hooi}) {
        const TuckerModel m = decompose(planted, {4, 3, 2}, method);
        out.require(relative_error(reconstruct(m), planted) < 1e-10,
                    "planted recovery error >= 1e-10 for " + to_string(method));
    }

    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const DenseTensor x = gen::planted_tucker({12, 10, 8}, {4, 4, 3}, 5.0, seed);
        const TuckerModel m = hooi(x, {2, 3, 2});
        for (std::size_t k = 1; k < m.error_history.size(); ++k)
            out.require(m.error_history[k] <= m.error_history[k - 1], "HOOI error increased");
    }

    for (int rep = 0; rep < 10; ++rep) {
        const DenseTensor x = gen::random_normal({7, 6, 5}, rng);
        const TuckerModel m = hosvd(x, {3, 2, 4});
        const DenseTensor xhat = reconstruct(m);
        const double nx = frobenius_norm(x), nc = frobenius_norm(m.core);
        const double ne = frobenius_norm(add(x, scale(xhat, -1.0)));
        out.require(std::abs(nx * nx - (nc * nc + ne * ne)) <= 1e-10 * nx * nx, "energy identity violated");
    }
    return out;
}

// Criterion 7: the default synthetic sweep.
Outcome criterion_7() {
    Outcome out;
    const auto t0 = Clock::now();
    const SweepConfig config;
    const DenseTensor src = sweep_source(config);
    const auto rows = run_sweep(config, src);
    const double secs = seconds_since(t0);
    out.require(rows.size() == 44, "expected 44 rows");

    std::map<std::size_t, double> base;
    for (const auto& row : rows)
        if (!row.mode1_cap) base[row.r] = row.relative_error;
    std::map<std::size_t, int> strict;
    for (const auto& row : rows) {
        if (!row.mode1_cap) continue;
        const double b = base.at(row.r);
        out.require(row.relative_error <= b, "cap " + std::to_string(*row.mode1_cap) + " at r = " +
                                                 std::to_string(row.r) + " exceeds the (r,r,r) error");
        if (row.relative_error < b) ++strict[*row.mode1_cap];
    }
    for (std::size_t cap : {10u, 20u, 40u})
        out.require(strict[cap] >= 6, "cap " + std::to_string(cap) + " strictly better at only " +
                                          std::to_string(strict[cap]) + " r values");

    const std::string first = to_csv(rows, false);
    const std::string second = to_csv(run_sweep(config, sweep_source(config)), false);
    out.require(first == second, "two runs produced different CSV bytes");
    out.require(secs < 60.0, "runtime " + std::to_string(secs) + " s");
    if (out.ok) {
        std::ostringstream os;
        os << "strict improvements: 10->" << strict[10] << ", 20->" << strict[20] << ", 40->" << strict[40];
        out.note = os.str();
    }
    return out;
}

// Criterion 8: bit-exact file round trips in both encodings.
Outcome criterion_8() {
    Outcome out;
    const auto dir = std::filesystem::temp_directory_path() / "tensorrank_acceptance_io";
    std::filesystem::create_directories(dir);
    Rng rng(808);
    for (int i = 0; i < 100; ++i) {
        Shape s(static_cast<std::size_t>(rng.integer(1, 5)));
        for (auto& n : s) n = static_cast<std::size_t>(rng.integer(1, 6));
        std::vector<double> v(product(s));
        for (auto& e : v) {
            switch (rng.integer(0, 3)) {
                case 0: e = rng.normal(); break;
                case 1: e = std::ldexp(rng.normal(), static_cast<int>(rng.integer(-1070, 1020))); break;
                case 2: e = static_cast<double>(rng.integer(-9, 9)); break;
                default: e = rng.uniform() < 0.5 ? -0.0 : 0.0; break;
            }
        }
        const DenseTensor x(s, v);
        for (auto enc : {io::Encoding::text, io::Encoding::binary}) {
            const auto path = dir / ("t" + std::to_string(i) + (enc == io::Encoding::text ? ".txt.tns" : ".bin.tns"));
            io::write_tensor(path, x, enc);
            out.require(io::read_tensor(path).bitwise_equal(x), "tensor " + std::to_string(i) + " changed");
        }
    }
    std::filesystem::remove_all(dir);
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 n-rank of the 2x3x4 fixture", criterion_1},
        {"2 strongly-proper counterexample", criterion_2},
        {"3 axiom suite", criterion_3},
        {"4 extraction oracle equivalence", criterion_4},
        {"5 closure properties", criterion_5},
        {"6 Tucker numerics", criterion_6},
        {"7 synthetic sweep", criterion_7},
        {"8 .tns round trips", criterion_8},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.note = std::string("exception: ") + e.what();
        }
        const double secs = seconds_since(t0);
        std::printf("%s criterion %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(), secs,
                    o.note.empty() ? "" : ": ", o.note.c_str());
        std::fflush(stdout);
        failures += !o.ok;
    }
    return failures == 0 ? 0 : 1;
}
