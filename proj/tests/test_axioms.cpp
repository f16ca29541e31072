#include "tensorrank/axioms.hpp"
#include "tensorrank/generators.hpp"
#include "tensorrank/io.hpp"
#include "tensorrank/random.hpp"
#include "tensorrank/rank_functions.hpp"

#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>

using namespace tensorrank;
using axioms::Status;

namespace {

const axioms::FixtureSet& fixtures() {
    static const axioms::FixtureSet set = axioms::default_fixtures();
    return set;
}

}  // namespace

TEST_SUITE("axioms") {

TEST_CASE("default fixture set shape") {
    const auto& set = fixtures();
    CHECK(set.tensors.size() >= 200);
    CHECK(set.pairs.size() >= 100);
    CHECK(set.tensors.front().id == "thm34");
    for (const auto& f : set.tensors) {
        CHECK(f.tensor.order() >= 2);
        CHECK(f.tensor.order() <= 4);
        for (auto n : f.tensor.shape()) CHECK(n <= 6);
        if (f.integer_valued) CHECK(oracle::is_integer_valued(f.tensor));
    }
    for (const auto& p : set.pairs) CHECK(p.a.shape() == p.b.shape());

    const auto again = axioms::default_fixtures();
    REQUIRE(again.tensors.size() == set.tensors.size());
    for (std::size_t i = 0; i < set.tensors.size(); ++i)
        CHECK(again.tensors[i].tensor.bitwise_equal(set.tensors[i].tensor));
}

TEST_CASE("is_rank_one agrees with the n-rank oracle on integer tensors") {
    Rng rng(77);
    int ones = 0;
    for (int rep = 0; rep < 300; ++rep) {
        Shape s(static_cast<std::size_t>(rng.integer(2, 4)));
        for (auto& n : s) n = static_cast<std::size_t>(rng.integer(1, 4));
        const DenseTensor x = rep % 3 == 0 ? gen::random_rank_one(s, rng) : gen::random_integer(s, rng, -1, 1);
        const auto nr = oracle::n_rank(x);
        const bool expect = oracle::max_of(nr) == 1;
        ones += expect;
        CHECK(axioms::is_rank_one(x) == expect);
    }
    CHECK(ones > 50);
    CHECK_FALSE(axioms::is_rank_one(DenseTensor::zeros({2, 2})));
}

TEST_CASE("max_tucker report: all declared properties confirmed, strongly proper falsified by thm34") {
    const auto report = axioms::axiom_report(max_tucker(), fixtures());
    for (const char* p : {"P1", "P2", "P3", "P4", "P5", "P6", "proper", "subadditive"}) {
        CAPTURE(p);
        CHECK(report.row(p).status == Status::pass);
        CHECK(report.row(p).checks > 0);
    }
    const auto& sp = report.row("strongly_proper");
    CHECK(sp.status == Status::fail);
    CHECK(sp.witness_id == "thm34");
    REQUIRE(sp.witness.has_value());
    CHECK(sp.witness->bitwise_equal(gen::thm34()));
    CHECK(report.declared_confirmed());
    CHECK(report.row("subadditive").checks >= 100);
}

TEST_CASE("submax_tucker report: subadditivity witness is a verified block pair") {
    const auto report = axioms::axiom_report(submax_tucker(), fixtures());
    for (const char* p : {"P1", "P2", "P3", "P4", "P5", "P6", "proper", "strongly_proper"}) {
        CAPTURE(p);
        CHECK(report.row(p).status == Status::pass);
    }
    const auto& sa = report.row("subadditive");
    REQUIRE(sa.status == Status::fail);
    REQUIRE(sa.witness.has_value());
    REQUIRE(sa.witness_partner.has_value());
    const auto a = oracle::n_rank(*sa.witness), b = oracle::n_rank(*sa.witness_partner);
    const auto s = oracle::n_rank(add(*sa.witness, *sa.witness_partner));
    CHECK(oracle::submax_of(s) > oracle::submax_of(a) + oracle::submax_of(b));
    CHECK(report.declared_confirmed());
}

TEST_CASE("a rank function declaring a false property is not confirmed") {
    const RankFunction liar("liar", [](const DenseTensor& x) { return max_tucker_rank(x); },
                            {RankProperty::strongly_proper});
    axioms::FixtureSet small;
    small.tensors.push_back({"prop36", gen::prop36(), axioms::FixtureKind::named, true});
    const auto report = axioms::axiom_report(liar, small);
    CHECK(report.row("strongly_proper").status == Status::fail);
    CHECK_FALSE(report.declared_confirmed());
}

TEST_CASE("P1 catches a function that ignores the zero tensor") {
    const RankFunction bad("bad", [](const DenseTensor& x) { return std::max<std::size_t>(1, max_tucker_rank(x)); });
    axioms::FixtureSet small;
    small.tensors.push_back({"zero", DenseTensor::zeros({2, 2}), axioms::FixtureKind::zero, true});
    CHECK(axioms::axiom_report(bad, small).row("P1").status == Status::fail);
}

TEST_CASE("json serialization and witness files") {
    const auto dir = std::filesystem::temp_directory_path() / "tensorrank_axioms_tests";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto report = axioms::axiom_report(max_tucker(), fixtures());
    const auto doc = nlohmann::json::parse(axioms::to_json(report, dir));
    CHECK(doc["rank_function"] == "max_tucker");
    CHECK(doc["tolerance"] == "relative:default");
    bool found = false;
    for (const auto& row : doc["rows"]) {
        CHECK(row.contains("property"));
        CHECK(row.contains("status"));
        CHECK(row["rank_function"] == "max_tucker");
        if (row["property"] == "strongly_proper") {
            found = true;
            CHECK(row["status"] == "FAIL");
            CHECK(row["witness_id"] == "thm34");
            const std::filesystem::path file = row["witness_file"].get<std::string>();
            CHECK(io::read_tensor(file).bitwise_equal(gen::thm34()));
        } else {
            CHECK(row["status"] == "PASS");
            CHECK_FALSE(row.contains("witness_file"));
        }
    }
    CHECK(found);
}

}  // TEST_SUITE
