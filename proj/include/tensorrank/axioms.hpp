#pragma once

#include "tensorrank/linalg.hpp"
#include "tensorrank/rank_functions.hpp"
#include "tensorrank/tensor.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tensorrank::axioms {

enum class FixtureKind { named, zero, rank_one, identity, matrix_embedded, random, low_rank };

struct Fixture {
    std::string id;
    DenseTensor tensor;
    FixtureKind kind;
    bool integer_valued = false;
};

struct FixturePair {
    std::string id;
    DenseTensor a;
    DenseTensor b;
};

struct FixtureSet {
    std::vector<Fixture> tensors;
    std::vector<FixturePair> pairs;
};

struct FixtureOptions {
    std::uint64_t seed = 2024;
    std::size_t max_dim = 6;             ///< per-mode bound for generated tensors
    std::size_t rank_one_count = 40;
    std::size_t matrix_count = 40;
    std::size_t random_count = 60;
    std::size_t low_rank_count = 50;
    std::size_t pair_count = 120;
    bool include_block_pair = true;      ///< the r_sub subadditivity witness
};

/// The named fixtures thm34 (first) and prop36, zero tensors of five shapes, identity
/// tensors I_{m,n} for m in {2,3,4} and n in {1..4}, rank-one,
/// matrix-embedded, random and low-rank integer tensors of orders 2-4.
[[nodiscard]] FixtureSet default_fixtures(const FixtureOptions& options = {});

/// Small fixtures (dims <= max_dim) suitable for brute-force closure.
[[nodiscard]] FixtureSet capped_fixtures(std::uint64_t seed = 5, std::size_t max_dim = 3,
                                         std::size_t random_count = 24);

/// Exact rank-one test independent of any matrix rank: with a nonzero
/// pivot entry a, x is rank-one iff x_i * x_a^(m-1) = prod_l x_{a with i_l in slot l}.
[[nodiscard]] bool is_rank_one(const DenseTensor& x, double rel_tol = 1e-9);

enum class Status { pass, fail, skipped };

[[nodiscard]] std::string to_string(Status s);

struct PropertyResult {
    std::string property;
    Status status = Status::pass;
    std::size_t checks = 0;
    std::string witness_id;
    std::optional<DenseTensor> witness;
    std::optional<DenseTensor> witness_partner;
    std::string detail;
};

struct AxiomReport {
    std::string rank_function;
    std::string tolerance;
    std::vector<std::string> declared;
    std::vector<PropertyResult> rows;

    [[nodiscard]] const PropertyResult& row(const std::string& property) const;
    /// P1-P6 pass and every declared optional property passes.
    [[nodiscard]] bool declared_confirmed() const;
};

/// Runs P1-P6 plus the proper, strongly_proper and subadditive checks; the
/// first counterexample in fixture order is kept as the witness.
[[nodiscard]] AxiomReport axiom_report(const RankFunction& r, const FixtureSet& fixtures,
                                       const RankTolerance& tol = {}, std::uint64_t seed = 7);

/// JSON document; witness tensors are written into `witness_dir` (when
/// given) as <rank_function>_<property>[_partner].tns.
[[nodiscard]] std::string to_json(const AxiomReport& report,
                                  const std::optional<std::filesystem::path>& witness_dir = std::nullopt);

}  // namespace tensorrank::axioms
