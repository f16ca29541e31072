#include "tensorrank/axioms.hpp"

#include "tensorrank/errors.hpp"
#include "tensorrank/generators.hpp"
#include "tensorrank/io.hpp"
#include "tensorrank/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace tensorrank::axioms {

namespace {

Shape random_shape(Rng& rng, std::size_t order, std::size_t max_dim) {
    Shape s(order);
    for (auto& n : s) n = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_dim)));
    return s;
}

// Orders 2..4; order-4 dims capped one lower to bound fixture cost.
Shape random_shape(Rng& rng, std::size_t max_dim) {
    const auto order = static_cast<std::size_t>(rng.integer(2, 4));
    return random_shape(rng, order, order == 4 ? std::max<std::size_t>(2, max_dim - 1) : max_dim);
}

ModePermutation random_permutation(Rng& rng, std::size_t order) {
    std::vector<std::size_t> p(order);
    std::iota(p.begin(), p.end(), std::size_t{1});
    for (std::size_t i = order; i > 1; --i)
        std::swap(p[i - 1], p[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(i - 1)))]);
    return ModePermutation(std::move(p));
}

IndexSelection random_selection(Rng& rng, const Shape& shape) {
    std::vector<std::vector<std::size_t>> sets(shape.size());
    for (std::size_t l = 0; l < shape.size(); ++l) {
        while (sets[l].empty())
            for (std::size_t i = 1; i <= shape[l]; ++i)
                if (rng.integer(0, 1)) sets[l].push_back(i);
    }
    return IndexSelection(std::move(sets));
}

bool is_cubic(const Shape& s) {
    return s.size() >= 2 && std::all_of(s.begin(), s.end(), [&](std::size_t n) { return n == s[0]; });
}

bool is_matrix_embedded(const Shape& s) {
    return s.size() >= 2 && std::all_of(s.begin() + 2, s.end(), [](std::size_t n) { return n == 1; });
}

std::uint64_t mix(std::uint64_t seed, std::size_t i) {
    return seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL * (i + 1);
}

// Records the first failure encountered for one property.
struct Tracker {
    PropertyResult row;

    explicit Tracker(std::string name) { row.property = std::move(name); }

    void check(bool ok, const std::string& id, const DenseTensor& witness, std::string detail,
               const DenseTensor* partner = nullptr) {
        ++row.checks;
        if (ok || row.status == Status::fail) return;
        row.status = Status::fail;
        row.witness_id = id;
        row.witness = witness;
        if (partner) row.witness_partner = *partner;
        row.detail = std::move(detail);
    }

    PropertyResult finish() {
        if (row.checks == 0) row.status = Status::skipped;
        return std::move(row);
    }
};

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

}  // namespace

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "PASS";
        case Status::fail: return "FAIL";
        case Status::skipped: return "SKIP";
    }
    return "?";
}

bool is_rank_one(const DenseTensor& x, double rel_tol) {
    const auto v = x.values();
    const auto pivot_it = std::max_element(v.begin(), v.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
    });
    const double pivot = *pivot_it;
    if (pivot == 0.0) return false;
    const Shape& shape = x.shape();
    const std::size_t m = shape.size();
    std::vector<std::size_t> strides(m, 1);
    for (std::size_t l = m; l-- > 1;) strides[l - 1] = strides[l] * shape[l];
    const auto a_off = static_cast<std::size_t>(pivot_it - v.begin());
    std::vector<std::size_t> a(m);
    for (std::size_t l = 0; l < m; ++l) a[l] = (a_off / strides[l]) % shape[l];

    const double scale_m1 = std::pow(pivot, static_cast<double>(m - 1));
    const double bound = rel_tol * std::pow(std::abs(pivot), static_cast<double>(m));
    for (std::size_t off = 0; off < v.size(); ++off) {
        double rhs = 1.0;
        for (std::size_t l = 0; l < m; ++l) {
            const std::size_t il = (off / strides[l]) % shape[l];
            const std::size_t sub = a_off + (il - a[l]) * strides[l];  // unsigned wrap cancels
            rhs *= v[sub];
        }
        if (std::abs(v[off] * scale_m1 - rhs) > bound) return false;
    }
    return true;
}

FixtureSet default_fixtures(const FixtureOptions& o) {
    FixtureSet set;
    Rng rng(o.seed);
    auto push = [&](std::string id, DenseTensor t, FixtureKind kind, bool integer) {
        set.tensors.push_back({std::move(id), std::move(t), kind, integer});
    };

    push("thm34", gen::thm34(), FixtureKind::named, true);
    push("prop36", gen::prop36(), FixtureKind::named, true);

    const std::vector<Shape> zero_shapes{{1, 1}, {3, 2}, {2, 2, 2}, {4, 1, 3}, {2, 3, 2, 2}};
    for (std::size_t i = 0; i < zero_shapes.size(); ++i)
        push("zero-" + std::to_string(i), DenseTensor::zeros(zero_shapes[i]), FixtureKind::zero, true);

    for (std::size_t m = 2; m <= 4; ++m)
        for (std::size_t n = 1; n <= 4; ++n)
            push("identity-" + std::to_string(m) + "-" + std::to_string(n), identity_tensor(m, n),
                 FixtureKind::identity, true);

    for (std::size_t i = 0; i < o.rank_one_count; ++i)
        push("rank1-" + std::to_string(i), gen::random_rank_one(random_shape(rng, o.max_dim), rng),
             FixtureKind::rank_one, true);

    for (std::size_t i = 0; i < o.matrix_count; ++i) {
        const auto n1 = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(o.max_dim)));
        const auto n2 = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(o.max_dim)));
        const auto k = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(std::min(n1, n2))));
        const auto order = static_cast<std::size_t>(rng.integer(2, 4));
        push("matrix-" + std::to_string(i), gen::matrix_embedded(n1, n2, k, order, rng),
             FixtureKind::matrix_embedded, true);
    }

    for (std::size_t i = 0; i < o.random_count; ++i) {
        const Shape s = random_shape(rng, o.max_dim);
        if (i % 2 == 0)
            push("random-int-" + std::to_string(i), gen::random_integer(s, rng), FixtureKind::random, true);
        else
            push("random-real-" + std::to_string(i), gen::random_normal(s, rng), FixtureKind::random, false);
    }

    for (std::size_t i = 0; i < o.low_rank_count; ++i) {
        const Shape s = random_shape(rng, o.max_dim);
        Shape core(s.size());
        for (std::size_t l = 0; l < s.size(); ++l)
            core[l] = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(std::min<std::size_t>(s[l], 3))));
        push("lowrank-" + std::to_string(i), gen::random_tucker_integer(s, core, rng), FixtureKind::low_rank,
             true);
    }

    if (o.include_block_pair) {
        auto bp = gen::block_thm35();
        set.pairs.push_back({"block-thm35", std::move(bp.y), std::move(bp.z)});
    }
    for (std::size_t i = 0; i < o.pair_count; ++i) {
        const Shape s = random_shape(rng, o.max_dim);
        DenseTensor a = (i % 3 == 0) ? gen::random_rank_one(s, rng) : gen::random_integer(s, rng);
        Shape core(s.size());
        for (std::size_t l = 0; l < s.size(); ++l)
            core[l] = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(s[l])));
        DenseTensor b = gen::random_tucker_integer(s, core, rng);
        set.pairs.push_back({"pair-" + std::to_string(i), std::move(a), std::move(b)});
    }
    return set;
}

FixtureSet capped_fixtures(std::uint64_t seed, std::size_t max_dim, std::size_t random_count) {
    FixtureSet set;
    Rng rng(seed);
    auto push = [&](std::string id, DenseTensor t, FixtureKind kind) {
        set.tensors.push_back({std::move(id), std::move(t), kind, true});
    };
    push("thm34", gen::thm34(), FixtureKind::named);
    push("prop36", gen::prop36(), FixtureKind::named);
    push("zero-0", DenseTensor::zeros({2, 2}), FixtureKind::zero);
    push("zero-1", DenseTensor::zeros({2, 1, 3}), FixtureKind::zero);
    for (std::size_t m = 2; m <= 3; ++m)
        for (std::size_t n = 1; n <= 3; ++n)
            push("identity-" + std::to_string(m) + "-" + std::to_string(n), identity_tensor(m, n),
                 FixtureKind::identity);
    for (std::size_t i = 0; i < 6; ++i)
        push("rank1-" + std::to_string(i),
             gen::random_rank_one(random_shape(rng, static_cast<std::size_t>(rng.integer(2, 3)), max_dim), rng),
             FixtureKind::rank_one);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto n1 = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_dim)));
        const auto n2 = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_dim)));
        push("matrix-" + std::to_string(i),
             gen::matrix_embedded(n1, n2, std::min(n1, n2) > 1 ? std::min(n1, n2) - 1 : 1, 3, rng),
             FixtureKind::matrix_embedded);
    }
    for (std::size_t i = 0; i < random_count; ++i) {
        const Shape s = random_shape(rng, static_cast<std::size_t>(rng.integer(2, 3)), max_dim);
        if (i % 2 == 0) {
            push("random-int-" + std::to_string(i), gen::random_integer(s, rng, -2, 2), FixtureKind::random);
        } else {
            Shape core(s.size());
            for (std::size_t l = 0; l < s.size(); ++l)
                core[l] = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(std::min<std::size_t>(s[l], 2))));
            push("lowrank-" + std::to_string(i), gen::random_tucker_integer(s, core, rng), FixtureKind::low_rank);
        }
    }
    // Every core dimension below its mode size, so none of these is full under either rank function.
    for (std::size_t i = 0; i < 8 && max_dim >= 3; ++i) {
        Shape s(3), core(3);
        for (std::size_t l = 0; l < 3; ++l) {
            s[l] = static_cast<std::size_t>(rng.integer(3, static_cast<std::int64_t>(max_dim)));
            core[l] = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(s[l]) - 1));
        }
        push("deficient-" + std::to_string(i), gen::random_tucker_integer(s, core, rng), FixtureKind::low_rank);
    }
    for (std::size_t i = 0; i < 8; ++i) {
        const Shape s = random_shape(rng, static_cast<std::size_t>(rng.integer(2, 3)), max_dim);
        set.pairs.push_back({"pair-" + std::to_string(i), gen::random_rank_one(s, rng), gen::random_integer(s, rng, -2, 2)});
    }
    return set;
}

const PropertyResult& AxiomReport::row(const std::string& property) const {
    for (const auto& r : rows)
        if (r.property == property) return r;
    throw ArgumentError("report has no property '" + property + "'");
}

bool AxiomReport::declared_confirmed() const {
    for (const char* p : {"P1", "P2", "P3", "P4", "P5", "P6"})
        if (row(p).status == Status::fail) return false;
    for (const auto& d : declared)
        if (row(d).status == Status::fail) return false;
    return true;
}

AxiomReport axiom_report(const RankFunction& r, const FixtureSet& fixtures, const RankTolerance& tol,
                         std::uint64_t seed) {
    Tracker p1("P1"), p2("P2"), p3("P3"), p4("P4"), p5("P5"), p6("P6");
    Tracker proper("proper"), strong("strongly_proper"), subadd("subadditive");
    const std::vector<double> alphas{-2.0, -1.0, 0.5, 3.0};

    for (std::size_t fi = 0; fi < fixtures.tensors.size(); ++fi) {
        const auto& f = fixtures.tensors[fi];
        const DenseTensor& x = f.tensor;
        const Shape& shape = x.shape();
        const std::size_t rx = r(x);
        const std::string rx_s = std::to_string(rx);

        // P1: zero <=> 0; constructed rank-one => 1; on integer fixtures also 1 <=> rank-one.
        p1.check((rx == 0) == x.is_zero(), f.id, x, "r=" + rx_s + ", zero=" + (x.is_zero() ? "yes" : "no"));
        if (f.kind == FixtureKind::rank_one) p1.check(rx == 1, f.id, x, "rank-one fixture has r=" + rx_s);
        if (f.integer_valued)
            p1.check((rx == 1) == is_rank_one(x), f.id, x,
                     "r=" + rx_s + ", rank-one oracle=" + (is_rank_one(x) ? "yes" : "no"));

        if (f.kind == FixtureKind::identity)
            p2.check(rx == shape[0], f.id, x, "r(I)=" + rx_s + ", n=" + std::to_string(shape[0]));

        if (is_matrix_embedded(shape)) {
            const Matrix mat = unfold(x, 1);
            const std::size_t mr = matrix_rank(mat, tol);
            p3.check(rx == mr, f.id, x, "r=" + rx_s + ", matrix rank=" + std::to_string(mr));
        }

        for (double a : alphas) {
            const std::size_t ra = r(scale(x, a));
            p4.check(ra == rx, f.id, x, "r(x)=" + rx_s + ", r(" + std::to_string(a) + "x)=" + std::to_string(ra));
        }

        Rng rng(mix(seed, fi));
        if (x.order() >= 2) {
            for (int k = 0; k < 5; ++k) {
                const auto sigma = random_permutation(rng, x.order());
                const std::size_t rp = r(permute_modes(x, sigma));
                p5.check(rp == rx, f.id, x, "r(x)=" + rx_s + ", r(permuted)=" + std::to_string(rp));
            }
        }
        for (int k = 0; k < 10; ++k) {
            const auto sel = random_selection(rng, shape);
            const std::size_t rs = r(subtensor(x, sel));
            p6.check(rs <= rx, f.id, x, "r(x)=" + rx_s + ", r(subtensor)=" + std::to_string(rs));
        }

        if (x.order() >= 2) {
            if (is_cubic(shape))
                proper.check(rx <= shape[0], f.id, x, "cubic n=" + std::to_string(shape[0]) + ", r=" + rx_s);
            const std::size_t mx = *std::max_element(shape.begin(), shape.end());
            proper.check(rx <= mx, f.id, x, "max dim=" + std::to_string(mx) + ", r=" + rx_s);
            const std::size_t sm = submax(shape);
            strong.check(rx <= sm, f.id, x, "submax dim=" + std::to_string(sm) + ", r=" + rx_s);
        }
    }

    for (const auto& pair : fixtures.pairs) {
        const std::size_t ra = r(pair.a);
        const std::size_t rb = r(pair.b);
        const std::size_t rs = r(add(pair.a, pair.b));
        subadd.check(rs <= ra + rb, pair.id, pair.a,
                     "r(a+b)=" + std::to_string(rs) + " > r(a)+r(b)=" + std::to_string(ra) + "+" +
                         std::to_string(rb),
                     &pair.b);
    }

    AxiomReport report;
    report.rank_function = r.name();
    report.tolerance = tol.describe();
    for (auto p : r.declared()) report.declared.push_back(to_string(p));
    for (Tracker* t : {&p1, &p2, &p3, &p4, &p5, &p6, &proper, &strong, &subadd})
        report.rows.push_back(t->finish());
    return report;
}

std::string to_json(const AxiomReport& report, const std::optional<std::filesystem::path>& witness_dir) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json j{{"rank_function", report.rank_function},
                         {"property", row.property},
                         {"status", to_string(row.status)},
                         {"checks", row.checks}};
        if (row.status == Status::fail) {
            j["witness_id"] = row.witness_id;
            j["detail"] = row.detail;
            if (witness_dir && row.witness) {
                const std::string stem = sanitize(report.rank_function) + "_" + row.property;
                const auto path = *witness_dir / (stem + ".tns");
                io::write_tensor(path, *row.witness);
                j["witness_file"] = path.string();
                if (row.witness_partner) {
                    const auto ppath = *witness_dir / (stem + "_partner.tns");
                    io::write_tensor(ppath, *row.witness_partner);
                    j["witness_partner_file"] = ppath.string();
                }
            }
        }
        rows.push_back(std::move(j));
    }
    nlohmann::json doc{{"rank_function", report.rank_function},
                       {"tolerance", report.tolerance},
                       {"declared", report.declared},
                       {"declared_confirmed", report.declared_confirmed()},
                       {"rows", rows}};
    return doc.dump(2);
}

}  // namespace tensorrank::axioms
