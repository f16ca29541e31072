#include "tensorrank/fullrank.hpp"

#include "tensorrank/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>

namespace tensorrank {

namespace {

using Subset = std::vector<std::size_t>;

std::optional<std::size_t> full_mode(std::size_t rank, const Shape& shape) {
    for (std::size_t p = 0; p < shape.size(); ++p)
        if (shape[p] == rank) return p + 1;
    return std::nullopt;
}

// Vectors are rated as n x 1 matrices.
Shape padded(Shape shape) {
    if (shape.size() == 1) shape.push_back(1);
    return shape;
}

IndexSelection unit_selection(std::size_t order) {
    return IndexSelection(std::vector<std::vector<std::size_t>>(order, Subset{1}));
}

// All nonempty subsets of {1..n} in lexicographic order.
std::vector<Subset> lex_subsets(std::size_t n) {
    std::vector<Subset> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Subset s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) s.push_back(i + 1);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

FullRankResult is_full_rank(const RankFunction& r, const DenseTensor& x) {
    FullRankResult out;
    out.rank = r(x);
    if (out.rank == 0) {
        out.full = true;
        return out;
    }
    out.mode = full_mode(out.rank, padded(x.shape()));
    out.full = out.mode.has_value();
    return out;
}

std::string to_json(const FullRankCertificate& cert) {
    nlohmann::json j;
    j["mode"] = cert.mode ? nlohmann::json(*cert.mode) : nlohmann::json(nullptr);
    j["indices"] = cert.indices;
    j["rank"] = cert.rank;
    j["selection"] = cert.selection.per_mode();
    return j.dump();
}

std::pair<DenseTensor, FullRankCertificate> extract_max_tucker(const DenseTensor& x,
                                                               const RankTolerance& tol) {
    const auto nr = n_rank(x, tol);
    const auto it = std::max_element(nr.ranks.begin(), nr.ranks.end());
    if (*it == 0) {
        auto sel = unit_selection(x.order());
        return {subtensor(x, sel), FullRankCertificate{std::nullopt, {}, 0, std::move(sel)}};
    }
    // max_element returns the first maximum, i.e. the smallest mode.
    const std::size_t p = static_cast<std::size_t>(it - nr.ranks.begin()) + 1;
    const RowBasis basis = row_basis(unfold(x, p), tol);
    auto sets = IndexSelection::full(x.shape()).per_mode();
    sets[p - 1] = basis.indices;
    IndexSelection sel(std::move(sets));
    DenseTensor y = subtensor(x, sel);
    return {std::move(y), FullRankCertificate{p, basis.indices, basis.rank(), std::move(sel)}};
}

std::pair<DenseTensor, FullRankCertificate> extract_brute_force(const RankFunction& r,
                                                                const DenseTensor& x,
                                                                const EnumerationLimits& limits) {
    const Shape& shape = x.shape();
    if (x.size() > limits.max_entries)
        throw CapacityError("tensor has " + std::to_string(x.size()) + " entries; enumeration cap is " +
                            std::to_string(limits.max_entries));
    for (auto n : shape)
        if (n > limits.max_dim)
            throw CapacityError("dimension " + std::to_string(n) + " exceeds enumeration cap " +
                                std::to_string(limits.max_dim));

    const std::size_t upper = r(x);
    if (upper == 0) {
        auto sel = unit_selection(x.order());
        return {subtensor(x, sel), FullRankCertificate{std::nullopt, {}, 0, std::move(sel)}};
    }

    const std::size_t m = shape.size();
    std::vector<std::vector<Subset>> subsets(m);
    for (std::size_t l = 0; l < m; ++l) subsets[l] = lex_subsets(shape[l]);

    std::size_t best = 0;
    std::optional<IndexSelection> best_sel;
    std::optional<std::size_t> best_mode;
    bool done = false;
    std::vector<const Subset*> current(m, nullptr);

    auto evaluate = [&]() {
        Shape dims(m);
        for (std::size_t l = 0; l < m; ++l) dims[l] = current[l]->size();
        const bool can_improve = std::any_of(dims.begin(), dims.end(),
                                             [&](std::size_t n) { return n > best && n <= upper; });
        if (!can_improve) return;
        std::vector<std::vector<std::size_t>> sets(m);
        for (std::size_t l = 0; l < m; ++l) sets[l] = *current[l];
        IndexSelection sel(std::move(sets));
        const std::size_t value = r(subtensor(x, sel));
        if (value <= best) return;
        const auto mode = full_mode(value, padded(dims));
        if (!mode) return;
        best = value;
        best_mode = mode;
        best_sel = std::move(sel);
        if (best >= upper) done = true;
    };

    const std::size_t top = *std::max_element(shape.begin(), shape.end());
    for (std::size_t d = top; d >= 1 && !done && d > best; --d) {
        std::function<void(std::size_t, bool)> visit = [&](std::size_t l, bool has_d) {
            for (const auto& s : subsets[l]) {
                if (done) return;
                if (s.size() > d) continue;
                const bool hit = has_d || s.size() == d;
                if (l + 1 == m && !hit) continue;
                current[l] = &s;
                if (l + 1 == m)
                    evaluate();
                else
                    visit(l + 1, hit);
            }
        };
        visit(0, false);
    }

    if (!best_sel) {
        auto sel = unit_selection(m);
        return {subtensor(x, sel), FullRankCertificate{std::nullopt, {}, 0, std::move(sel)}};
    }
    std::vector<std::size_t> indices = best_sel->mode(*best_mode <= m ? *best_mode : 1);
    if (*best_mode > m) indices = {1};  // implicit trailing mode of a vector
    DenseTensor y = subtensor(x, *best_sel);
    return {std::move(y), FullRankCertificate{best_mode, std::move(indices), best, std::move(*best_sel)}};
}

std::size_t closure_eval(const RankFunction& r, const DenseTensor& x, const EnumerationLimits& limits) {
    return extract_brute_force(r, x, limits).second.rank;
}

RankFunction closure_rank_function(const RankFunction& r, const EnumerationLimits& limits) {
    std::set<RankProperty> declared{RankProperty::proper};
    if (r.declares(RankProperty::strongly_proper)) declared.insert(RankProperty::strongly_proper);
    return RankFunction(
        "closure(" + r.name() + ")", [r, limits](const DenseTensor& x) { return closure_eval(r, x, limits); },
        std::move(declared));
}

}  // namespace tensorrank
