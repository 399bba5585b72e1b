#include "relation.hpp"

#include <array>
#include <cassert>

namespace boolcsp::detail {

namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;

// sup[t] = AND of all members that are supersets of t, or kNone.
std::vector<std::uint32_t> superset_meets(const Relation& r) {
    std::vector<std::uint32_t> sup(r.size());
    for (std::uint32_t t = 0; t < r.size(); ++t) sup[t] = r.member[t] ? t : kNone;
    for (int b = 0; b < r.arity; ++b) {
        const std::uint32_t bit = std::uint32_t{1} << b;
        for (std::uint32_t t = 0; t < r.size(); ++t)
            if (!(t & bit)) sup[t] &= sup[t | bit];
    }
    return sup;
}

struct Basis {
    std::vector<std::uint32_t> rows; // reduced row echelon form
    std::vector<int> pivots;
};

Basis span_of_differences(const std::vector<std::uint32_t>& tuples) {
    Basis basis;
    if (tuples.empty()) return basis;
    const std::uint32_t p0 = tuples.front();
    for (std::uint32_t t : tuples) {
        std::uint32_t v = t ^ p0;
        for (std::size_t i = 0; i < basis.rows.size(); ++i)
            if (v >> basis.pivots[i] & 1u) v ^= basis.rows[i];
        if (!v) continue;
        const int pivot = 31 - __builtin_clz(v);
        for (auto& row : basis.rows)
            if (row >> pivot & 1u) row ^= v;
        basis.rows.push_back(v);
        basis.pivots.push_back(pivot);
    }
    return basis;
}

} // namespace

std::vector<std::uint32_t> Relation::tuples() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t t = 0; t < size(); ++t)
        if (member[t]) out.push_back(t);
    return out;
}

Relation Relation::complemented() const {
    Relation c{arity, std::vector<bool>(member.size())};
    for (std::uint32_t t = 0; t < size(); ++t) c.member[t] = member[t ^ full()];
    return c;
}

bool and_closed(const Relation& r) {
    const auto sup = superset_meets(r);
    for (std::uint32_t t = 0; t < r.size(); ++t)
        if (!r.member[t] && sup[t] == t) return false;
    return true;
}

bool or_closed(const Relation& r) { return and_closed(r.complemented()); }

bool affine(const Relation& r) {
    const auto tuples = r.tuples();
    if (tuples.empty()) return true;
    const auto basis = span_of_differences(tuples);
    return tuples.size() == (std::size_t{1} << basis.rows.size());
}

namespace {

// present[i][j] has bit (2*bi + bj) set when some member has x_i = bi, x_j = bj.
std::vector<std::array<std::uint8_t, 64>> pair_projections(const Relation& r) {
    std::vector<std::array<std::uint8_t, 64>> present(r.arity);
    for (auto& row : present) row.fill(0);
    for (std::uint32_t t = 0; t < r.size(); ++t) {
        if (!r.member[t]) continue;
        for (int i = 0; i < r.arity; ++i)
            for (int j = 0; j < r.arity; ++j)
                present[i][j] |= std::uint8_t(1u << (2 * (t >> i & 1u) + (t >> j & 1u)));
    }
    return present;
}

} // namespace

bool bijunctive(const Relation& r) {
    const auto tuples = r.tuples();
    if (tuples.empty() || r.arity <= 1) return true;
    const auto present = pair_projections(r);
    std::size_t consistent = 0;
    for (std::uint32_t t = 0; t < r.size(); ++t) {
        bool ok = true;
        for (int i = 0; i < r.arity && ok; ++i)
            for (int j = i + 1; j < r.arity && ok; ++j)
                ok = present[i][j] >> (2 * (t >> i & 1u) + (t >> j & 1u)) & 1u;
        consistent += ok;
    }
    return consistent == tuples.size();
}

std::vector<LocalClause> horn_clauses(const Relation& r) {
    const auto sup = superset_meets(r);
    std::vector<LocalClause> out;
    for (std::uint32_t t = 0; t < r.size(); ++t) {
        if (r.member[t]) continue;
        if (sup[t] == kNone) {
            out.push_back({t, 0});
            continue;
        }
        // The meet of members above t lies in r and strictly above t.
        const std::uint32_t gap = sup[t] & ~t;
        assert(gap != 0);
        out.push_back({t, gap & (~gap + 1)});
    }
    return out;
}

std::vector<LocalClause> anti_horn_clauses(const Relation& r) {
    auto clauses = horn_clauses(r.complemented());
    for (auto& c : clauses) std::swap(c.neg, c.pos);
    return clauses;
}

std::vector<LocalClause> two_clauses(const Relation& r) {
    std::vector<LocalClause> out;
    if (r.tuples().empty()) {
        out.push_back({0, 0});
        return out;
    }
    const auto present = pair_projections(r);
    for (int i = 0; i < r.arity; ++i) {
        const std::uint32_t bi = std::uint32_t{1} << i;
        // unit clauses: value of x_i fixed across members
        const bool has0 = present[i][i] & 0b0001;
        const bool has1 = present[i][i] & 0b1000;
        if (!has0) out.push_back({0, bi});
        if (!has1) out.push_back({bi, 0});
        for (int j = i + 1; j < r.arity; ++j) {
            const std::uint32_t bj = std::uint32_t{1} << j;
            for (int vi = 0; vi < 2; ++vi)
                for (int vj = 0; vj < 2; ++vj) {
                    // the clause falsified exactly by (x_i, x_j) = (vi, vj)
                    if (present[i][j] >> (2 * vi + vj) & 1u) continue;
                    LocalClause c;
                    (vi ? c.neg : c.pos) |= bi;
                    (vj ? c.neg : c.pos) |= bj;
                    out.push_back(c);
                }
        }
    }
    return out;
}

std::vector<LocalEquation> affine_equations(const Relation& r) {
    const auto tuples = r.tuples();
    if (tuples.empty()) return {{0, true}};
    const auto basis = span_of_differences(tuples);
    std::uint32_t pivot_mask = 0;
    for (int p : basis.pivots) pivot_mask |= std::uint32_t{1} << p;
    std::vector<LocalEquation> out;
    for (int f = 0; f < r.arity; ++f) {
        if (pivot_mask >> f & 1u) continue;
        std::uint32_t a = std::uint32_t{1} << f;
        for (std::size_t i = 0; i < basis.rows.size(); ++i)
            if (basis.rows[i] >> f & 1u) a |= std::uint32_t{1} << basis.pivots[i];
        out.push_back({a, (popcount(a & tuples.front()) & 1) != 0});
    }
    return out;
}

} // namespace boolcsp::detail
