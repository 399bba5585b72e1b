#pragma once

// Bit-level helpers over Boolean relations given as membership tables.
// A tuple is a mask of `arity` bits; bit b corresponds to argument position
// arity-1-b, matching the truth-table index convention of Constraint.

#include <cstdint>
#include <vector>

namespace boolcsp::detail {

struct Relation {
    int arity = 0;
    std::vector<bool> member; // size 2^arity

    std::uint32_t full() const { return (std::uint32_t{1} << arity) - 1; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(member.size()); }
    std::vector<std::uint32_t> tuples() const;
    Relation complemented() const; // {~t : t in R}
};

// Clause over bit positions: OR of x_b for b in pos, not x_b for b in neg.
struct LocalClause {
    std::uint32_t neg = 0;
    std::uint32_t pos = 0;
};

// XOR of x_b over b in mask equals rhs.
struct LocalEquation {
    std::uint32_t mask = 0;
    bool rhs = false;
};

bool and_closed(const Relation& r);
bool or_closed(const Relation& r);
bool affine(const Relation& r);
bool bijunctive(const Relation& r);

// Horn clauses whose conjunction equals r. Requires and_closed(r).
std::vector<LocalClause> horn_clauses(const Relation& r);
// Dual-Horn clauses whose conjunction equals r. Requires or_closed(r).
std::vector<LocalClause> anti_horn_clauses(const Relation& r);
// Every implied clause of at most two literals (plus the empty clause when r
// is empty). Their conjunction equals r iff bijunctive(r).
std::vector<LocalClause> two_clauses(const Relation& r);
// A basis of the equations defining the affine hull of r; a single 0 = 1
// equation when r is empty.
std::vector<LocalEquation> affine_equations(const Relation& r);

inline int popcount(std::uint32_t x) { return __builtin_popcount(x); }

} // namespace boolcsp::detail
