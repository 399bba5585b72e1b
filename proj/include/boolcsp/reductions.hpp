#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boolcsp/core.hpp"
#include "boolcsp/graph.hpp"

namespace boolcsp {

// Plain simple graph on vertices 0..n-1.
struct GraphInput {
    std::size_t n = 0;
    std::vector<Edge> edges;

    /// Throws Error(structure) on loops, duplicate edges or bad endpoints.
    void validate() const;
    ColoredGraph uncolored() const;
};

using InstancePair = std::pair<Instance, Instance>;

/// (S', U) with U = {C0(y,..,y), C1(y,..,y)} for a fresh variable y, both over
/// X + {y}. S is unsatisfiable iff S' and U are equivalent. C0 must not be
/// 0-valid, C1 not 1-valid; both must belong to S's constraint set.
InstancePair unsat_to_equiv(const Instance& s, const Constraint& c0, const Constraint& c1);

/// U = {C(x,..,x) : x in X}. The set must be 1-valid and C not 0-valid; then
/// S has no model other than all-ones iff S and U are equivalent.
InstancePair satne1_to_equiv(const Instance& s, const Constraint& c);
/// Mirror image: 0-valid set, C not 1-valid, models other than all-zeros.
InstancePair satne0_to_equiv(const Instance& s, const Constraint& c);

/// Conjunctive definability of `target` (arity = vars.size() <= 3, argument
/// j of target is vars[j]) by applications of `constraints` over vars and,
/// if allowed, the constant 0. Returns the set of all implied applications
/// when its conjunction equals target.
std::optional<Instance> express(const Constraint& target, ConstraintSetPtr constraints,
                                const std::vector<std::string>& vars, bool allow_zero);

/// The two-variable application A(x, y) = C(a_1..a_k) with a_i = y where
/// s_i = 1 and x elsewhere, for the first tuple s with C(s) = 1 and
/// C(complement s) = 0. Absent for complementive C.
std::optional<Application> implication_template(const Constraint& c, std::uint32_t constraint_index,
                                                std::uint32_t x, std::uint32_t y);

enum class Ne01Branch { non_complementive, implication_gadget, equality_gadget };

struct Ne01Reduction {
    Instance first;
    Instance second;
    Ne01Branch branch;
};

/// For a set that is 0-valid and 1-valid: S has no model besides all-zeros
/// and all-ones iff the returned pair is equivalent. The complementive
/// branches add a fresh variable f to both instances. Throws
/// Error(unavailable) when no gadget can be expressed.
Ne01Reduction satne01_to_equiv(const Instance& s);

Constraint or2_constraint();
Constraint xor3_constraint(); // odd parity: x + y + z = 1 over GF(2)

/// One OR(x_i, x_j), i < j, per edge over X = {x1..xn}.
Instance gi_to_or2(const GraphInput& g);

/// Graph to XOR3 encoding after removal of isolated vertices. Absent when
/// the reduced graphs differ in vertex or edge count.
std::optional<InstancePair> gi_to_xor3(const GraphInput& g, const GraphInput& h);

/// The XOR3 instance of a graph without isolated vertices.
Instance xor3_encoding(const GraphInput& g);

/// Every ternary parity over distinct variables that S implies occurs in S
/// up to argument order. S must be over {XOR3}.
bool xor3_maximality_check(const Instance& s, const Limits& limits = {});

} // namespace boolcsp
