#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "boolcsp/core.hpp"

namespace boolcsp {

enum class Method { horn, anti_horn, two_sat, affine, valid_shortcut, backtracking, bruteforce };

std::string_view to_string(Method m);

struct SatResult {
    bool satisfiable = false;
    std::optional<Assignment> witness; // present iff satisfiable
    Method method = Method::backtracking;
};

/// Fixes one variable to a constant; equivalent to substituting the constant
/// for every occurrence.
struct Pin {
    std::uint32_t var;
    bool value;
};

/// Replaces every occurrence of a pinned variable by its constant. The result
/// allows constants; its universe is unchanged.
Instance substitute(const Instance& s, std::span<const Pin> pins);

struct Literal {
    std::uint32_t var;
    bool positive;
    auto operator<=>(const Literal&) const = default;
};

struct Clause {
    std::vector<Literal> literals; // sorted, duplicate-free; empty = false
    auto operator<=>(const Clause&) const = default;
};

struct XorEquation {
    std::vector<std::uint32_t> vars; // sorted; empty with rhs=1 is 0 = 1
    bool rhs = false;
    auto operator<=>(const XorEquation&) const = default;
};

// The instance rewritten in the syntax of one Schaefer class.
struct ClauseForm {
    SyntacticClass cls = SyntacticClass::horn;
    std::size_t num_vars = 0;
    std::vector<Clause> clauses;        // horn, anti_horn, bijunctive
    std::vector<XorEquation> equations; // affine
};

/// Requires every constraint of the set to belong to `cls`.
ClauseForm to_clause_form(const Instance& s, SyntacticClass cls);

bool eval_clause_form(const ClauseForm& form, const Assignment& a);

/// Per-thread instrumentation of the decision procedures.
struct SolverStats {
    std::uint64_t solve_calls = 0;
    std::uint64_t backtrack_runs = 0; // exponential search invocations
    std::uint64_t enumerations = 0;   // 2^|X| sweeps (counting, oracles)
};

SolverStats& solver_stats();
void reset_solver_stats();

// Decides CSP_c for one instance, with optional pinned variables. The clause
// form of the instance is built once so that repeated queries under
// different pins (implication tests, SAT variants) share it.
class Solver {
public:
    explicit Solver(const Instance& s, const Limits& limits = {});
    /// Forces one algorithm; throws Error(precondition) if the constraint set
    /// is outside its class. Method::backtracking is always accepted.
    Solver(const Instance& s, Method forced, const Limits& limits = {});

    /// The algorithm used when no valid-assignment shortcut applies.
    Method method() const { return method_; }
    const Instance& instance() const { return instance_; }

    SatResult solve(std::span<const Pin> pins = {}) const;

private:
    std::optional<Assignment> search(std::span<const Pin> pins) const;
    std::optional<Assignment> solve_horn(std::span<const Pin> pins, bool dual) const;
    std::optional<Assignment> solve_two_sat(std::span<const Pin> pins) const;
    std::optional<Assignment> solve_affine(std::span<const Pin> pins) const;

    Instance instance_;
    Limits limits_;
    Method method_;
    ClauseForm form_;
    bool has_constants_;
};

SatResult solve(const Instance& s, const Limits& limits = {});

/// Exhaustive search over all 2^|X| assignments, lexicographic; cap count_vars.
SatResult solve_bruteforce(const Instance& s, const Limits& limits = {});

bool sat_not_all_one(const Instance& s, const Limits& limits = {});
bool sat_not_all_zero(const Instance& s, const Limits& limits = {});
/// Requires |X| >= 2.
bool sat_nontrivial(const Instance& s, const Limits& limits = {});

std::uint64_t count_models(const Instance& s, const Limits& limits = {});

/// Bitmask of models: bit m set iff assignment from_mask(m) satisfies s.
std::vector<bool> model_table(const Instance& s, const Limits& limits = {});

} // namespace boolcsp
