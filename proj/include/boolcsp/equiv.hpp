#pragma once

#include "boolcsp/core.hpp"
#include "boolcsp/sat.hpp"

namespace boolcsp {

/// S -> A, decided with at most 2^k solver queries: every assignment to A's
/// variables that falsifies A is substituted into S, and S implies A iff
/// every such substitution is unsatisfiable. `solver` must be built from S.
bool implies(const Solver& solver, const Application& a);
bool implies(const Instance& s, const Application& a, const Limits& limits = {});

/// Throws Error(structure) unless both instances share the constraint set
/// and the variable universe.
void require_same_universe(const Instance& s, const Instance& u);

/// Equivalence by mutual implication of every application.
bool equivalent(const Instance& s, const Instance& u, const Limits& limits = {});

/// Truth-table comparison over all 2^|X| assignments; cap bruteforce_equiv_vars.
bool equivalent_bruteforce(const Instance& s, const Instance& u, const Limits& limits = {});

} // namespace boolcsp
