#include "boolcsp/equiv.hpp"

#include <algorithm>

namespace boolcsp {

bool implies(const Solver& solver, const Application& a) {
    const Instance& s = solver.instance();
    const auto& c = s.constraint_of(a);
    std::vector<std::uint32_t> vars;
    for (const auto& arg : a.args) {
        if (arg.is_variable() && arg.var() >= s.num_vars())
            throw Error(ErrorCode::structure, "application uses a variable outside the universe");
        if (arg.is_variable() && std::find(vars.begin(), vars.end(), arg.var()) == vars.end())
            vars.push_back(arg.var());
    }
    std::vector<Pin> pins(vars.size());
    Assignment local(s.num_vars());
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << vars.size()); ++m) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const bool v = (m >> i) & 1u;
            pins[i] = {vars[i], v};
            local.set(vars[i], v);
        }
        if (c.value(application_index(a, local))) continue;
        if (solver.solve(pins).satisfiable) return false;
    }
    return true;
}

bool implies(const Instance& s, const Application& a, const Limits& limits) {
    if (a.constraint >= s.constraint_set().size())
        throw Error(ErrorCode::structure, "application refers to a constraint outside the set");
    return implies(Solver(s, limits), a);
}

void require_same_universe(const Instance& s, const Instance& u) {
    if (!(s.constraint_set() == u.constraint_set()))
        throw Error(ErrorCode::structure, "instances use different constraint sets");
    if (s.variables() != u.variables())
        throw Error(ErrorCode::structure, "instances use different variable universes");
}

bool equivalent(const Instance& s, const Instance& u, const Limits& limits) {
    require_same_universe(s, u);
    const Solver solve_s(s, limits);
    const Solver solve_u(u, limits);
    for (const auto& a : s.applications())
        if (!implies(solve_u, a)) return false;
    for (const auto& b : u.applications())
        if (!implies(solve_s, b)) return false;
    return true;
}

bool equivalent_bruteforce(const Instance& s, const Instance& u, const Limits& limits) {
    require_same_universe(s, u);
    if (s.num_vars() > static_cast<std::size_t>(limits.bruteforce_equiv_vars))
        throw Error(ErrorCode::resource, "brute-force equivalence over " + std::to_string(s.num_vars()) +
                                             " variables exceeds cap " +
                                             std::to_string(limits.bruteforce_equiv_vars));
    ++solver_stats().enumerations;
    const std::uint64_t total = std::uint64_t{1} << s.num_vars();
    for (std::uint64_t m = 0; m < total; ++m)
        if (eval_instance_mask(s, m) != eval_instance_mask(u, m)) return false;
    return true;
}

} // namespace boolcsp
