#include "boolcsp/sat.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "relation.hpp"

namespace boolcsp {

std::string_view to_string(Method m) {
    switch (m) {
    case Method::horn: return "horn";
    case Method::anti_horn: return "anti_horn";
    case Method::two_sat: return "two_sat";
    case Method::affine: return "affine";
    case Method::valid_shortcut: return "valid_shortcut";
    case Method::backtracking: return "backtracking";
    case Method::bruteforce: return "bruteforce";
    }
    return "?";
}

SolverStats& solver_stats() {
    thread_local SolverStats stats;
    return stats;
}

void reset_solver_stats() { solver_stats() = {}; }

Instance substitute(const Instance& s, std::span<const Pin> pins) {
    std::vector<std::optional<bool>> fixed(s.num_vars());
    for (const auto& p : pins) {
        if (p.var >= s.num_vars()) throw Error(ErrorCode::structure, "pinned variable out of range");
        fixed[p.var] = p.value;
    }
    auto apps = s.applications();
    for (auto& app : apps)
        for (auto& arg : app.args)
            if (arg.is_variable() && fixed[arg.var()]) arg = Argument::constant(*fixed[arg.var()]);
    return Instance(s.constraint_set_ptr(), s.variables(), std::move(apps), true);
}

// ---------------------------------------------------------------- clause form

namespace {

bool class_holds(const PropertyFlags& f, SyntacticClass cls) {
    switch (cls) {
    case SyntacticClass::horn: return f.horn;
    case SyntacticClass::anti_horn: return f.anti_horn;
    case SyntacticClass::bijunctive: return f.bijunctive;
    case SyntacticClass::affine: return f.affine;
    }
    return false;
}

// The application seen as a relation over its distinct variables, with
// constants substituted and repeated variables identified. Local bit b is
// variable vars[d-1-b].
struct Projection {
    std::vector<std::uint32_t> vars;
    detail::Relation rel;

    std::uint32_t var_of_bit(int b) const { return vars[vars.size() - 1 - b]; }
};

Projection project(const Instance& s, const Application& app) {
    Projection p;
    for (const auto& arg : app.args)
        if (arg.is_variable() && std::find(p.vars.begin(), p.vars.end(), arg.var()) == p.vars.end())
            p.vars.push_back(arg.var());
    const int d = static_cast<int>(p.vars.size());
    const auto& c = s.constraint_of(app);
    p.rel.arity = d;
    p.rel.member.assign(std::size_t{1} << d, false);
    for (std::uint32_t u = 0; u < p.rel.size(); ++u) {
        std::uint32_t index = 0;
        for (const auto& arg : app.args) {
            bool bit;
            if (arg.is_constant()) {
                bit = arg.constant_value();
            } else {
                const auto pos = std::find(p.vars.begin(), p.vars.end(), arg.var()) - p.vars.begin();
                bit = (u >> (d - 1 - pos)) & 1u;
            }
            index = (index << 1) | std::uint32_t(bit);
        }
        p.rel.member[u] = c.value(index);
    }
    return p;
}

Clause to_clause(const Projection& p, const detail::LocalClause& lc) {
    Clause c;
    for (int b = 0; b < p.rel.arity; ++b) {
        if (lc.pos >> b & 1u) c.literals.push_back({p.var_of_bit(b), true});
        if (lc.neg >> b & 1u) c.literals.push_back({p.var_of_bit(b), false});
    }
    std::sort(c.literals.begin(), c.literals.end());
    return c;
}

} // namespace

ClauseForm to_clause_form(const Instance& s, SyntacticClass cls) {
    if (!class_holds(s.constraint_set().report().aggregate, cls))
        throw Error(ErrorCode::precondition,
                    "constraint set is not " + std::string(to_string(cls)) + "; no clause form in that class");
    ClauseForm form;
    form.cls = cls;
    form.num_vars = s.num_vars();
    for (const auto& app : s.applications()) {
        const auto p = project(s, app);
        if (cls == SyntacticClass::affine) {
            for (const auto& le : detail::affine_equations(p.rel)) {
                XorEquation eq;
                for (int b = 0; b < p.rel.arity; ++b)
                    if (le.mask >> b & 1u) eq.vars.push_back(p.var_of_bit(b));
                std::sort(eq.vars.begin(), eq.vars.end());
                eq.rhs = le.rhs;
                form.equations.push_back(std::move(eq));
            }
            continue;
        }
        std::vector<detail::LocalClause> local;
        switch (cls) {
        case SyntacticClass::horn: local = detail::horn_clauses(p.rel); break;
        case SyntacticClass::anti_horn: local = detail::anti_horn_clauses(p.rel); break;
        case SyntacticClass::bijunctive: local = detail::two_clauses(p.rel); break;
        case SyntacticClass::affine: break;
        }
        for (const auto& lc : local) form.clauses.push_back(to_clause(p, lc));
    }
    std::sort(form.clauses.begin(), form.clauses.end());
    form.clauses.erase(std::unique(form.clauses.begin(), form.clauses.end()), form.clauses.end());
    std::sort(form.equations.begin(), form.equations.end());
    form.equations.erase(std::unique(form.equations.begin(), form.equations.end()), form.equations.end());
    return form;
}

bool eval_clause_form(const ClauseForm& form, const Assignment& a) {
    for (const auto& c : form.clauses) {
        bool sat = false;
        for (const auto& l : c.literals) sat = sat || (a[l.var] == l.positive);
        if (!sat) return false;
    }
    for (const auto& eq : form.equations) {
        bool parity = false;
        for (auto v : eq.vars) parity ^= a[v];
        if (parity != eq.rhs) return false;
    }
    return true;
}

// -------------------------------------------------------------------- Solver

Solver::Solver(const Instance& s, const Limits& limits)
    : instance_(s), limits_(limits), method_(Method::backtracking), has_constants_(s.has_constant_arguments()) {
    // Dispatch priority when several classes apply: affine > bijunctive > horn > anti_horn.
    const auto& f = s.constraint_set().report().aggregate;
    if (f.affine) {
        method_ = Method::affine;
        form_ = to_clause_form(s, SyntacticClass::affine);
    } else if (f.bijunctive) {
        method_ = Method::two_sat;
        form_ = to_clause_form(s, SyntacticClass::bijunctive);
    } else if (f.horn) {
        method_ = Method::horn;
        form_ = to_clause_form(s, SyntacticClass::horn);
    } else if (f.anti_horn) {
        method_ = Method::anti_horn;
        form_ = to_clause_form(s, SyntacticClass::anti_horn);
    }
}

Solver::Solver(const Instance& s, Method forced, const Limits& limits)
    : instance_(s), limits_(limits), method_(forced), has_constants_(s.has_constant_arguments()) {
    switch (forced) {
    case Method::affine: form_ = to_clause_form(s, SyntacticClass::affine); break;
    case Method::two_sat: form_ = to_clause_form(s, SyntacticClass::bijunctive); break;
    case Method::horn: form_ = to_clause_form(s, SyntacticClass::horn); break;
    case Method::anti_horn: form_ = to_clause_form(s, SyntacticClass::anti_horn); break;
    case Method::backtracking: break;
    default: throw Error(ErrorCode::precondition, "method cannot be forced: " + std::string(to_string(forced)));
    }
}

SatResult Solver::solve(std::span<const Pin> pins) const {
    ++solver_stats().solve_calls;
    const std::size_t n = instance_.num_vars();
    for (const auto& p : pins)
        if (p.var >= n) throw Error(ErrorCode::structure, "pinned variable out of range");

    SatResult result;
    result.method = method_;
    const auto& f = instance_.constraint_set().report().aggregate;
    if (pins.empty() && !has_constants_ && (f.zero_valid || f.one_valid)) {
        result.method = Method::valid_shortcut;
        result.witness = Assignment(n, !f.zero_valid);
    } else {
        switch (method_) {
        case Method::horn: result.witness = solve_horn(pins, false); break;
        case Method::anti_horn: result.witness = solve_horn(pins, true); break;
        case Method::two_sat: result.witness = solve_two_sat(pins); break;
        case Method::affine: result.witness = solve_affine(pins); break;
        default: result.witness = search(pins); break;
        }
    }
    result.satisfiable = result.witness.has_value();
    if (result.witness) {
        bool ok = eval_instance(instance_, *result.witness);
        for (const auto& p : pins) ok = ok && (*result.witness)[p.var] == p.value;
        if (!ok) throw std::logic_error("solver produced a witness that does not satisfy the instance");
    }
    return result;
}

// Least model by unit propagation; with `dual` the clauses are read with
// flipped polarity and the greatest model is returned.
std::optional<Assignment> Solver::solve_horn(std::span<const Pin> pins, bool dual) const {
    const std::size_t n = instance_.num_vars();
    struct HornClause {
        int head = -1;
        std::size_t remaining = 0;
    };
    std::vector<HornClause> clauses;
    std::vector<std::vector<std::size_t>> watching(n); // clauses with var as a body atom

    auto add = [&](const std::vector<Literal>& lits, bool pinned_value_or_none, bool is_pin) {
        HornClause hc;
        if (is_pin) {
            if (pinned_value_or_none) {
                hc.head = static_cast<int>(lits.front().var);
            } else {
                hc.remaining = 1;
                watching[lits.front().var].push_back(clauses.size());
            }
            clauses.push_back(hc);
            return;
        }
        for (const auto& l : lits) {
            const bool positive = l.positive != dual;
            if (positive) {
                hc.head = static_cast<int>(l.var);
            } else {
                ++hc.remaining;
                watching[l.var].push_back(clauses.size());
            }
        }
        clauses.push_back(hc);
    };
    for (const auto& c : form_.clauses) add(c.literals, false, false);
    for (const auto& p : pins) add({{p.var, true}}, p.value != dual, true);

    std::vector<std::uint8_t> value(n, 0);
    std::vector<std::uint32_t> queue;
    auto fire = [&](const HornClause& hc) {
        if (hc.head < 0) return false;
        if (!value[hc.head]) {
            value[hc.head] = 1;
            queue.push_back(static_cast<std::uint32_t>(hc.head));
        }
        return true;
    };
    for (const auto& hc : clauses)
        if (hc.remaining == 0 && !fire(hc)) return std::nullopt;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (std::size_t ci : watching[queue[qi]])
            if (--clauses[ci].remaining == 0 && !fire(clauses[ci])) return std::nullopt;

    Assignment a(n);
    for (std::size_t i = 0; i < n; ++i) a.set(i, (value[i] != 0) != dual);
    return a;
}

std::optional<Assignment> Solver::solve_two_sat(std::span<const Pin> pins) const {
    const std::size_t n = instance_.num_vars();
    // node 2v is "x_v true", 2v+1 is "x_v false"
    auto node = [](const Literal& l) { return 2 * l.var + (l.positive ? 0 : 1); };
    std::vector<std::vector<std::uint32_t>> graph(2 * n);
    auto add_clause = [&](Literal a, Literal b) {
        graph[node(a) ^ 1].push_back(node(b));
        graph[node(b) ^ 1].push_back(node(a));
    };
    for (const auto& c : form_.clauses) {
        if (c.literals.empty()) return std::nullopt;
        add_clause(c.literals.front(), c.literals.back());
    }
    for (const auto& p : pins) add_clause({p.var, p.value}, {p.var, p.value});

    // Tarjan, iterative. Components are numbered in reverse topological order.
    const std::uint32_t unvisited = 0xFFFFFFFFu;
    std::vector<std::uint32_t> index(2 * n, unvisited), low(2 * n), comp(2 * n, unvisited);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::size_t>> frames;
    std::uint32_t counter = 0, components = 0;
    for (std::uint32_t root = 0; root < 2 * n; ++root) {
        if (index[root] != unvisited) continue;
        frames.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        while (!frames.empty()) {
            auto& [v, edge] = frames.back();
            if (edge < graph[v].size()) {
                const std::uint32_t w = graph[v][edge++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    frames.push_back({w, 0});
                } else if (comp[w] == unvisited) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    comp[w] = components;
                } while (w != v);
                ++components;
            }
            const std::uint32_t done = v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
        }
    }
    Assignment a(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (comp[2 * v] == comp[2 * v + 1]) return std::nullopt;
        a.set(v, comp[2 * v] < comp[2 * v + 1]);
    }
    return a;
}

std::optional<Assignment> Solver::solve_affine(std::span<const Pin> pins) const {
    const std::size_t n = instance_.num_vars();
    const std::size_t words = (n + 1 + 63) / 64;
    using Row = std::vector<std::uint64_t>;
    auto bit = [](const Row& r, std::size_t i) { return (r[i / 64] >> (i % 64)) & 1u; };
    auto flip = [](Row& r, std::size_t i) { r[i / 64] ^= std::uint64_t{1} << (i % 64); };

    std::vector<Row> rows;
    for (const auto& eq : form_.equations) {
        Row r(words, 0);
        for (auto v : eq.vars) flip(r, v);
        if (eq.rhs) flip(r, n);
        rows.push_back(std::move(r));
    }
    for (const auto& p : pins) {
        Row r(words, 0);
        flip(r, p.var);
        if (p.value) flip(r, n);
        rows.push_back(std::move(r));
    }

    // Gauss-Jordan over GF(2); column n holds the right-hand side.
    std::vector<int> pivot_of_row;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && !bit(rows[sel], col)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && bit(rows[r], col))
                for (std::size_t w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
        pivot_of_row.push_back(static_cast<int>(col));
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (bit(rows[r], n)) return std::nullopt;

    // free variables take 0, so each pivot equals its row's right-hand side
    Assignment a(n);
    for (std::size_t r = 0; r < rank; ++r) a.set(pivot_of_row[r], bit(rows[r], n));
    return a;
}

// Complete search: variables in index order, value 0 before 1.
std::optional<Assignment> Solver::search(std::span<const Pin> pins) const {
    const std::size_t n = instance_.num_vars();
    if (n > static_cast<std::size_t>(limits_.backtrack_vars))
        throw Error(ErrorCode::resource, "backtracking search over " + std::to_string(n) +
                                             " variables exceeds cap " + std::to_string(limits_.backtrack_vars));
    ++solver_stats().backtrack_runs;

    std::vector<int> pinned(n, -1);
    for (const auto& p : pins) {
        if (pinned[p.var] >= 0 && pinned[p.var] != int(p.value)) return std::nullopt;
        pinned[p.var] = p.value;
    }
    // applications are checked once their highest variable is assigned
    std::vector<std::vector<const Application*>> due(n);
    Assignment a(n);
    for (const auto& app : instance_.applications()) {
        int last = -1;
        for (const auto& arg : app.args)
            if (arg.is_variable()) last = std::max(last, static_cast<int>(arg.var()));
        if (last < 0) {
            if (!eval_application(instance_, app, a)) return std::nullopt;
        } else {
            due[last].push_back(&app);
        }
    }
    std::function<bool(std::size_t)> assign = [&](std::size_t i) {
        if (i == n) return true;
        for (int v = 0; v < 2; ++v) {
            if (pinned[i] >= 0 && pinned[i] != v) continue;
            a.set(i, v);
            bool ok = true;
            for (const auto* app : due[i])
                if (!(ok = eval_application(instance_, *app, a))) break;
            if (ok && assign(i + 1)) return true;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;
    return a;
}

SatResult solve(const Instance& s, const Limits& limits) { return Solver(s, limits).solve(); }

// --------------------------------------------------------- exhaustive paths

namespace {

void check_count_cap(const Instance& s, const Limits& limits) {
    if (s.num_vars() > static_cast<std::size_t>(limits.count_vars))
        throw Error(ErrorCode::resource, "enumeration over " + std::to_string(s.num_vars()) +
                                             " variables exceeds cap " + std::to_string(limits.count_vars));
}

} // namespace

SatResult solve_bruteforce(const Instance& s, const Limits& limits) {
    check_count_cap(s, limits);
    ++solver_stats().enumerations;
    SatResult r;
    r.method = Method::bruteforce;
    // lexicographic over (x_0, .., x_{n-1}): x_0 is the most significant digit
    const std::size_t n = s.num_vars();
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < n; ++i) m |= ((t >> (n - 1 - i)) & 1u) << i;
        if (eval_instance_mask(s, m)) {
            r.satisfiable = true;
            r.witness = Assignment::from_mask(n, m);
            break;
        }
    }
    return r;
}

std::uint64_t count_models(const Instance& s, const Limits& limits) {
    check_count_cap(s, limits);
    ++solver_stats().enumerations;
    const std::uint64_t total = std::uint64_t{1} << s.num_vars();
    std::uint64_t count = 0;
    for (std::uint64_t m = 0; m < total; ++m) count += eval_instance_mask(s, m);
    return count;
}

std::vector<bool> model_table(const Instance& s, const Limits& limits) {
    check_count_cap(s, limits);
    ++solver_stats().enumerations;
    std::vector<bool> table(std::size_t{1} << s.num_vars());
    for (std::uint64_t m = 0; m < table.size(); ++m) table[m] = eval_instance_mask(s, m);
    return table;
}

// ------------------------------------------------------------- SAT variants

namespace {

bool sat_not_constant(const Instance& s, bool excluded, const Limits& limits) {
    if (s.num_vars() == 0) throw Error(ErrorCode::precondition, "SAT variant on an empty variable set");
    const Solver solver(s, limits);
    // a model other than the constant vector has some coordinate flipped
    for (std::uint32_t i = 0; i < s.num_vars(); ++i) {
        const Pin pin{i, !excluded};
        if (solver.solve({&pin, 1}).satisfiable) return true;
    }
    return false;
}

} // namespace

bool sat_not_all_one(const Instance& s, const Limits& limits) { return sat_not_constant(s, true, limits); }

bool sat_not_all_zero(const Instance& s, const Limits& limits) { return sat_not_constant(s, false, limits); }

bool sat_nontrivial(const Instance& s, const Limits& limits) {
    if (s.num_vars() < 2) throw Error(ErrorCode::precondition, "SAT_{!=0,1} needs at least two variables");
    const Solver solver(s, limits);
    for (std::uint32_t i = 0; i < s.num_vars(); ++i)
        for (std::uint32_t j = 0; j < s.num_vars(); ++j) {
            if (i == j) continue;
            const Pin pins[] = {{i, false}, {j, true}};
            if (solver.solve(pins).satisfiable) return true;
        }
    return false;
}

} // namespace boolcsp
