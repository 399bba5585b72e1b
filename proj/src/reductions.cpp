#include "boolcsp/reductions.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "boolcsp/equiv.hpp"
#include "boolcsp/sat.hpp"

namespace boolcsp {

void GraphInput::validate() const {
    std::set<Edge> seen;
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw Error(ErrorCode::structure, "edge endpoint out of range");
        if (u == v) throw Error(ErrorCode::structure, "self-loop in a simple graph");
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second) throw Error(ErrorCode::structure, "duplicate edge");
    }
}

ColoredGraph GraphInput::uncolored() const {
    validate();
    return ColoredGraph(n, edges, std::vector<std::uint32_t>(n, 0));
}

namespace {

std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
    auto free = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) == taken.end(); };
    if (free(base)) return base;
    for (int i = 1;; ++i)
        if (auto name = base + "_" + std::to_string(i); free(name)) return name;
}

std::uint32_t member_index(const Instance& s, const Constraint& c) {
    const auto idx = s.constraint_set().find(c);
    if (!idx) throw Error(ErrorCode::precondition, "constraint '" + c.name() + "' is not in the instance's set");
    return *idx;
}

Application diagonal(std::uint32_t constraint, int arity, std::uint32_t var) {
    return {constraint, std::vector<Argument>(arity, Argument::variable(var))};
}

std::vector<std::string> with_extra(std::vector<std::string> vars, const std::string& name) {
    vars.push_back(name);
    return vars;
}

InstancePair satne_to_equiv(const Instance& s, const Constraint& c, bool excluded) {
    const auto& agg = s.constraint_set().report().aggregate;
    const bool set_valid = excluded ? agg.one_valid : agg.zero_valid;
    if (!set_valid)
        throw Error(ErrorCode::precondition, excluded ? "constraint set is not 1-valid" : "constraint set is not 0-valid");
    const std::uint32_t ci = member_index(s, c);
    const bool c_other_valid = excluded ? c.value(0) : c.value(c.table_size() - 1);
    if (c_other_valid)
        throw Error(ErrorCode::precondition,
                    "constraint '" + c.name() + (excluded ? "' is 0-valid" : "' is 1-valid"));
    // C(x,..,x) is equivalent to x (resp. not x)
    std::vector<Application> apps;
    for (std::uint32_t i = 0; i < s.num_vars(); ++i) apps.push_back(diagonal(ci, c.arity(), i));
    return {s, s.with_applications(std::move(apps))};
}

} // namespace

InstancePair unsat_to_equiv(const Instance& s, const Constraint& c0, const Constraint& c1) {
    const std::uint32_t i0 = member_index(s, c0);
    const std::uint32_t i1 = member_index(s, c1);
    if (c0.value(0)) throw Error(ErrorCode::precondition, "C0 '" + c0.name() + "' is 0-valid");
    if (c1.value(c1.table_size() - 1)) throw Error(ErrorCode::precondition, "C1 '" + c1.name() + "' is 1-valid");
    const auto vars = with_extra(s.variables(), fresh_name(s.variables(), "y"));
    const auto y = static_cast<std::uint32_t>(s.num_vars());
    Instance first(s.constraint_set_ptr(), vars, s.applications(), s.constants_allowed());
    Instance second(s.constraint_set_ptr(), vars, {diagonal(i0, c0.arity(), y), diagonal(i1, c1.arity(), y)},
                    s.constants_allowed());
    return {std::move(first), std::move(second)};
}

InstancePair satne1_to_equiv(const Instance& s, const Constraint& c) { return satne_to_equiv(s, c, true); }

InstancePair satne0_to_equiv(const Instance& s, const Constraint& c) { return satne_to_equiv(s, c, false); }

std::optional<Instance> express(const Constraint& target, ConstraintSetPtr constraints,
                                const std::vector<std::string>& vars, bool allow_zero) {
    const int k = target.arity();
    if (static_cast<int>(vars.size()) != k || k > 3)
        throw Error(ErrorCode::precondition, "express needs one variable per target argument, at most three");
    std::vector<std::uint32_t> domain;
    if (allow_zero) domain.push_back(Argument::constant(false).code());
    for (std::uint32_t i = 0; i < vars.size(); ++i) domain.push_back(Argument::variable(i).code());

    std::vector<Assignment> rows(target.table_size());
    for (std::uint32_t t = 0; t < target.table_size(); ++t) {
        rows[t] = Assignment(k);
        for (int j = 0; j < k; ++j) rows[t].set(j, tuple_bit(t, k, j));
    }

    // strongest consequence of target expressible over the domain
    std::vector<Application> implied;
    for (std::uint32_t ci = 0; ci < constraints->size(); ++ci) {
        const auto& c = (*constraints)[ci];
        const int arity = c.arity();
        std::size_t combos = 1;
        for (int j = 0; j < arity; ++j) combos *= domain.size();
        for (std::size_t code = 0; code < combos; ++code) {
            Application app{ci, {}};
            for (std::size_t j = 0, rest = code; j < static_cast<std::size_t>(arity); ++j, rest /= domain.size())
                app.args.push_back(Argument::from_code(domain[rest % domain.size()]));
            std::reverse(app.args.begin(), app.args.end());
            bool holds = true;
            for (std::uint32_t t = 0; t < target.table_size() && holds; ++t)
                if (target.value(t)) holds = c.value(application_index(app, rows[t]));
            if (holds) implied.push_back(std::move(app));
        }
    }
    Instance result(std::move(constraints), vars, std::move(implied), allow_zero);
    for (std::uint32_t t = 0; t < target.table_size(); ++t)
        if (eval_instance(result, rows[t]) != target.value(t)) return std::nullopt;
    return result;
}

std::optional<Application> implication_template(const Constraint& c, std::uint32_t constraint_index,
                                                std::uint32_t x, std::uint32_t y) {
    const std::uint32_t full = c.table_size() - 1;
    for (std::uint32_t s = 0; s < c.table_size(); ++s) {
        if (!c.value(s) || c.value(s ^ full)) continue;
        Application app{constraint_index, {}};
        for (int j = 0; j < c.arity(); ++j)
            app.args.push_back(Argument::variable(tuple_bit(s, c.arity(), j) ? y : x));
        return app;
    }
    return std::nullopt;
}

Ne01Reduction satne01_to_equiv(const Instance& s) {
    const auto& report = s.constraint_set().report();
    if (!report.aggregate.zero_valid || !report.aggregate.one_valid)
        throw Error(ErrorCode::precondition, "constraint set must be both 0-valid and 1-valid");
    const auto n = static_cast<std::uint32_t>(s.num_vars());

    for (std::uint32_t ci = 0; ci < s.constraint_set().size(); ++ci) {
        if (report.per_constraint[ci].complementive) continue;
        // A(x, y) is x -> y; the conjunction over all ordered pairs forces all-equal
        std::vector<Application> apps;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                apps.push_back(*implication_template(s.constraint_set()[ci], ci, i, j));
        return {s, s.with_applications(std::move(apps)), Ne01Branch::non_complementive};
    }

    // Every constraint is complementive: express a gadget with constant 0,
    // then trade the constant for a fresh variable f.
    const std::vector<std::string> xy = {"x", "y"}, xyz = {"x", "y", "z"};
    const auto implication = Constraint::from_bits("implies", "1101");
    const auto equality_gadget = Constraint::from_bits("gadget", "10010100"); // 000, 011, 101
    Ne01Branch branch = Ne01Branch::implication_gadget;
    auto v0 = express(implication, s.constraint_set_ptr(), xy, true);
    if (!v0) {
        branch = Ne01Branch::equality_gadget;
        v0 = express(equality_gadget, s.constraint_set_ptr(), xyz, true);
    }
    if (!v0)
        throw Error(ErrorCode::unavailable,
                    "neither x -> y nor the three-variable gadget is expressible with constant 0");

    const auto vars = with_extra(s.variables(), fresh_name(s.variables(), "f"));
    const Argument f = Argument::variable(n);
    std::vector<Application> apps;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            // gadget variables: implication (x, y) -> (x_i, x_j);
            // three-variable (x, y, z) -> (f, x_i, x_j)
            const std::vector<Argument> image =
                branch == Ne01Branch::implication_gadget
                    ? std::vector<Argument>{Argument::variable(i), Argument::variable(j)}
                    : std::vector<Argument>{f, Argument::variable(i), Argument::variable(j)};
            for (const auto& app : v0->applications()) {
                Application mapped{app.constraint, {}};
                for (const auto& arg : app.args)
                    mapped.args.push_back(arg.is_constant() ? f : image[arg.var()]);
                apps.push_back(std::move(mapped));
            }
        }
    Instance first(s.constraint_set_ptr(), vars, s.applications(), s.constants_allowed());
    Instance second(s.constraint_set_ptr(), vars, std::move(apps), s.constants_allowed());
    return {std::move(first), std::move(second), branch};
}

// ------------------------------------------------------------ GI reductions

Constraint or2_constraint() { return Constraint::from_bits("OR", "0111"); }

Constraint xor3_constraint() { return Constraint::from_bits("XOR3", "01101001"); }

namespace {

std::vector<std::string> numbered(const std::string& prefix, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

std::vector<Edge> sorted_edges(const GraphInput& g) {
    auto edges = g.edges;
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    return edges;
}

GraphInput without_isolated(const GraphInput& g) {
    std::vector<bool> used(g.n, false);
    for (const auto& [u, v] : g.edges) used[u] = used[v] = true;
    std::vector<std::uint32_t> relabel(g.n, 0);
    GraphInput out;
    for (std::uint32_t v = 0; v < g.n; ++v)
        if (used[v]) relabel[v] = static_cast<std::uint32_t>(out.n++);
    for (const auto& [u, v] : g.edges) out.edges.push_back({relabel[u], relabel[v]});
    return out;
}

} // namespace

Instance gi_to_or2(const GraphInput& g) {
    g.validate();
    std::vector<Application> apps;
    for (const auto& [u, v] : sorted_edges(g))
        apps.push_back({0, {Argument::variable(u), Argument::variable(v)}});
    return Instance(make_constraint_set({or2_constraint()}), numbered("x", g.n), std::move(apps), false);
}

Instance xor3_encoding(const GraphInput& g) {
    g.validate();
    const auto edges = sorted_edges(g);
    const auto n = static_cast<std::uint32_t>(g.n);
    const auto m = static_cast<std::uint32_t>(edges.size());
    auto x = [](std::uint32_t i) { return Argument::variable(i); };
    auto y = [n](std::uint32_t k) { return Argument::variable(n + k); };
    auto z = [n, m](std::uint32_t i) { return Argument::variable(n + m + i); };
    auto zp = [n, m](std::uint32_t i) { return Argument::variable(2 * n + m + i); };

    std::vector<std::string> vars = numbered("x", n);
    for (auto& name : numbered("y", m)) vars.push_back(std::move(name));
    for (auto& name : numbered("z", n)) vars.push_back(std::move(name));
    for (auto& name : numbered("z'", n)) vars.push_back(std::move(name));

    std::vector<Application> apps;
    for (std::uint32_t k = 0; k < m; ++k) apps.push_back({0, {x(edges[k].first), x(edges[k].second), y(k)}});
    for (std::uint32_t i = 0; i < n; ++i) apps.push_back({0, {x(i), z(i), zp(i)}});
    auto edge_index = [&](std::uint32_t a, std::uint32_t b) -> std::optional<std::uint32_t> {
        const auto it = std::lower_bound(edges.begin(), edges.end(), Edge{a, b});
        if (it == edges.end() || *it != Edge{a, b}) return std::nullopt;
        return static_cast<std::uint32_t>(it - edges.begin());
    };
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c) {
                const auto ab = edge_index(a, b), ac = edge_index(a, c), bc = edge_index(b, c);
                if (ab && ac && bc) apps.push_back({0, {y(*ab), y(*ac), y(*bc)}});
            }
    return Instance(make_constraint_set({xor3_constraint()}), std::move(vars), std::move(apps), false);
}

std::optional<InstancePair> gi_to_xor3(const GraphInput& g, const GraphInput& h) {
    g.validate();
    h.validate();
    const auto g2 = without_isolated(g);
    const auto h2 = without_isolated(h);
    if (g2.n != h2.n || g2.edges.size() != h2.edges.size()) return std::nullopt;
    return InstancePair{xor3_encoding(g2), xor3_encoding(h2)};
}

bool xor3_maximality_check(const Instance& s, const Limits& limits) {
    const auto& set = s.constraint_set();
    if (set.size() != 1 || set[0].table() != xor3_constraint().table())
        throw Error(ErrorCode::precondition, "maximality check needs the constraint set {XOR3}");
    if (s.num_vars() > static_cast<std::size_t>(limits.maximality_vars))
        throw Error(ErrorCode::resource, "maximality check over " + std::to_string(s.num_vars()) +
                                             " variables exceeds cap " + std::to_string(limits.maximality_vars));
    std::set<std::array<std::uint32_t, 3>> present;
    for (const auto& app : s.applications()) {
        if (!app.args[0].is_variable() || !app.args[1].is_variable() || !app.args[2].is_variable()) continue;
        std::array<std::uint32_t, 3> t = {app.args[0].var(), app.args[1].var(), app.args[2].var()};
        std::sort(t.begin(), t.end());
        present.insert(t);
    }
    const Solver solver(s, limits);
    const auto n = static_cast<std::uint32_t>(s.num_vars());
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c) {
                const Application app{0, {Argument::variable(a), Argument::variable(b), Argument::variable(c)}};
                if (!present.contains({a, b, c}) && implies(solver, app)) return false;
            }
    return true;
}

} // namespace boolcsp
