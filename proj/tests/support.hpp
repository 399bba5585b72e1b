#pragma once

// Shared fixtures: named constraints, a small instance builder and seeded
// random generators. Oracles that must not share code with the library live
// here too.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "boolcsp/core.hpp"
#include "boolcsp/graph.hpp"
#include "boolcsp/iso.hpp"
#include "boolcsp/reductions.hpp"

namespace testing {

using namespace boolcsp;

inline Constraint OR2() { return Constraint::from_bits("OR", "0111"); }
inline Constraint AND2() { return Constraint::from_bits("AND", "0001"); }
inline Constraint NOR2() { return Constraint::from_bits("NOR", "1000"); }
inline Constraint NAND2() { return Constraint::from_bits("NAND", "1110"); }
inline Constraint IMPL() { return Constraint::from_bits("IMPL", "1101"); }
inline Constraint EQ2() { return Constraint::from_bits("EQ", "1001"); }
inline Constraint NEQ2() { return Constraint::from_bits("NEQ", "0110"); }
inline Constraint XOR3() { return Constraint::from_bits("XOR3", "01101001"); }
inline Constraint XNOR3() { return Constraint::from_bits("XNOR3", "10010110"); }
inline Constraint ONE_IN_THREE() { return Constraint::from_bits("T", "01101000"); }
inline Constraint NAE3() { return Constraint::from_bits("NAE", "01111110"); }
// Complementive, 0-valid and 1-valid, not Schaefer.
inline Constraint complementive4() {
    return Constraint::from_predicate("K", 4, [](std::uint32_t t) {
        return t == 0b0000 || t == 0b0101 || t == 0b0011 || t == 0b1111 || t == 0b1010 || t == 0b1100;
    });
}
inline Constraint HORN3() { return Constraint::from_bits("H3", "11111101"); } // !x | !y | z

// Argument tokens: a variable name, "$0" or "$1".
using App = std::pair<std::string, std::vector<std::string>>;

inline Instance make(const std::vector<Constraint>& cs, const std::vector<std::string>& vars,
                     const std::vector<App>& apps, bool constants = false) {
    auto set = make_constraint_set(cs);
    Instance probe(set, vars, {}, constants);
    std::vector<Application> out;
    for (const auto& [name, args] : apps) {
        Application a{*set->find(name), {}};
        for (const auto& t : args) {
            if (t == "$0" || t == "$1")
                a.args.push_back(Argument::constant(t == "$1"));
            else
                a.args.push_back(Argument::variable(*probe.find_variable(t)));
        }
        out.push_back(std::move(a));
    }
    return Instance(set, vars, std::move(out), constants);
}

inline Instance make(const ConstraintSetPtr& set, const std::vector<std::string>& vars,
                     std::vector<Application> apps, bool constants = false) {
    return Instance(set, vars, std::move(apps), constants);
}

inline std::vector<std::string> names(std::size_t n, const std::string& prefix = "x") {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i + 1));
    return v;
}

inline Assignment assign(std::initializer_list<int> bits) {
    Assignment a(bits.size());
    std::size_t i = 0;
    for (int b : bits) a.set(i++, b != 0);
    return a;
}

// ------------------------------------------------------------ generators

using Rng = std::mt19937_64;

inline Constraint random_constraint(Rng& rng, int arity, const std::string& name = "R") {
    std::bernoulli_distribution coin(0.5);
    return Constraint::from_predicate(name, arity, [&](std::uint32_t) { return coin(rng); });
}

// Random member of a closure class, built as the closure of a few random
// tuples under the class operation.
inline Constraint random_closed_constraint(Rng& rng, int arity, SyntacticClass cls, const std::string& name = "R") {
    const std::uint32_t size = 1u << arity;
    std::vector<bool> member(size, false);
    std::uniform_int_distribution<std::uint32_t> pick(0, size - 1);
    const int seeds = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < seeds; ++i) member[pick(rng)] = true;
    const std::uint32_t mask = size - 1;
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::uint32_t> tuples;
        for (std::uint32_t t = 0; t < size; ++t)
            if (member[t]) tuples.push_back(t);
        auto add = [&](std::uint32_t t) {
            if (!member[t]) member[t] = changed = true;
        };
        for (auto a : tuples)
            for (auto b : tuples) {
                if (cls == SyntacticClass::horn) add(a & b);
                if (cls == SyntacticClass::anti_horn) add(a | b);
                if (cls == SyntacticClass::affine || cls == SyntacticClass::bijunctive)
                    for (auto c : tuples)
                        add(cls == SyntacticClass::affine ? (a ^ b ^ c) & mask : (a & b) | (a & c) | (b & c));
            }
    }
    return Constraint(name, arity, member);
}

inline Application random_application(Rng& rng, const ConstraintSet& set, std::size_t n, bool constants) {
    Application a;
    a.constraint = std::uniform_int_distribution<std::uint32_t>(0, std::uint32_t(set.size() - 1))(rng);
    std::uniform_int_distribution<std::uint32_t> var(0, std::uint32_t(n - 1));
    std::bernoulli_distribution use_const(constants ? 0.15 : 0.0), bit(0.5);
    for (int j = 0; j < set[a.constraint].arity(); ++j)
        a.args.push_back(use_const(rng) || n == 0 ? Argument::constant(bit(rng)) : Argument::variable(var(rng)));
    return a;
}

inline Instance random_instance(Rng& rng, const ConstraintSetPtr& set, std::size_t n, std::size_t max_apps,
                                bool constants) {
    const auto m = std::uniform_int_distribution<std::size_t>(0, max_apps)(rng);
    std::vector<Application> apps;
    for (std::size_t i = 0; i < m; ++i) apps.push_back(random_application(rng, *set, n, constants));
    return Instance(set, names(n), std::move(apps), constants);
}

inline Permutation random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::uint32_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = std::uint32_t(i);
    std::shuffle(images.begin(), images.end(), rng);
    return Permutation(std::move(images));
}

inline GraphInput random_graph(Rng& rng, std::size_t n, double p) {
    GraphInput g;
    g.n = n;
    std::bernoulli_distribution coin(p);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (coin(rng)) g.edges.emplace_back(i, j);
    return g;
}

inline GraphInput relabel(const GraphInput& g, const std::vector<std::uint32_t>& perm) {
    GraphInput h;
    h.n = g.n;
    for (auto [u, v] : g.edges) h.edges.emplace_back(std::min(perm[u], perm[v]), std::max(perm[u], perm[v]));
    std::sort(h.edges.begin(), h.edges.end());
    return h;
}

inline ColoredGraph random_colored_graph(Rng& rng, std::size_t n, double p, std::uint32_t colors) {
    auto g = random_graph(rng, n, p);
    std::uniform_int_distribution<std::uint32_t> col(0, colors - 1);
    std::vector<std::uint32_t> c(n);
    for (auto& x : c) x = col(rng);
    return ColoredGraph(n, g.edges, c);
}

inline ColoredGraph relabel(const ColoredGraph& g, const std::vector<std::uint32_t>& perm) {
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    std::vector<std::uint32_t> colors(g.size());
    for (std::uint32_t v = 0; v < g.size(); ++v) colors[perm[v]] = g.color(v);
    const std::size_t n = g.size();
    return ColoredGraph(n, std::move(edges), std::move(colors));
}

inline std::vector<std::uint32_t> shuffled(Rng& rng, std::size_t n) { return random_permutation(rng, n).images(); }

// ------------------------------------------------------------ oracles

// Literal closure tests over all pairs / triples of satisfying tuples.
inline bool closed_literally(const Constraint& c, Property p) {
    const auto sat = c.satisfying();
    const std::uint32_t mask = c.table_size() - 1;
    auto in = [&](std::uint32_t t) { return c.value(t); };
    switch (p) {
    case Property::zero_valid: return in(0);
    case Property::one_valid: return in(mask);
    case Property::complementive:
        for (auto a : sat)
            if (!in(~a & mask)) return false;
        return true;
    case Property::horn:
    case Property::anti_horn:
        for (auto a : sat)
            for (auto b : sat)
                if (!in(p == Property::horn ? (a & b) : (a | b))) return false;
        return true;
    case Property::bijunctive:
    case Property::affine:
        for (auto a : sat)
            for (auto b : sat)
                for (auto d : sat)
                    if (!in(p == Property::affine ? (a ^ b ^ d) : ((a & b) | (a & d) | (b & d)))) return false;
        return true;
    }
    return false;
}

// Truth table of an instance, independent of the library's evaluator:
// argument resolution is redone here.
inline std::vector<bool> models_oracle(const Instance& s) {
    const std::size_t n = s.num_vars();
    std::vector<bool> out(std::size_t{1} << n);
    for (std::uint64_t m = 0; m < out.size(); ++m) {
        bool ok = true;
        for (const auto& app : s.applications()) {
            const auto& c = s.constraint_of(app);
            std::uint32_t index = 0;
            for (const auto& arg : app.args) {
                const bool bit = arg.is_constant() ? arg.constant_value() : ((m >> arg.var()) & 1u);
                index = index * 2 + (bit ? 1 : 0);
            }
            if (!c.value(index)) {
                ok = false;
                break;
            }
        }
        out[m] = ok;
    }
    return out;
}

inline std::uint64_t count_oracle(const Instance& s) {
    const auto t = models_oracle(s);
    return std::uint64_t(std::count(t.begin(), t.end(), true));
}

inline bool permutation_iso_oracle(const Instance& s, const Instance& u) {
    const std::size_t n = s.num_vars();
    const auto target = models_oracle(u);
    const auto source = models_oracle(s);
    std::vector<std::uint32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = std::uint32_t(i);
    do {
        bool ok = true;
        for (std::uint64_t m = 0; m < source.size() && ok; ++m) {
            std::uint64_t image = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (m >> i & 1u) image |= std::uint64_t{1} << p[i];
            ok = source[m] == target[image];
        }
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline bool graph_iso_oracle(const GraphInput& g, const GraphInput& h) {
    if (g.n != h.n || g.edges.size() != h.edges.size()) return false;
    std::vector<std::vector<bool>> adj(h.n, std::vector<bool>(h.n));
    for (auto [u, v] : h.edges) adj[u][v] = adj[v][u] = true;
    std::vector<std::uint32_t> p(g.n);
    for (std::size_t i = 0; i < g.n; ++i) p[i] = std::uint32_t(i);
    do {
        bool ok = true;
        for (auto [u, v] : g.edges) ok = ok && adj[p[u]][p[v]];
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline std::vector<GraphInput> all_graphs(std::size_t n) {
    std::vector<Edge> slots;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<GraphInput> out;
    for (std::uint32_t m = 0; m < (1u << slots.size()); ++m) {
        GraphInput g;
        g.n = n;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (m >> k & 1u) g.edges.push_back(slots[k]);
        out.push_back(std::move(g));
    }
    return out;
}

inline bool has_isolated_vertex(const GraphInput& g) {
    std::vector<int> deg(g.n);
    for (auto [u, v] : g.edges) ++deg[u], ++deg[v];
    return std::find(deg.begin(), deg.end(), 0) != deg.end();
}

} // namespace testing
