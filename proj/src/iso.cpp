#include "boolcsp/iso.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "boolcsp/equiv.hpp"
#include "boolcsp/sat.hpp"

namespace boolcsp {

// --------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
        if (v >= images_.size() || seen[v]) throw Error(ErrorCode::structure, "not a permutation");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::uint32_t> images(n);
    std::iota(images.begin(), images.end(), 0u);
    return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(images_.size());
    for (std::uint32_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (std::uint32_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

std::string Permutation::cycles(const std::vector<std::string>& names) const {
    std::string out;
    std::vector<bool> done(images_.size(), false);
    for (std::uint32_t start = 0; start < images_.size(); ++start) {
        if (done[start] || images_[start] == start) continue;
        out += "(";
        for (std::uint32_t v = start; !done[v]; v = images_[v]) {
            if (v != start) out += " ";
            out += names[v];
            done[v] = true;
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

Instance apply_permutation(const Instance& s, const Permutation& pi) {
    if (pi.size() != s.num_vars())
        throw Error(ErrorCode::structure, "permutation size does not match the variable universe");
    auto apps = s.applications();
    for (auto& app : apps)
        for (auto& arg : app.args)
            if (arg.is_variable()) arg = Argument::variable(pi(arg.var()));
    return s.with_applications(std::move(apps));
}

// --------------------------------------------------------------- normal form

NormalForm normal_form(const Instance& s, bool with_constants, const Limits& limits) {
    if (!with_constants && s.has_constant_arguments())
        throw Error(ErrorCode::precondition, "normal form without constants of an instance that uses constants");
    std::vector<std::uint32_t> domain;
    if (with_constants) domain = {0, 1};
    for (std::uint32_t i = 0; i < s.num_vars(); ++i) domain.push_back(Argument::variable(i).code());

    const auto& set = s.constraint_set();
    std::size_t total = 0;
    for (const auto& c : set.constraints()) {
        std::size_t tuples = 1;
        for (int j = 0; j < c.arity(); ++j) {
            tuples *= domain.size();
            if (tuples > limits.closure_tuples) break;
        }
        total += tuples;
        if (total > limits.closure_tuples)
            throw Error(ErrorCode::resource, "normal form would examine more than " +
                                                 std::to_string(limits.closure_tuples) + " applications");
    }

    const Solver solver(s, limits);
    std::vector<Application> closure;
    if (!domain.empty()) {
        for (std::uint32_t ci = 0; ci < set.size(); ++ci) {
            const int k = set[ci].arity();
            std::vector<std::size_t> digit(k, 0);
            Application app{ci, std::vector<Argument>(k, Argument::from_code(domain[0]))};
            while (true) {
                if (implies(solver, app)) closure.push_back(app);
                int pos = k - 1;
                while (pos >= 0 && ++digit[pos] == domain.size()) {
                    digit[pos] = 0;
                    app.args[pos] = Argument::from_code(domain[0]);
                    --pos;
                }
                if (pos < 0) break;
                app.args[pos] = Argument::from_code(domain[digit[pos]]);
            }
        }
    }
    Instance closed(s.constraint_set_ptr(), s.variables(), std::move(closure), with_constants);
    return {std::move(closed), s};
}

NormalForm normal_form(const Instance& s, const Limits& limits) {
    return normal_form(s, s.constants_allowed(), limits);
}

// ------------------------------------------------------------ graph encoding

ColoredGraph encode_graph(const Instance& p) {
    const auto n = static_cast<std::uint32_t>(p.num_vars());
    const auto m = static_cast<std::uint32_t>(p.constraint_set().size());
    std::vector<std::uint32_t> colors = {0, 1};
    colors.resize(2 + n, 2);
    std::vector<Edge> edges;
    const auto& apps = p.applications();
    std::uint32_t slot_count = 0;
    for (const auto& app : apps) slot_count += static_cast<std::uint32_t>(app.args.size());
    const std::uint32_t first_slot = 2 + n;
    const std::uint32_t first_app = first_slot + slot_count;

    std::uint32_t slot = first_slot;
    for (std::uint32_t r = 0; r < apps.size(); ++r) {
        for (std::uint32_t j = 0; j < apps[r].args.size(); ++j, ++slot) {
            colors.push_back(2 + m + (j + 1));
            edges.push_back({apps[r].args[j].code(), slot});
            edges.push_back({slot, first_app + r});
        }
    }
    for (const auto& app : apps) colors.push_back(2 + (app.constraint + 1));
    const std::size_t vertices = colors.size();
    return ColoredGraph(vertices, std::move(edges), std::move(colors));
}

ColoredGraph encode_graph(const NormalForm& p) { return encode_graph(p.closure); }

// --------------------------------------------------------------- isomorphism

std::string_view to_string(IsoReason r) {
    switch (r) {
    case IsoReason::none: return "none";
    case IsoReason::count_filter: return "count-filter";
    case IsoReason::vcgi: return "vcgi";
    case IsoReason::search_exhausted: return "search-exhausted";
    }
    return "?";
}

namespace {

// Visits permutations of {0..n-1} in lexicographic order until `visit` returns true.
template <class F>
std::optional<Permutation> first_permutation(std::size_t n, F&& visit) {
    std::vector<std::uint32_t> images(n);
    std::iota(images.begin(), images.end(), 0u);
    do {
        Permutation pi(images);
        if (visit(pi)) return pi;
    } while (std::next_permutation(images.begin(), images.end()));
    return std::nullopt;
}

} // namespace

IsoVerdict isomorphic(const Instance& s, const Instance& u, const Limits& limits) {
    require_same_universe(s, u);
    IsoVerdict verdict;
    const std::size_t n = s.num_vars();

    // model counts are an isomorphism invariant; skipped past the cap
    if (n <= static_cast<std::size_t>(limits.count_vars) && count_models(s, limits) != count_models(u, limits)) {
        verdict.reason = IsoReason::count_filter;
        return verdict;
    }

    if (s.constraint_set().report().schaefer) {
        verdict.used_graph_pipeline = true;
        const bool with_constants = s.constants_allowed() || u.constants_allowed();
        const auto gs = encode_graph(normal_form(s, with_constants, limits));
        const auto gu = encode_graph(normal_form(u, with_constants, limits));
        const auto mapping = vcgi(gs, gu);
        if (!mapping) {
            verdict.reason = IsoReason::vcgi;
            return verdict;
        }
        std::vector<std::uint32_t> images(n);
        for (std::uint32_t i = 0; i < n; ++i) images[i] = (*mapping)[2 + i] - 2;
        Permutation pi(std::move(images));
        if (!equivalent(apply_permutation(s, pi), u, limits))
            throw std::logic_error("graph isomorphism did not translate into an instance isomorphism");
        verdict.permutation = std::move(pi);
        return verdict;
    }

    if (n > static_cast<std::size_t>(limits.permutation_search_vars))
        throw Error(ErrorCode::resource, "permutation search over " + std::to_string(n) +
                                             " variables exceeds cap " +
                                             std::to_string(limits.permutation_search_vars));
    verdict.permutation = first_permutation(
        n, [&](const Permutation& pi) { return equivalent(apply_permutation(s, pi), u, limits); });
    if (!verdict.permutation) verdict.reason = IsoReason::search_exhausted;
    return verdict;
}

std::optional<Permutation> isomorphic_bruteforce(const Instance& s, const Instance& u, const Limits& limits) {
    require_same_universe(s, u);
    const std::size_t n = s.num_vars();
    if (n > static_cast<std::size_t>(limits.iso_bruteforce_vars))
        throw Error(ErrorCode::resource, "brute-force isomorphism over " + std::to_string(n) +
                                             " variables exceeds cap " +
                                             std::to_string(limits.iso_bruteforce_vars));
    const auto table_s = model_table(s, limits);
    const auto table_u = model_table(u, limits);
    std::vector<std::uint64_t> models_s;
    for (std::uint64_t m = 0; m < table_s.size(); ++m)
        if (table_s[m]) models_s.push_back(m);
    const auto count_u = static_cast<std::size_t>(std::count(table_u.begin(), table_u.end(), true));
    if (models_s.size() != count_u) return std::nullopt;

    // I satisfies pi(S) iff the assignment x_i -> I(pi(x_i)) satisfies S, so
    // each model m of S maps to the model with bit pi(i) equal to bit i of m.
    return first_permutation(n, [&](const Permutation& pi) {
        for (std::uint64_t m : models_s) {
            std::uint64_t image = 0;
            for (std::uint32_t i = 0; i < n; ++i)
                if ((m >> i) & 1u) image |= std::uint64_t{1} << pi(i);
            if (!table_u[image]) return false;
        }
        return true;
    });
}

} // namespace boolcsp
