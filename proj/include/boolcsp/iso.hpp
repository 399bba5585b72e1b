#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolcsp/core.hpp"
#include "boolcsp/graph.hpp"

namespace boolcsp {

// A bijection on the variable universe: variable i is renamed to images()[i].
class Permutation {
public:
    explicit Permutation(std::vector<std::uint32_t> images);
    static Permutation identity(std::size_t n);

    std::size_t size() const { return images_.size(); }
    std::uint32_t operator()(std::uint32_t i) const { return images_[i]; }
    const std::vector<std::uint32_t>& images() const { return images_; }
    Permutation inverse() const;
    bool is_identity() const;

    /// Cycle notation over variable names, e.g. "(x z)"; "()" for identity.
    std::string cycles(const std::vector<std::string>& names) const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::uint32_t> images_;
};

/// Renames every variable x_i to x_{pi(i)}; constants are untouched.
Instance apply_permutation(const Instance& s, const Permutation& pi);

struct NormalForm {
    Instance closure; // every application over X (and constants) implied by source
    Instance source;
};

/// Every application of every constraint over argument tuples drawn from X,
/// plus {0, 1} when `with_constants`, that the instance implies; enumerated
/// in canonical order. Throws Error(resource) past limits.closure_tuples.
NormalForm normal_form(const Instance& s, bool with_constants, const Limits& limits = {});
NormalForm normal_form(const Instance& s, const Limits& limits = {});

/// Vertex-colored encoding of a set of applications. Vertex layout: 0 and 1
/// are the constants, 2..2+|X|-1 the variables, then one vertex per argument
/// slot (application-major), then one vertex per application.
ColoredGraph encode_graph(const Instance& p);
ColoredGraph encode_graph(const NormalForm& p);

enum class IsoReason { none, count_filter, vcgi, search_exhausted };

std::string_view to_string(IsoReason r);

struct IsoVerdict {
    std::optional<Permutation> permutation; // present iff isomorphic
    IsoReason reason = IsoReason::none;     // why not, when absent
    bool used_graph_pipeline = false;

    bool isomorphic() const { return permutation.has_value(); }
};

/// Is there a permutation pi with apply_permutation(s, pi) equivalent to u?
/// Schaefer sets go through normal forms and one VCGI query; other sets use
/// a permutation search. Every yes-verdict is re-verified.
IsoVerdict isomorphic(const Instance& s, const Instance& u, const Limits& limits = {});

/// First permutation in lexicographic order of images whose image of s has
/// exactly u's models; at most limits.iso_bruteforce_vars variables.
std::optional<Permutation> isomorphic_bruteforce(const Instance& s, const Instance& u, const Limits& limits = {});

} // namespace boolcsp
