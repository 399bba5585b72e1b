#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boolcsp/error.hpp"

namespace boolcsp {

inline constexpr int kMaxArity = 16;

// A Boolean function {0,1}^k -> {0,1} stored as a truth table.
//
// Table index convention: argument 0 is the most significant bit, so for
// arity k the tuple (s_0, ..., s_{k-1}) lives at index sum s_j << (k-1-j).
// The textual form "0111" lists the table in increasing index order.
class Constraint {
public:
    Constraint(std::string name, int arity, std::vector<bool> table);

    /// Parses a truth-table string such as "0111"; its length fixes the arity.
    static Constraint from_bits(std::string name, std::string_view bits);

    template <class Pred>
    static Constraint from_predicate(std::string name, int arity, Pred&& pred) {
        check_arity(arity);
        std::vector<bool> table(std::size_t{1} << arity);
        for (std::uint32_t i = 0; i < table.size(); ++i) table[i] = pred(i);
        return Constraint(std::move(name), arity, std::move(table));
    }

    const std::string& name() const { return name_; }
    int arity() const { return arity_; }
    std::uint32_t table_size() const { return std::uint32_t{1} << arity_; }
    bool value(std::uint32_t index) const { return table_[index]; }
    const std::vector<bool>& table() const { return table_; }
    std::string table_string() const;

    /// Indices of satisfying tuples, ascending.
    std::vector<std::uint32_t> satisfying() const;

    bool operator==(const Constraint&) const = default;

    static void check_arity(int arity);

private:
    std::string name_;
    int arity_;
    std::vector<bool> table_;
};

/// Bit j (0-based argument position) of tuple index `index` of arity k.
constexpr bool tuple_bit(std::uint32_t index, int arity, int position) {
    return (index >> (arity - 1 - position)) & 1u;
}

// Either a variable of the instance universe or a Boolean constant.
// Encoded as one integer: 0 and 1 are the constants, 2 + i is variable i.
// The order (constants first, then variables by index) is the canonical
// argument order used for sorting applications.
class Argument {
public:
    static constexpr Argument variable(std::uint32_t index) { return Argument(index + 2); }
    static constexpr Argument constant(bool value) { return Argument(value ? 1 : 0); }
    static constexpr Argument from_code(std::uint32_t code) { return Argument(code); }

    constexpr bool is_constant() const { return code_ < 2; }
    constexpr bool is_variable() const { return code_ >= 2; }
    constexpr bool constant_value() const { return code_ == 1; }
    constexpr std::uint32_t var() const { return code_ - 2; }
    constexpr std::uint32_t code() const { return code_; }

    constexpr auto operator<=>(const Argument&) const = default;

private:
    constexpr explicit Argument(std::uint32_t code) : code_(code) {}
    std::uint32_t code_;
};

// A constraint applied to a tuple of arguments. `constraint` indexes the
// instance's constraint set. Variables may repeat.
struct Application {
    std::uint32_t constraint = 0;
    std::vector<Argument> args;

    auto operator<=>(const Application&) const = default;
    bool operator==(const Application&) const = default;
};

enum class Property { zero_valid, one_valid, horn, anti_horn, bijunctive, affine, complementive };

inline constexpr Property kAllProperties[] = {
    Property::zero_valid, Property::one_valid,  Property::horn,         Property::anti_horn,
    Property::bijunctive, Property::affine,     Property::complementive};

std::string_view to_string(Property p);

struct PropertyFlags {
    bool zero_valid = true;
    bool one_valid = true;
    bool horn = true;
    bool anti_horn = true;
    bool bijunctive = true;
    bool affine = true;
    bool complementive = true;

    bool get(Property p) const;
    void set(Property p, bool v);
    bool operator==(const PropertyFlags&) const = default;
};

struct ClassificationReport {
    std::vector<PropertyFlags> per_constraint;
    PropertyFlags aggregate;
    bool schaefer = false;
};

bool classify_constraint(const Constraint& c, Property property);
PropertyFlags classify_all(const Constraint& c);

/// Throws Error(precondition) on an empty list.
ClassificationReport classify_set(std::span<const Constraint> constraints);

enum class SyntacticClass { horn, anti_horn, bijunctive, affine };

std::string_view to_string(SyntacticClass c);

/// Decides membership in a syntactic CNF class by enumerating every
/// conjunction of clauses from the class over the constraint's own
/// variables. Only arities 1..3 are supported.
bool definability_oracle(const Constraint& c, SyntacticClass cls);

// The finite constraint set of an instance, classified once on construction.
class ConstraintSet {
public:
    explicit ConstraintSet(std::vector<Constraint> constraints);

    std::size_t size() const { return constraints_.size(); }
    const Constraint& operator[](std::size_t i) const { return constraints_[i]; }
    std::span<const Constraint> constraints() const { return constraints_; }
    const ClassificationReport& report() const { return report_; }
    int max_arity() const;

    std::optional<std::uint32_t> find(std::string_view name) const;
    std::optional<std::uint32_t> find(const Constraint& c) const;

    bool operator==(const ConstraintSet& other) const { return constraints_ == other.constraints_; }

private:
    std::vector<Constraint> constraints_;
    ClassificationReport report_;
};

using ConstraintSetPtr = std::shared_ptr<const ConstraintSet>;

ConstraintSetPtr make_constraint_set(std::vector<Constraint> constraints);

// A total assignment to the instance universe.
struct Assignment {
    std::vector<std::uint8_t> bits;

    Assignment() = default;
    explicit Assignment(std::size_t n, bool value = false) : bits(n, value ? 1 : 0) {}

    /// Variable i takes bit i of `mask`.
    static Assignment from_mask(std::size_t n, std::uint64_t mask);
    std::uint64_t to_mask() const;

    std::size_t size() const { return bits.size(); }
    bool operator[](std::size_t i) const { return bits[i] != 0; }
    void set(std::size_t i, bool v) { bits[i] = v ? 1 : 0; }
    bool operator==(const Assignment&) const = default;
};

// A set of applications over a declared, ordered variable universe.
// Applications are kept sorted and duplicate-free.
class Instance {
public:
    Instance(ConstraintSetPtr constraints, std::vector<std::string> variables,
             std::vector<Application> applications, bool constants_allowed);

    const ConstraintSet& constraint_set() const { return *constraints_; }
    const ConstraintSetPtr& constraint_set_ptr() const { return constraints_; }
    const std::vector<std::string>& variables() const { return variables_; }
    std::size_t num_vars() const { return variables_.size(); }
    const std::vector<Application>& applications() const { return applications_; }
    bool constants_allowed() const { return constants_allowed_; }
    bool has_constant_arguments() const;

    const Constraint& constraint_of(const Application& app) const {
        return (*constraints_)[app.constraint];
    }

    /// Copy with different applications, same set and universe.
    Instance with_applications(std::vector<Application> applications) const;
    Instance with_constants_allowed(bool allowed) const;

    std::optional<std::uint32_t> find_variable(std::string_view name) const;

    /// Renders an application as e.g. "OR(x, $1)".
    std::string describe(const Application& app) const;

    bool operator==(const Instance& other) const;

private:
    ConstraintSetPtr constraints_;
    std::vector<std::string> variables_;
    std::vector<Application> applications_;
    bool constants_allowed_;
};

/// Table index of `app` under `a`.
std::uint32_t application_index(const Application& app, const Assignment& a);

bool eval_application(const Instance& s, const Application& app, const Assignment& a);
bool eval_instance(const Instance& s, const Assignment& a);

/// Index of `app` when variable i takes bit i of `mask`.
std::uint32_t application_index(const Application& app, std::uint64_t mask);
bool eval_instance_mask(const Instance& s, std::uint64_t mask);

} // namespace boolcsp
