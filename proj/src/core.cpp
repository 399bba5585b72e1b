#include "boolcsp/core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <bitset>
#include <set>

#include "relation.hpp"

namespace boolcsp {

// ---------------------------------------------------------------- Constraint

void Constraint::check_arity(int arity) {
    if (arity < 1 || arity > kMaxArity)
        throw Error(ErrorCode::structure,
                    "constraint arity " + std::to_string(arity) + " outside 1.." + std::to_string(kMaxArity));
}

Constraint::Constraint(std::string name, int arity, std::vector<bool> table)
    : name_(std::move(name)), arity_(arity), table_(std::move(table)) {
    check_arity(arity_);
    if (table_.size() != (std::size_t{1} << arity_))
        throw Error(ErrorCode::structure, "constraint '" + name_ + "': table length " +
                                              std::to_string(table_.size()) + " != 2^" + std::to_string(arity_));
}

Constraint Constraint::from_bits(std::string name, std::string_view bits) {
    int arity = 0;
    while (arity <= kMaxArity && (std::size_t{1} << arity) < bits.size()) ++arity;
    if (bits.empty() || (std::size_t{1} << arity) != bits.size())
        throw Error(ErrorCode::structure, "constraint '" + name + "': table length " +
                                              std::to_string(bits.size()) + " is not a power of two >= 2");
    std::vector<bool> table(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw Error(ErrorCode::parse, "constraint '" + name + "': table must contain only 0/1");
        table[i] = bits[i] == '1';
    }
    return Constraint(std::move(name), arity, std::move(table));
}

std::string Constraint::table_string() const {
    std::string s(table_.size(), '0');
    for (std::size_t i = 0; i < table_.size(); ++i)
        if (table_[i]) s[i] = '1';
    return s;
}

std::vector<std::uint32_t> Constraint::satisfying() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < table_size(); ++i)
        if (table_[i]) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------- properties

std::string_view to_string(Property p) {
    switch (p) {
    case Property::zero_valid: return "zero_valid";
    case Property::one_valid: return "one_valid";
    case Property::horn: return "horn";
    case Property::anti_horn: return "anti_horn";
    case Property::bijunctive: return "bijunctive";
    case Property::affine: return "affine";
    case Property::complementive: return "complementive";
    }
    return "?";
}

std::string_view to_string(SyntacticClass c) {
    switch (c) {
    case SyntacticClass::horn: return "horn";
    case SyntacticClass::anti_horn: return "anti_horn";
    case SyntacticClass::bijunctive: return "bijunctive";
    case SyntacticClass::affine: return "affine";
    }
    return "?";
}

bool PropertyFlags::get(Property p) const {
    switch (p) {
    case Property::zero_valid: return zero_valid;
    case Property::one_valid: return one_valid;
    case Property::horn: return horn;
    case Property::anti_horn: return anti_horn;
    case Property::bijunctive: return bijunctive;
    case Property::affine: return affine;
    case Property::complementive: return complementive;
    }
    return false;
}

void PropertyFlags::set(Property p, bool v) {
    switch (p) {
    case Property::zero_valid: zero_valid = v; break;
    case Property::one_valid: one_valid = v; break;
    case Property::horn: horn = v; break;
    case Property::anti_horn: anti_horn = v; break;
    case Property::bijunctive: bijunctive = v; break;
    case Property::affine: affine = v; break;
    case Property::complementive: complementive = v; break;
    }
}

namespace {

detail::Relation relation_of(const Constraint& c) { return {c.arity(), c.table()}; }

} // namespace

bool classify_constraint(const Constraint& c, Property property) {
    const auto rel = relation_of(c);
    switch (property) {
    case Property::zero_valid: return c.value(0);
    case Property::one_valid: return c.value(c.table_size() - 1);
    case Property::horn: return detail::and_closed(rel);
    case Property::anti_horn: return detail::or_closed(rel);
    case Property::bijunctive: return detail::bijunctive(rel);
    case Property::affine: return detail::affine(rel);
    case Property::complementive: {
        const std::uint32_t full = c.table_size() - 1;
        for (std::uint32_t t = 0; t < c.table_size(); ++t)
            if (c.value(t) && !c.value(t ^ full)) return false;
        return true;
    }
    }
    return false;
}

PropertyFlags classify_all(const Constraint& c) {
    PropertyFlags f;
    for (Property p : kAllProperties) f.set(p, classify_constraint(c, p));
    return f;
}

ClassificationReport classify_set(std::span<const Constraint> constraints) {
    if (constraints.empty()) throw Error(ErrorCode::precondition, "cannot classify an empty constraint set");
    ClassificationReport report;
    for (const auto& c : constraints) {
        report.per_constraint.push_back(classify_all(c));
        for (Property p : kAllProperties)
            report.aggregate.set(p, report.aggregate.get(p) && report.per_constraint.back().get(p));
    }
    const auto& a = report.aggregate;
    report.schaefer = a.horn || a.anti_horn || a.affine || a.bijunctive;
    return report;
}

// ------------------------------------------------------- definability oracle

namespace {

// Truth-table masks (bit t set iff tuple index t satisfies) of every clause
// of the class over k variables.
std::vector<std::uint32_t> clause_family(SyntacticClass cls, int k) {
    const std::uint32_t rows = std::uint32_t{1} << k;
    std::vector<std::uint32_t> out;
    if (cls == SyntacticClass::affine) {
        for (std::uint32_t vars = 0; vars < rows; ++vars)
            for (int rhs = 0; rhs < 2; ++rhs) {
                std::uint32_t mask = 0;
                for (std::uint32_t t = 0; t < rows; ++t)
                    if ((std::popcount(t & vars) & 1) == rhs) mask |= std::uint32_t{1} << t;
                out.push_back(mask);
            }
        return out;
    }
    // each variable: 0 absent, 1 positive, 2 negative
    int total = 1;
    for (int i = 0; i < k; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        std::uint32_t pos = 0, neg = 0;
        for (int i = 0, c = code; i < k; ++i, c /= 3) {
            // variable i sits at tuple bit k-1-i
            const std::uint32_t bit = std::uint32_t{1} << (k - 1 - i);
            if (c % 3 == 1) pos |= bit;
            if (c % 3 == 2) neg |= bit;
        }
        const int npos = std::popcount(pos), nneg = std::popcount(neg);
        const bool allowed = (cls == SyntacticClass::horn && npos <= 1) ||
                             (cls == SyntacticClass::anti_horn && nneg <= 1) ||
                             (cls == SyntacticClass::bijunctive && npos + nneg <= 2);
        if (!allowed) continue;
        std::uint32_t mask = 0;
        for (std::uint32_t t = 0; t < rows; ++t)
            if ((t & pos) || (~t & neg)) mask |= std::uint32_t{1} << t;
        out.push_back(mask);
    }
    return out;
}

// All truth tables expressible as a conjunction of some subset of the family.
std::bitset<256> conjunction_closure(SyntacticClass cls, int k) {
    const std::uint32_t all = (std::uint32_t{1} << (std::uint32_t{1} << k)) - 1;
    std::bitset<256> reachable;
    reachable.set(all); // empty conjunction
    for (std::uint32_t clause : clause_family(cls, k)) {
        auto next = reachable;
        for (std::uint32_t m = 0; m < 256; ++m)
            if (reachable[m]) next.set(m & clause);
        reachable = next;
    }
    return reachable;
}

} // namespace

bool definability_oracle(const Constraint& c, SyntacticClass cls) {
    if (c.arity() > 3)
        throw Error(ErrorCode::unsupported, "definability oracle supports arity <= 3, got " +
                                                std::to_string(c.arity()));
    static const auto tables = [] {
        std::array<std::array<std::bitset<256>, 4>, 4> t;
        for (int cls = 0; cls < 4; ++cls)
            for (int k = 1; k <= 3; ++k) t[cls][k] = conjunction_closure(static_cast<SyntacticClass>(cls), k);
        return t;
    }();
    std::uint32_t mask = 0;
    for (std::uint32_t t = 0; t < c.table_size(); ++t)
        if (c.value(t)) mask |= std::uint32_t{1} << t;
    return tables[static_cast<int>(cls)][c.arity()][mask];
}

// ------------------------------------------------------------- ConstraintSet

ConstraintSet::ConstraintSet(std::vector<Constraint> constraints)
    : constraints_(std::move(constraints)), report_(classify_set(constraints_)) {
    std::set<std::string_view> names;
    for (const auto& c : constraints_)
        if (!names.insert(c.name()).second)
            throw Error(ErrorCode::structure, "duplicate constraint name '" + c.name() + "'");
}

int ConstraintSet::max_arity() const {
    int k = 0;
    for (const auto& c : constraints_) k = std::max(k, c.arity());
    return k;
}

std::optional<std::uint32_t> ConstraintSet::find(std::string_view name) const {
    for (std::uint32_t i = 0; i < constraints_.size(); ++i)
        if (constraints_[i].name() == name) return i;
    return std::nullopt;
}

std::optional<std::uint32_t> ConstraintSet::find(const Constraint& c) const {
    for (std::uint32_t i = 0; i < constraints_.size(); ++i)
        if (constraints_[i] == c) return i;
    return std::nullopt;
}

ConstraintSetPtr make_constraint_set(std::vector<Constraint> constraints) {
    return std::make_shared<const ConstraintSet>(std::move(constraints));
}

// ---------------------------------------------------------------- Assignment

Assignment Assignment::from_mask(std::size_t n, std::uint64_t mask) {
    Assignment a(n);
    for (std::size_t i = 0; i < n; ++i) a.bits[i] = (mask >> i) & 1u;
    return a;
}

std::uint64_t Assignment::to_mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < bits.size() && i < 64; ++i)
        if (bits[i]) m |= std::uint64_t{1} << i;
    return m;
}

// ------------------------------------------------------------------ Instance

Instance::Instance(ConstraintSetPtr constraints, std::vector<std::string> variables,
                   std::vector<Application> applications, bool constants_allowed)
    : constraints_(std::move(constraints)), variables_(std::move(variables)),
      applications_(std::move(applications)), constants_allowed_(constants_allowed) {
    if (!constraints_) throw Error(ErrorCode::structure, "instance without a constraint set");
    std::set<std::string_view> names;
    for (const auto& v : variables_)
        if (!names.insert(v).second) throw Error(ErrorCode::structure, "duplicate variable '" + v + "'");
    for (const auto& app : applications_) {
        if (app.constraint >= constraints_->size())
            throw Error(ErrorCode::structure, "application refers to unknown constraint");
        const auto& c = (*constraints_)[app.constraint];
        if (app.args.size() != static_cast<std::size_t>(c.arity()))
            throw Error(ErrorCode::structure, "application of '" + c.name() + "' has " +
                                                  std::to_string(app.args.size()) + " arguments, expected " +
                                                  std::to_string(c.arity()));
        for (const auto& arg : app.args) {
            if (arg.is_constant() && !constants_allowed_)
                throw Error(ErrorCode::structure, "constant argument in an instance without constants");
            if (arg.is_variable() && arg.var() >= variables_.size())
                throw Error(ErrorCode::structure, "variable index out of range");
        }
    }
    std::sort(applications_.begin(), applications_.end());
    applications_.erase(std::unique(applications_.begin(), applications_.end()), applications_.end());
}

bool Instance::has_constant_arguments() const {
    for (const auto& app : applications_)
        for (const auto& arg : app.args)
            if (arg.is_constant()) return true;
    return false;
}

Instance Instance::with_applications(std::vector<Application> applications) const {
    return Instance(constraints_, variables_, std::move(applications), constants_allowed_);
}

Instance Instance::with_constants_allowed(bool allowed) const {
    return Instance(constraints_, variables_, applications_, allowed);
}

std::optional<std::uint32_t> Instance::find_variable(std::string_view name) const {
    for (std::uint32_t i = 0; i < variables_.size(); ++i)
        if (variables_[i] == name) return i;
    return std::nullopt;
}

std::string Instance::describe(const Application& app) const {
    std::string s = constraint_of(app).name() + "(";
    for (std::size_t i = 0; i < app.args.size(); ++i) {
        if (i) s += ", ";
        const auto& arg = app.args[i];
        s += arg.is_constant() ? (arg.constant_value() ? "$1" : "$0") : variables_[arg.var()];
    }
    return s + ")";
}

bool Instance::operator==(const Instance& other) const {
    return *constraints_ == *other.constraints_ && variables_ == other.variables_ &&
           applications_ == other.applications_ && constants_allowed_ == other.constants_allowed_;
}

// ---------------------------------------------------------------- evaluation

std::uint32_t application_index(const Application& app, const Assignment& a) {
    std::uint32_t index = 0;
    for (const auto& arg : app.args) {
        const bool bit = arg.is_constant() ? arg.constant_value() : a[arg.var()];
        index = (index << 1) | std::uint32_t(bit);
    }
    return index;
}

std::uint32_t application_index(const Application& app, std::uint64_t mask) {
    std::uint32_t index = 0;
    for (const auto& arg : app.args) {
        const bool bit = arg.is_constant() ? arg.constant_value() : (mask >> arg.var()) & 1u;
        index = (index << 1) | std::uint32_t(bit);
    }
    return index;
}

bool eval_application(const Instance& s, const Application& app, const Assignment& a) {
    return s.constraint_of(app).value(application_index(app, a));
}

bool eval_instance(const Instance& s, const Assignment& a) {
    if (a.size() != s.num_vars())
        throw Error(ErrorCode::structure, "assignment size does not match the variable universe");
    for (const auto& app : s.applications())
        if (!eval_application(s, app, a)) return false;
    return true;
}

bool eval_instance_mask(const Instance& s, std::uint64_t mask) {
    for (const auto& app : s.applications())
        if (!s.constraint_of(app).value(application_index(app, mask))) return false;
    return true;
}

} // namespace boolcsp
