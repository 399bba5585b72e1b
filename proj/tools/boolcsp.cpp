// boolcsp: command-line front end.
//
// Exit status: 0 decided (either verdict), 1 internal error, 2 input error,
// 3 resource cap, 4 oracle cross-check mismatch. Verdicts are printed as a
// single token on the first line of stdout; diagnostics go to stderr as
// "error: <CODE>: <message>".

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boolcsp/core.hpp"
#include "boolcsp/equiv.hpp"
#include "boolcsp/io.hpp"
#include "boolcsp/iso.hpp"
#include "boolcsp/reductions.hpp"
#include "boolcsp/sat.hpp"

namespace fs = std::filesystem;
using namespace boolcsp;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitOracle = 4;

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::resource: return kExitResource;
    case ErrorCode::oracle_mismatch: return kExitOracle;
    default: return kExitInput;
    }
}

Limits limits_from_environment() {
    Limits limits;
    if (const char* cap = std::getenv("BOOLCSP_COUNT_CAP")) {
        try {
            limits.count_vars = std::stoi(cap);
        } catch (const std::exception&) {
            throw Error(ErrorCode::parse, "BOOLCSP_COUNT_CAP must be an integer");
        }
    }
    return limits;
}

std::string bool_word(bool b) { return b ? "true" : "false"; }

std::string flags_line(const PropertyFlags& f) {
    std::string s;
    for (Property p : kAllProperties) {
        if (!s.empty()) s += " ";
        s += std::string(to_string(p)) + "=" + bool_word(f.get(p));
    }
    return s;
}

std::string witness_line(const Instance& s, const Assignment& a) {
    std::string line = "witness:";
    for (std::size_t i = 0; i < s.num_vars(); ++i) line += " " + s.variables()[i] + "=" + (a[i] ? "1" : "0");
    return line;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(out, text);
        std::cout << "wrote " << out << "\n";
    }
}

void emit_pair(const std::string& out, const Instance& first, const Instance& second) {
    if (out.empty()) {
        std::cout << io::dump({{"first", io::to_json(first)}, {"second", io::to_json(second)}});
        return;
    }
    const fs::path base(out);
    const auto ext = base.has_extension() ? base.extension().string() : std::string(".json");
    const auto stem = base.parent_path() / base.stem();
    emit(stem.string() + ".1" + ext, io::dump(io::to_json(first)));
    emit(stem.string() + ".2" + ext, io::dump(io::to_json(second)));
}

const Constraint& pick_constraint(const Instance& s, const std::string& name, bool want_not_zero_valid,
                                  const char* role) {
    const auto& set = s.constraint_set();
    if (!name.empty()) {
        const auto idx = set.find(name);
        if (!idx) throw Error(ErrorCode::parse, std::string(role) + ": unknown constraint '" + name + "'");
        return set[*idx];
    }
    for (std::uint32_t i = 0; i < set.size(); ++i) {
        const auto& flags = set.report().per_constraint[i];
        if (want_not_zero_valid ? !flags.zero_valid : !flags.one_valid) return set[i];
    }
    throw Error(ErrorCode::precondition, std::string("no constraint qualifies for ") + role);
}

// Brings b onto a's constraint set and, when the universes hold the same
// names (or padding is requested), onto a's variable order.
std::pair<Instance, Instance> iso_universe(const Instance& a, const Instance& b, bool pad) {
    auto same_names = [&] {
        if (a.num_vars() != b.num_vars()) return false;
        for (const auto& v : b.variables())
            if (!a.find_variable(v)) return false;
        return true;
    };
    if (pad || same_names()) return io::align(a, b);
    throw Error(ErrorCode::structure, "instances are over different variable universes (see --pad-variables)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean constraint satisfaction toolkit: classification, satisfiability, equivalence, "
                 "isomorphism and reductions"};
    app.require_subcommand(1);

    std::string file, file_b, out, method = "auto", kind, c0_name, c1_name, constraint_name;
    std::vector<std::string> inputs;
    bool oracle = false, pad = false;

    auto* classify = app.add_subcommand("classify", "classify the constraint set of an instance file");
    classify->add_option("file", file)->required()->check(CLI::ExistingFile);

    auto* sat = app.add_subcommand("sat", "decide satisfiability");
    sat->add_option("file", file)->required()->check(CLI::ExistingFile);
    sat->add_option("--method", method)->check(CLI::IsMember({"auto", "bruteforce"}));

    auto* count = app.add_subcommand("count", "count models over the declared variables");
    count->add_option("file", file)->required()->check(CLI::ExistingFile);

    auto* variant = app.add_subcommand("satvariant", "satisfiable by a model other than the constant ones");
    variant->add_option("file", file)->required()->check(CLI::ExistingFile);
    variant->add_option("--kind", kind)->required()->check(CLI::IsMember({"ne0", "ne1", "ne01"}));

    auto* equiv = app.add_subcommand("equiv", "decide equivalence of two instances");
    equiv->add_option("a", file)->required()->check(CLI::ExistingFile);
    equiv->add_option("b", file_b)->required()->check(CLI::ExistingFile);
    equiv->add_flag("--oracle", oracle, "cross-check with truth-table comparison");

    auto* iso = app.add_subcommand("iso", "decide isomorphism of two instances");
    iso->add_option("a", file)->required()->check(CLI::ExistingFile);
    iso->add_option("b", file_b)->required()->check(CLI::ExistingFile);
    iso->add_flag("--oracle", oracle, "cross-check with the permutation brute force");
    iso->add_flag("--pad-variables", pad, "extend both universes to their union");

    auto* reduce = app.add_subcommand("reduce", "materialize a reduction");
    reduce->add_option("--kind", kind)
        ->required()
        ->check(CLI::IsMember({"unsat-equiv", "ne1-equiv", "ne0-equiv", "ne01-equiv", "gi-or2", "gi-xor3"}));
    reduce->add_option("inputs", inputs)->required()->check(CLI::ExistingFile);
    reduce->add_option("-o,--output", out, "output file; pairs are written to <stem>.1<ext> and <stem>.2<ext>");
    reduce->add_option("--c0", c0_name, "unsat-equiv: constraint that is not 0-valid");
    reduce->add_option("--c1", c1_name, "unsat-equiv: constraint that is not 1-valid");
    reduce->add_option("--constraint", constraint_name, "ne1-equiv/ne0-equiv: the diagonal constraint");

    auto* encode = app.add_subcommand("encode-graph", "write the colored graph of the instance's normal form");
    encode->add_option("file", file)->required()->check(CLI::ExistingFile);
    encode->add_option("-o,--output", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        const Limits limits = limits_from_environment();

        if (*classify) {
            const auto s = io::read_instance(file);
            const auto& report = s.constraint_set().report();
            std::cout << (report.schaefer ? "schaefer" : "not-schaefer") << "\n";
            std::cout << "set: " << flags_line(report.aggregate) << "\n";
            for (std::uint32_t i = 0; i < s.constraint_set().size(); ++i)
                std::cout << "constraint " << s.constraint_set()[i].name() << ": "
                          << flags_line(report.per_constraint[i]) << "\n";
        } else if (*sat) {
            const auto s = io::read_instance(file);
            const auto r = method == "bruteforce" ? solve_bruteforce(s, limits) : solve(s, limits);
            std::cout << (r.satisfiable ? "SAT" : "UNSAT") << "\n";
            std::cout << "method: " << to_string(r.method) << "\n";
            if (r.witness) std::cout << witness_line(s, *r.witness) << "\n";
        } else if (*count) {
            std::cout << count_models(io::read_instance(file), limits) << "\n";
        } else if (*variant) {
            const auto s = io::read_instance(file);
            const bool yes = kind == "ne0"   ? sat_not_all_zero(s, limits)
                             : kind == "ne1" ? sat_not_all_one(s, limits)
                                             : sat_nontrivial(s, limits);
            std::cout << (yes ? "yes" : "no") << "\n";
        } else if (*equiv) {
            const auto [a, b] = io::align(io::read_instance(file), io::read_instance(file_b));
            const bool eq = equivalent(a, b, limits);
            if (oracle && equivalent_bruteforce(a, b, limits) != eq)
                throw Error(ErrorCode::oracle_mismatch, "equivalence verdict disagrees with the truth-table oracle");
            std::cout << (eq ? "equivalent" : "not-equivalent") << "\n";
        } else if (*iso) {
            const auto [a, b] = iso_universe(io::read_instance(file), io::read_instance(file_b), pad);
            const auto verdict = isomorphic(a, b, limits);
            if (oracle && isomorphic_bruteforce(a, b, limits).has_value() != verdict.isomorphic())
                throw Error(ErrorCode::oracle_mismatch, "isomorphism verdict disagrees with the brute-force oracle");
            if (verdict.isomorphic()) {
                std::cout << "isomorphic\n";
                std::cout << "permutation: " << verdict.permutation->cycles(a.variables()) << "\n";
            } else {
                std::cout << "not-isomorphic\n";
                std::cout << "reason: " << to_string(verdict.reason) << "\n";
            }
        } else if (*reduce) {
            auto need_inputs = [&](std::size_t lo, std::size_t hi) {
                if (inputs.size() < lo || inputs.size() > hi)
                    throw Error(ErrorCode::parse, "reduce --kind " + kind + " takes " + std::to_string(lo) +
                                                      (lo == hi ? "" : "-" + std::to_string(hi)) + " input file(s)");
            };
            if (kind == "gi-or2") {
                need_inputs(1, 2);
                const auto g = gi_to_or2(io::read_graph(inputs[0]));
                if (inputs.size() == 1)
                    emit(out, io::dump(io::to_json(g)));
                else
                    emit_pair(out, g, gi_to_or2(io::read_graph(inputs[1])));
            } else if (kind == "gi-xor3") {
                need_inputs(2, 2);
                const auto pair = gi_to_xor3(io::read_graph(inputs[0]), io::read_graph(inputs[1]));
                if (!pair) {
                    std::cout << "not-isomorphic\nreason: pre-check\n";
                } else {
                    emit_pair(out, pair->first, pair->second);
                }
            } else {
                need_inputs(1, 1);
                const auto s = io::read_instance(inputs[0]);
                if (kind == "unsat-equiv") {
                    const auto& c0 = pick_constraint(s, c0_name, true, "C0");
                    const auto& c1 = pick_constraint(s, c1_name, false, "C1");
                    const auto [first, second] = unsat_to_equiv(s, c0, c1);
                    emit_pair(out, first, second);
                } else if (kind == "ne1-equiv") {
                    const auto [first, second] = satne1_to_equiv(s, pick_constraint(s, constraint_name, true, "C"));
                    emit_pair(out, first, second);
                } else if (kind == "ne0-equiv") {
                    const auto [first, second] = satne0_to_equiv(s, pick_constraint(s, constraint_name, false, "C"));
                    emit_pair(out, first, second);
                } else {
                    const auto r = satne01_to_equiv(s);
                    emit_pair(out, r.first, r.second);
                }
            }
        } else if (*encode) {
            emit(out, io::dump(io::to_json(encode_graph(normal_form(io::read_instance(file), limits)))));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: E_INTERNAL: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
