#include "boolcsp/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace boolcsp::io {

namespace {

template <class T>
T field(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorCode::parse, std::string(what) + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse, std::string(what) + ": field '" + key + "' has the wrong type");
    }
}

Instance parse_instance(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::parse, "instance: expected a JSON object");
    std::vector<Constraint> constraints;
    for (const auto& cj : field<json>(j, "constraints", "instance")) {
        const auto name = field<std::string>(cj, "name", "constraint");
        const auto table = field<std::string>(cj, "table", "constraint");
        auto c = Constraint::from_bits(name, table);
        if (cj.contains("arity") && field<int>(cj, "arity", "constraint") != c.arity())
            throw Error(ErrorCode::parse, "constraint '" + name + "': table length does not match arity");
        constraints.push_back(std::move(c));
    }
    if (constraints.empty()) throw Error(ErrorCode::parse, "instance: constraint list is empty");
    auto set = make_constraint_set(std::move(constraints));
    auto variables = field<std::vector<std::string>>(j, "variables", "instance");
    for (const auto& v : variables)
        if (v.empty() || v[0] == '$') throw Error(ErrorCode::parse, "variable names must not be empty or start with '$'");
    const bool constants = j.contains("constants_allowed") ? field<bool>(j, "constants_allowed", "instance") : false;

    std::vector<Application> apps;
    const Instance probe(set, variables, {}, constants);
    for (const auto& aj : field<json>(j, "applications", "instance")) {
        const auto name = field<std::string>(aj, "constraint", "application");
        const auto ci = set->find(name);
        if (!ci) throw Error(ErrorCode::parse, "application of undeclared constraint '" + name + "'");
        Application app{*ci, {}};
        for (const auto& token : field<std::vector<std::string>>(aj, "args", "application")) {
            if (token == "$0" || token == "$1") {
                app.args.push_back(Argument::constant(token == "$1"));
            } else if (auto v = probe.find_variable(token)) {
                app.args.push_back(Argument::variable(*v));
            } else {
                throw Error(ErrorCode::parse, "application uses undeclared variable '" + token + "'");
            }
        }
        apps.push_back(std::move(app));
    }
    return Instance(std::move(set), std::move(variables), std::move(apps), constants);
}

} // namespace

Instance instance_from_json(const json& j) {
    try {
        return parse_instance(j);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::structure) throw Error(ErrorCode::parse, e.what());
        throw;
    }
}

json to_json(const Instance& s) {
    json j;
    j["constraints"] = json::array();
    for (const auto& c : s.constraint_set().constraints())
        j["constraints"].push_back({{"name", c.name()}, {"arity", c.arity()}, {"table", c.table_string()}});
    j["variables"] = s.variables();
    j["constants_allowed"] = s.constants_allowed();
    j["applications"] = json::array();
    for (const auto& app : s.applications()) {
        json args = json::array();
        for (const auto& arg : app.args)
            args.push_back(arg.is_constant() ? (arg.constant_value() ? "$1" : "$0") : s.variables()[arg.var()]);
        j["applications"].push_back({{"constraint", s.constraint_of(app).name()}, {"args", args}});
    }
    return j;
}

GraphInput graph_from_json(const json& j) {
    GraphInput g;
    g.n = field<std::size_t>(j, "n", "graph");
    g.edges = field<std::vector<Edge>>(j, "edges", "graph");
    try {
        g.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::parse, std::string("graph: ") + e.what());
    }
    return g;
}

json to_json(const GraphInput& g) { return {{"n", g.n}, {"edges", g.edges}}; }

ColoredGraph colored_graph_from_json(const json& j) {
    const auto n = field<std::size_t>(j, "n", "colored graph");
    auto edges = field<std::vector<Edge>>(j, "edges", "colored graph");
    auto colors = field<std::vector<std::uint32_t>>(j, "colors", "colored graph");
    try {
        return ColoredGraph(n, std::move(edges), std::move(colors));
    } catch (const Error& e) {
        throw Error(ErrorCode::parse, std::string("colored graph: ") + e.what());
    }
}

json to_json(const ColoredGraph& g) { return {{"n", g.size()}, {"edges", g.edges()}, {"colors", g.colors()}}; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse, "cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse, path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::parse, "cannot write '" + path.string() + "'");
    out << text;
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_json_file(path)); }

GraphInput read_graph(const std::filesystem::path& path) { return graph_from_json(read_json_file(path)); }

namespace {

// Maps every application of `s` onto `set` and `vars` by name.
Instance remap(const Instance& s, const ConstraintSetPtr& set, const std::vector<std::string>& vars) {
    std::vector<Application> apps;
    for (const auto& app : s.applications()) {
        Application mapped{*set->find(s.constraint_of(app).name()), {}};
        for (const auto& arg : app.args) {
            if (arg.is_constant()) {
                mapped.args.push_back(arg);
            } else {
                const auto& name = s.variables()[arg.var()];
                const auto pos = std::find(vars.begin(), vars.end(), name) - vars.begin();
                mapped.args.push_back(Argument::variable(static_cast<std::uint32_t>(pos)));
            }
        }
        apps.push_back(std::move(mapped));
    }
    return Instance(set, vars, std::move(apps), s.constants_allowed());
}

ConstraintSetPtr merged_set(const Instance& a, const Instance& b) {
    std::vector<Constraint> merged(a.constraint_set().constraints().begin(), a.constraint_set().constraints().end());
    for (const auto& c : b.constraint_set().constraints()) {
        const auto it = std::find_if(merged.begin(), merged.end(), [&](const Constraint& m) { return m.name() == c.name(); });
        if (it == merged.end()) {
            merged.push_back(c);
        } else if (!(*it == c)) {
            throw Error(ErrorCode::parse, "constraint '" + c.name() + "' is declared with two different tables");
        }
    }
    return make_constraint_set(std::move(merged));
}

} // namespace

std::pair<Instance, Instance> align(const Instance& a, const Instance& b) {
    const auto set = merged_set(a, b);
    auto vars = a.variables();
    for (const auto& v : b.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    return {remap(a, set, vars), remap(b, set, vars)};
}

std::pair<Instance, Instance> align_constraints(const Instance& a, const Instance& b) {
    const auto set = merged_set(a, b);
    return {remap(a, set, a.variables()), remap(b, set, b.variables())};
}

} // namespace boolcsp::io
