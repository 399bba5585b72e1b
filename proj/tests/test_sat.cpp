#include <catch2/catch_amalgamated.hpp>

#include "boolcsp/sat.hpp"
#include "support.hpp"

using namespace testing;

namespace {

bool clause_form_equivalent(const Instance& s, const ClauseForm& f) {
    const auto models = models_oracle(s);
    for (std::uint64_t m = 0; m < models.size(); ++m)
        if (eval_clause_form(f, Assignment::from_mask(s.num_vars(), m)) != models[m]) return false;
    return true;
}

// A random set from one class: 1-3 constraints of arity 1-3.
ConstraintSetPtr random_class_set(Rng& rng, SyntacticClass cls) {
    std::vector<Constraint> cs;
    const int m = 1 + int(rng() % 3);
    for (int i = 0; i < m; ++i)
        cs.push_back(random_closed_constraint(rng, 1 + int(rng() % 3), cls, "R" + std::to_string(i)));
    return make_constraint_set(std::move(cs));
}

} // namespace

TEST_CASE("to_clause_form examples", "[sat]") {
    const auto s = make({OR2()}, {"x", "y"}, {{"OR", {"x", "y"}}});
    const auto f = to_clause_form(s, SyntacticClass::bijunctive);
    const Clause xy{{{0, true}, {1, true}}};
    CHECK(std::find(f.clauses.begin(), f.clauses.end(), xy) != f.clauses.end());
    for (const auto& c : f.clauses) {
        // every emitted clause is implied: no assignment satisfying OR falsifies it
        for (std::uint64_t m = 1; m < 4; ++m) {
            bool sat = false;
            for (auto l : c.literals) sat = sat || (((m >> l.var) & 1u) == l.positive);
            CHECK(sat);
        }
    }
    CHECK(clause_form_equivalent(s, f));

    const auto x = make({XOR3()}, {"x", "y", "z"}, {{"XOR3", {"x", "y", "z"}}});
    const auto fx = to_clause_form(x, SyntacticClass::affine);
    REQUIRE(fx.equations.size() == 1);
    CHECK(fx.equations[0].vars == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(fx.equations[0].rhs);
    CHECK(fx.clauses.empty());

    const auto h = make({IMPL()}, {"x"}, {{"IMPL", {"x", "$0"}}}, true);
    const auto fh = to_clause_form(h, SyntacticClass::horn);
    REQUIRE(fh.clauses.size() == 1);
    CHECK(fh.clauses[0].literals == std::vector<Literal>{{0, false}});

    try {
        to_clause_form(s, SyntacticClass::horn);
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::precondition);
    }
}

TEST_CASE("empty relation yields an unsatisfiable clause form", "[sat]") {
    const auto f = Constraint::from_bits("F", "00");
    const auto s = make({f}, {"x"}, {{"F", {"x"}}});
    for (auto cls : {SyntacticClass::horn, SyntacticClass::anti_horn, SyntacticClass::bijunctive, SyntacticClass::affine})
        CHECK(clause_form_equivalent(s, to_clause_form(s, cls)));
    CHECK_FALSE(solve(s).satisfiable);
}

TEST_CASE("solve examples", "[sat]") {
    const auto s = make({IMPL()}, {"x", "y", "z"}, {{"IMPL", {"x", "y"}}, {"IMPL", {"y", "z"}}});
    const auto r = solve(s);
    CHECK(r.satisfiable);
    CHECK(r.method == Method::valid_shortcut);
    CHECK(*r.witness == assign({0, 0, 0}));

    const auto u = make({OR2()}, {}, {{"OR", {"$0", "$0"}}}, true);
    CHECK_FALSE(solve(u).satisfiable);

    const auto x = make({XOR3()}, {"x", "y", "z", "w"}, {{"XOR3", {"x", "y", "z"}}, {"XOR3", {"x", "y", "w"}}});
    const auto rx = solve(x);
    REQUIRE(rx.satisfiable);
    // XOR3 is 1-valid, so the all-ones shortcut answers first.
    CHECK(rx.method == Method::valid_shortcut);
    CHECK(Solver(x).method() == Method::affine);
    const auto& w = *rx.witness;
    CHECK(w[2] == (w[0] ^ w[1] ^ true));
    CHECK(w[3] == w[2]);
    CHECK(eval_instance(x, w));
    CHECK(eval_instance(x, assign({1, 0, 0, 0})));
}

TEST_CASE("dispatch priority and deterministic witnesses", "[sat]") {
    // EQ is affine and bijunctive and Horn: affine wins.
    CHECK(Solver(make({EQ2()}, {"x", "y"}, {{"EQ", {"x", "y"}}}, false)).method() == Method::affine);
    // OR is bijunctive and anti-Horn.
    CHECK(Solver(make({OR2()}, {"x", "y"}, {})).method() == Method::two_sat);
    // H3 is Horn only.
    CHECK(Solver(make({HORN3()}, {"x", "y", "z"}, {})).method() == Method::horn);
    CHECK(Solver(make({ONE_IN_THREE()}, {"x", "y", "z"}, {})).method() == Method::backtracking);

    // Least model for Horn with constants: x forced, z forced, y free -> 0.
    const auto h = make({HORN3(), IMPL()}, {"x", "y", "z"}, {{"IMPL", {"$1", "x"}}, {"H3", {"x", "x", "z"}}}, true);
    const auto r = solve(h);
    CHECK(r.method == Method::horn);
    CHECK(*r.witness == assign({1, 0, 1}));

    // Greatest model for anti-Horn.
    const auto nand_free = Constraint::from_bits("AH", "10111111"); // x | !y | !z? index 001 false
    const auto ah = make({nand_free}, {"x", "y", "z"}, {{"AH", {"$0", "$0", "x"}}}, true);
    const auto ra = solve(ah);
    CHECK(ra.method == Method::anti_horn);
    CHECK(*ra.witness == assign({0, 1, 1}));

    // Backtracking: lexicographic, value 0 first.
    const auto t = make({ONE_IN_THREE()}, {"x", "y", "z"}, {{"T", {"x", "y", "z"}}});
    const auto rt = solve(t);
    CHECK(rt.method == Method::backtracking);
    CHECK(*rt.witness == assign({0, 0, 1}));
}

TEST_CASE("backtracking cap is a resource error", "[sat]") {
    Limits limits;
    limits.backtrack_vars = 3;
    const auto t = make({ONE_IN_THREE()}, names(4), {{"T", {"x1", "x2", "x3"}}});
    try {
        solve(t, limits);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::resource);
    }
}

TEST_CASE("SAT variants examples", "[sat]") {
    CHECK(sat_not_all_one(make({OR2()}, {"x", "y"}, {{"OR", {"x", "y"}}})));
    CHECK_FALSE(sat_not_all_one(make({AND2()}, {"x", "y"}, {{"AND", {"x", "y"}}})));
    CHECK(sat_not_all_one(make({OR2()}, {"x"}, {})));

    CHECK(sat_not_all_zero(make({OR2()}, {"x", "y"}, {{"OR", {"x", "y"}}})));
    CHECK_FALSE(sat_not_all_zero(make({NOR2()}, {"x", "y"}, {{"NOR", {"x", "y"}}})));
    CHECK(sat_not_all_zero(make({OR2()}, {"x"}, {})));

    CHECK_FALSE(sat_nontrivial(make({EQ2()}, {"x", "y"}, {{"EQ", {"x", "y"}}})));
    CHECK(sat_nontrivial(make({EQ2()}, {"x", "y", "z"}, {{"EQ", {"x", "y"}}})));
    CHECK(sat_nontrivial(make({OR2()}, {"x", "y"}, {{"OR", {"x", "y"}}})));

    const auto one = make({OR2()}, {"x"}, {});
    CHECK_THROWS_AS(sat_nontrivial(one), Error);
    const auto none = make({OR2()}, {}, {});
    CHECK_THROWS_AS(sat_not_all_one(none), Error);
    CHECK_THROWS_AS(sat_not_all_zero(none), Error);
}

TEST_CASE("count_models examples", "[sat]") {
    CHECK(count_models(make({XOR3()}, {"x", "y", "z"}, {{"XOR3", {"x", "y", "z"}}})) == 4);
    CHECK(count_models(make({OR2()}, {"x", "y", "z"}, {{"OR", {"x", "y"}}})) == 6);
    CHECK(count_models(make({OR2()}, {"x", "y"}, {})) == 4);

    Limits limits;
    limits.count_vars = 3;
    try {
        count_models(make({OR2()}, names(4), {}), limits);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::resource);
    }
}

TEST_CASE("solve agrees with enumeration on random instances", "[sat][property]") {
    Rng rng(Catch::getSeed());
    for (auto cls : {SyntacticClass::horn, SyntacticClass::anti_horn, SyntacticClass::bijunctive, SyntacticClass::affine}) {
        for (int trial = 0; trial < 150; ++trial) {
            const auto set = random_class_set(rng, cls);
            const bool constants = trial % 2;
            const auto s = random_instance(rng, set, 1 + rng() % 12, 8, constants);
            reset_solver_stats();
            const auto r = solve(s);
            CHECK(solver_stats().backtrack_runs == 0);
            CHECK(solver_stats().enumerations == 0);
            const bool expected = count_oracle(s) > 0;
            INFO(to_string(cls));
            CHECK(r.satisfiable == expected);
            if (r.witness) CHECK(eval_instance(s, *r.witness));
            CHECK(solve_bruteforce(s).satisfiable == expected);
        }
    }
    for (int trial = 0; trial < 150; ++trial) {
        const auto set = make_constraint_set({ONE_IN_THREE(), random_constraint(rng, 2, "B")});
        const auto s = random_instance(rng, set, 1 + rng() % 10, 8, trial % 2);
        const auto r = solve(s);
        CHECK(r.satisfiable == (count_oracle(s) > 0));
        if (r.witness) CHECK(eval_instance(s, *r.witness));
    }
}

TEST_CASE("clause forms are equivalent to their source", "[sat][property]") {
    Rng rng(Catch::getSeed());
    for (auto cls : {SyntacticClass::horn, SyntacticClass::anti_horn, SyntacticClass::bijunctive, SyntacticClass::affine}) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto s = random_instance(rng, random_class_set(rng, cls), 1 + rng() % 8, 6, trial % 2);
            CHECK(clause_form_equivalent(s, to_clause_form(s, cls)));
        }
    }
}

TEST_CASE("verdict is independent of the applicable method", "[sat][property]") {
    Rng rng(Catch::getSeed());
    // Sets in several classes at once.
    const std::vector<std::vector<Constraint>> families{
        {EQ2()}, {EQ2(), NEQ2()}, {IMPL(), EQ2()}, {Constraint::from_bits("X", "10"), Constraint::from_bits("Y", "01"), EQ2()}};
    const std::pair<Method, SyntacticClass> methods[] = {{Method::affine, SyntacticClass::affine},
                                                         {Method::two_sat, SyntacticClass::bijunctive},
                                                         {Method::horn, SyntacticClass::horn},
                                                         {Method::anti_horn, SyntacticClass::anti_horn}};
    for (const auto& fam : families) {
        const auto set = make_constraint_set(fam);
        const auto& agg = set->report().aggregate;
        for (int trial = 0; trial < 60; ++trial) {
            const auto s = random_instance(rng, set, 1 + rng() % 8, 8, true);
            const bool expected = count_oracle(s) > 0;
            CHECK(Solver(s, Method::backtracking).solve().satisfiable == expected);
            for (auto [m, cls] : methods) {
                const bool applies = agg.get(cls == SyntacticClass::affine       ? Property::affine
                                             : cls == SyntacticClass::bijunctive ? Property::bijunctive
                                             : cls == SyntacticClass::horn       ? Property::horn
                                                                                 : Property::anti_horn);
                if (!applies) {
                    CHECK_THROWS_AS(Solver(s, m), Error);
                    continue;
                }
                const auto r = Solver(s, m).solve();
                CHECK(r.satisfiable == expected);
                if (r.witness) CHECK(eval_instance(s, *r.witness));
            }
        }
    }
}

TEST_CASE("pins agree with substitution", "[sat][property]") {
    Rng rng(Catch::getSeed());
    for (auto cls : {SyntacticClass::horn, SyntacticClass::anti_horn, SyntacticClass::bijunctive, SyntacticClass::affine}) {
        for (int trial = 0; trial < 60; ++trial) {
            const auto s = random_instance(rng, random_class_set(rng, cls), 2 + rng() % 8, 8, false);
            std::vector<Pin> pins;
            for (std::uint32_t v = 0; v < s.num_vars(); ++v)
                if (rng() % 3 == 0) pins.push_back({v, bool(rng() % 2)});
            const auto sub = substitute(s, pins);
            CHECK(sub.num_vars() == s.num_vars());
            const auto r = Solver(s).solve(pins);
            CHECK(r.satisfiable == (count_oracle(sub) > 0));
            CHECK(solve(sub).satisfiable == r.satisfiable);
            if (r.witness) {
                CHECK(eval_instance(s, *r.witness));
                for (auto p : pins) CHECK((*r.witness)[p.var] == p.value);
            }
        }
    }
}

TEST_CASE("variants agree with enumeration", "[sat][property]") {
    Rng rng(Catch::getSeed());
    const std::vector<std::vector<Constraint>> families{
        {OR2()}, {IMPL(), EQ2()}, {XOR3(), NEQ2()}, {ONE_IN_THREE(), OR2()}, {HORN3(), NAND2()}, {NAE3()}};
    for (const auto& fam : families) {
        const auto set = make_constraint_set(fam);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n = 2 + rng() % 7;
            const auto s = random_instance(rng, set, n, 6, false);
            const auto models = models_oracle(s);
            const std::uint64_t ones = (std::uint64_t{1} << n) - 1;
            bool ne1 = false, ne0 = false, ne01 = false;
            for (std::uint64_t m = 0; m < models.size(); ++m) {
                if (!models[m]) continue;
                ne1 = ne1 || m != ones;
                ne0 = ne0 || m != 0;
                ne01 = ne01 || (m != 0 && m != ones);
            }
            CHECK(sat_not_all_one(s) == ne1);
            CHECK(sat_not_all_zero(s) == ne0);
            CHECK(sat_nontrivial(s) == ne01);
        }
    }
}

TEST_CASE("counts are invariant under permutation", "[sat][property]") {
    Rng rng(Catch::getSeed());
    const auto set = make_constraint_set({OR2(), XOR3(), ONE_IN_THREE()});
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_instance(rng, set, 1 + rng() % 10, 8, trial % 2);
        const auto c = count_models(s);
        CHECK(c == count_oracle(s));
        CHECK(count_models(apply_permutation(s, random_permutation(rng, s.num_vars()))) == c);
        const auto table = model_table(s);
        CHECK(std::uint64_t(std::count(table.begin(), table.end(), true)) == c);
    }
}
