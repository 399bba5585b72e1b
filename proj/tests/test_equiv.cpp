#include <catch2/catch_amalgamated.hpp>

#include "boolcsp/equiv.hpp"
#include "support.hpp"

using namespace testing;

namespace {

bool equivalent_oracle(const Instance& s, const Instance& u) { return models_oracle(s) == models_oracle(u); }

} // namespace

TEST_CASE("implies examples", "[equiv]") {
    const auto set = make_constraint_set({OR2(), IMPL()});
    const std::vector<std::string> xyz{"x", "y", "z"};
    const auto x = Argument::variable(0), y = Argument::variable(1), z = Argument::variable(2);

    const Instance s(set, xyz, {{0, {x, y}}, {0, {x, x}}}, false);
    CHECK(implies(s, {0, {x, z}}));

    const Instance t(set, xyz, {{0, {x, y}}}, false);
    CHECK_FALSE(implies(t, {0, {x, x}}));

    const Instance empty(set, xyz, {}, false);
    CHECK(implies(empty, {1, {x, x}}));
}

TEST_CASE("equivalent examples", "[equiv]") {
    const auto a = make({OR2()}, {"x", "y"}, {{"OR", {"x", "y"}}});
    const auto b = make({OR2()}, {"x", "y"}, {{"OR", {"y", "x"}}});
    CHECK(equivalent(a, b));
    CHECK(equivalent_bruteforce(a, b));

    const auto c = make({OR2()}, {"x", "y"}, {{"OR", {"x", "y"}}, {"OR", {"x", "x"}}});
    const auto d = make({OR2()}, {"x", "y"}, {{"OR", {"x", "x"}}});
    CHECK(equivalent(c, d));
    CHECK(equivalent_bruteforce(c, d));

    const auto e = make({ONE_IN_THREE()}, {"x", "y"}, {{"T", {"x", "x", "x"}}});
    const auto f = make({ONE_IN_THREE()}, {"x", "y"}, {{"T", {"y", "y", "y"}}});
    CHECK(equivalent(e, f));
    CHECK(equivalent_bruteforce(e, f));

    const auto empty = make({OR2()}, {"x", "y"}, {});
    CHECK(equivalent_bruteforce(empty, empty));
    CHECK(equivalent(empty, empty));
    CHECK_FALSE(equivalent_bruteforce(a, empty));
    CHECK_FALSE(equivalent(a, empty));
}

TEST_CASE("mismatched universes are structural errors", "[equiv]") {
    const auto a = make({OR2()}, {"x", "y"}, {});
    const auto b = make({OR2()}, {"x", "z"}, {});
    const auto c = make({IMPL()}, {"x", "y"}, {});
    for (const auto* other : {&b, &c}) {
        try {
            equivalent(a, *other);
            FAIL("expected a structural error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::structure);
        }
    }
    // Same constraints in separately built sets are the same universe.
    CHECK(equivalent(a, make({OR2()}, {"x", "y"}, {})));
}

TEST_CASE("equivalent_bruteforce cap", "[equiv]") {
    Limits limits;
    limits.bruteforce_equiv_vars = 4;
    const auto a = make({OR2()}, names(5), {});
    try {
        equivalent_bruteforce(a, a, limits);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::resource);
    }
}

TEST_CASE("equivalent agrees with truth tables", "[equiv][property]") {
    Rng rng(Catch::getSeed());
    const std::vector<std::vector<Constraint>> families{
        {OR2()}, {IMPL(), NAND2()}, {XOR3(), EQ2()}, {HORN3()}, {ONE_IN_THREE()}, {NAE3(), OR2()}};
    for (const auto& fam : families) {
        const auto set = make_constraint_set(fam);
        for (int trial = 0; trial < 120; ++trial) {
            const std::size_t n = 1 + rng() % (set->report().schaefer ? 12 : 8);
            const bool constants = trial % 3 == 0;
            auto s = random_instance(rng, set, n, 6, constants);
            // Bias toward equivalent pairs: U = S plus some implied applications.
            auto u = random_instance(rng, set, n, 6, constants);
            if (trial % 2) {
                auto apps = s.applications();
                for (int k = 0; k < 4; ++k) {
                    const auto a = random_application(rng, *set, n, constants);
                    if (implies(s, a)) apps.push_back(a);
                }
                u = s.with_applications(apps);
            }
            const bool expected = equivalent_oracle(s, u);
            CHECK(equivalent(s, u) == expected);
            CHECK(equivalent_bruteforce(s, u) == expected);
            if (expected) CHECK(count_models(s) == count_models(u));
        }
    }
}

TEST_CASE("implies issues at most 2^k solver queries", "[equiv][property]") {
    Rng rng(Catch::getSeed());
    const auto set = make_constraint_set({OR2(), XOR3(), ONE_IN_THREE(), Constraint::from_bits("U", "01")});
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = random_instance(rng, set, 1 + rng() % 8, 6, trial % 2);
        const auto a = random_application(rng, *set, s.num_vars(), s.constants_allowed());
        const Solver solver(s);
        reset_solver_stats();
        const bool got = implies(solver, a);
        CHECK(solver_stats().solve_calls <= (std::uint64_t{1} << s.constraint_set()[a.constraint].arity()));

        bool expected = true;
        const auto models = models_oracle(s);
        for (std::uint64_t m = 0; m < models.size(); ++m)
            if (models[m] && !s.constraint_of(a).value(application_index(a, m))) expected = false;
        CHECK(got == expected);
    }
}

TEST_CASE("equivalence is an equivalence relation", "[equiv][property]") {
    Rng rng(Catch::getSeed());
    const auto set = make_constraint_set({IMPL(), EQ2()});
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        const auto a = random_instance(rng, set, n, 4, false);
        const auto b = random_instance(rng, set, n, 4, false);
        const auto c = random_instance(rng, set, n, 4, false);
        CHECK(equivalent(a, a));
        CHECK(equivalent(a, b) == equivalent(b, a));
        if (equivalent(a, b) && equivalent(b, c)) CHECK(equivalent(a, c));
    }
}
