#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "expd/verify.hpp"

using namespace expd;

TEST_CASE("generator is deterministic and respects its bounds") {
    GenConfig cfg;
    cfg.seed = 2024;
    for (int i = 0; i < 50; ++i) {
        PolyTuple a = gen_random_tuple(cfg, i);
        PolyTuple b = gen_random_tuple(cfg, i);
        CHECK(a == b);
        CHECK(a.arity() >= 1);
        CHECK(a.arity() <= cfg.arity);
        CHECK(a.size() >= 2);
        CHECK(a.size() <= cfg.tuple_len);
        for (int j = 0; j < a.size(); ++j) {
            CHECK_FALSE(a[j].is_zero());
            CHECK(int(a[j].term_count()) <= cfg.terms_per_entry);
            for (const auto& [m, c] : a[j].terms())
                CHECK(m.total_degree() <= std::uint32_t(cfg.max_degree));
        }
    }

    GenConfig other = cfg;
    other.seed = 2025;
    bool any_diff = false;
    for (int i = 0; i < 50; ++i)
        if (!(gen_random_tuple(cfg, i) == gen_random_tuple(other, i))) any_diff = true;
    CHECK(any_diff);

    GenConfig consts = cfg;
    consts.max_degree = 0;
    for (int i = 0; i < 20; ++i) CHECK(gen_random_tuple(consts, i).is_constant());
}

TEST_CASE("suite roster") {
    const auto& roster = suite_roster();
    CHECK(roster.size() == 30);
    CHECK_THROWS_AS(run_suite("no_such_suite", GenConfig{}), std::invalid_argument);

    auto has = [&](const std::string& name, bool gating) {
        for (const auto& s : roster)
            if (s.name == name) return s.gating == gating;
        return false;
    };
    CHECK(has("linearity", true));
    CHECK(has("strong_destab", false));
    CHECK(has("rho_bound", false));
    CHECK(has("dropler_max_eq", false));
    CHECK(has("integral_inequality", true));
}

TEST_CASE("gating suites run clean at a smoke-test size") {
    GenConfig cfg;
    cfg.seed = 42;
    cfg.cases = 40;
    for (const auto& info : suite_roster()) {
        if (!info.gating) continue;
        auto rep = run_suite(info.name, cfg);
        INFO(info.name);
        CHECK(rep.failures == 0);
        CHECK(rep.cases == cfg.cases);
        CHECK(rep.classification == "gating");
    }
}

TEST_CASE("diagnostics find the planted counterexamples") {
    GenConfig cfg;
    cfg.seed = 42;
    cfg.cases = 10;

    auto sd = run_suite("strong_destab", cfg);
    CHECK(sd.classification == "diagnostic");
    CHECK(sd.failures >= 1);
    REQUIRE_FALSE(sd.counterexamples.empty());
    CHECK(sd.counterexamples.front().case_index == 0); // (x, x^2)

    auto rho = run_suite("rho_bound", cfg);
    CHECK(rho.failures >= 1);
    REQUIRE_FALSE(rho.counterexamples.empty());
    CHECK(rho.counterexamples.front().case_index == 0); // (x^3, x)

    auto sum_eq = run_suite("totient_sum_eq", cfg);
    CHECK(sum_eq.failures >= 1); // planted cancellation pair

    std::vector<VerificationReport> reps = {sd, rho, sum_eq};
    CHECK(aggregate_exit_code(reps) == 0); // diagnostics never gate

    VerificationReport fake;
    fake.classification = "gating";
    fake.failures = 1;
    reps.push_back(fake);
    CHECK(aggregate_exit_code(reps) == 3);
}

TEST_CASE("counterexample list is capped, full count retained") {
    GenConfig cfg;
    cfg.seed = 7;
    cfg.cases = 60;
    cfg.counterexample_cap = 5;
    auto rep = run_suite("totient_sum_eq", cfg);
    CHECK(int(rep.counterexamples.size()) <= 5);
    CHECK(rep.failures >= int(rep.counterexamples.size()));
}

TEST_CASE("reports are byte-identical across runs") {
    GenConfig cfg;
    cfg.seed = 33;
    cfg.cases = 25;
    auto a = reports_to_json(run_all_suites(cfg), cfg).dump(2);
    auto b = reports_to_json(run_all_suites(cfg), cfg).dump(2);
    CHECK(a == b);
}
