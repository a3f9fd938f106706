#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support/fixtures.hpp"
#include "tsrkit/analysis.hpp"
#include "tsrkit/testkit.hpp"

using namespace tsrkit;
using testsupport::load_tsr;
using testsupport::tsr_from_text;

TEST_CASE("T_c deadlocks in s1, T_a nowhere") {
    DeadlockReport tc = deadlock_states(load_tsr("T_c.tsr"));
    CHECK(tc.deadlocked == std::vector<StateId>{1});
    CHECK(tc.reachable_deadlocked == std::vector<StateId>{1});
    CHECK_FALSE(tc.deadlock_free);

    DeadlockReport ta = deadlock_states(load_tsr("T_a.tsr"));
    CHECK(ta.deadlocked.empty());
    CHECK(ta.deadlock_free);
}

TEST_CASE("systems with empty response sets everywhere are deadlock free") {
    Tsr t = tsr_from_text(
        "kind tsr\nsystem x\nactions a\nstates s0 s1\ninitial s0\ntrans s0 a s1\n");
    DeadlockReport report = deadlock_states(t);
    CHECK(report.deadlocked.empty());
    CHECK(report.deadlock_free);
}

TEST_CASE("unreachable deadlocks do not spoil deadlock freedom") {
    Tsr t = tsr_from_text(
        "kind tsr\nsystem x\nactions a\nstates s0 stuck\ninitial s0\nresponses stuck : a\n");
    DeadlockReport report = deadlock_states(t);
    CHECK(report.deadlocked == std::vector<StateId>{1});
    CHECK(report.reachable_deadlocked.empty());
    CHECK(report.deadlock_free);
}

TEST_CASE("accepting states are exactly the response-free ones") {
    CHECK(accepting_states(load_tsr("T_b.tsr")) == std::vector<StateId>{0, 4});
    CHECK(accepting_states(load_tsr("CE_left.tsr")).empty());

    Tsr all = tsr_from_text("kind tsr\nsystem x\nstates s0 s1\ninitial s0\n");
    CHECK(accepting_states(all) == std::vector<StateId>{0, 1});
}

TEST_CASE("deadlocked states are never accepting") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Tsr t = tsrkit::testkit::random_tsr(seed, {.states = 8, .actions = 3, .density = 0.3,
                                                   .response_rate = 0.4});
        auto accepting = accepting_states(t);
        for (StateId s : deadlock_states(t).deadlocked) {
            CHECK_FALSE(std::binary_search(accepting.begin(), accepting.end(), s));
        }
    }
}

TEST_CASE("modal systems are deadlock free") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Tsr t = tsrkit::testkit::random_modal_tsr(seed, {.states = 9, .actions = 3, .density = 0.4,
                                                         .response_rate = 0.6});
        REQUIRE(is_modal(t));
        CHECK(deadlock_states(t).deadlock_free);
        CHECK(check_modal_deadlock_lemma(t));
    }
}

TEST_CASE("the lemma predicate is vacuously true on non-modal systems") {
    Tsr tc = load_tsr("T_c.tsr");
    REQUIRE_FALSE(is_modal(tc));
    CHECK(check_modal_deadlock_lemma(tc));
}
