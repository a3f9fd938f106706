#pragma once

#include <vector>

#include "tsrkit/core.hpp"

namespace tsrkit {

// A state is deadlocked when it has pending responses but no outgoing
// transitions. Deadlock freedom only looks at reachable states, so the report
// carries both views.
struct DeadlockReport {
    std::vector<StateId> deadlocked;
    std::vector<StateId> reachable_deadlocked;
    bool deadlock_free = true;
};

bool is_deadlocked(const Tsr& t, StateId s);

DeadlockReport deadlock_states(const Tsr& t);

// States with an empty response set, sorted ascending.
std::vector<StateId> accepting_states(const Tsr& t);

// True iff t is not modal or t is deadlock free. Modal systems can never
// deadlock, so this holds for every valid Tsr; it is exposed as a checkable
// predicate for assertions and property suites.
bool check_modal_deadlock_lemma(const Tsr& t);

}  // namespace tsrkit
