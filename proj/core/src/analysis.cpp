#include "tsrkit/analysis.hpp"

#include <algorithm>

namespace tsrkit {

bool is_deadlocked(const Tsr& t, StateId s) {
    if (t.responses[s].empty()) return false;
    for (ActionId a = 0; a < t.actions.size(); ++a) {
        if (t.has_transition(s, a)) return false;
    }
    return true;
}

DeadlockReport deadlock_states(const Tsr& t) {
    DeadlockReport report;
    for (StateId s = 0; s < t.states.size(); ++s) {
        if (is_deadlocked(t, s)) report.deadlocked.push_back(s);
    }
    auto reachable = reachable_states(t);
    std::set_intersection(report.deadlocked.begin(), report.deadlocked.end(), reachable.begin(),
                          reachable.end(), std::back_inserter(report.reachable_deadlocked));
    report.deadlock_free = report.reachable_deadlocked.empty();
    return report;
}

std::vector<StateId> accepting_states(const Tsr& t) {
    std::vector<StateId> out;
    for (StateId s = 0; s < t.states.size(); ++s) {
        if (t.responses[s].empty()) out.push_back(s);
    }
    return out;
}

bool check_modal_deadlock_lemma(const Tsr& t) {
    return !is_modal(t) || deadlock_states(t).deadlock_free;
}

}  // namespace tsrkit
