#include "tsrkit/convert.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

#include "tsrkit/refine.hpp"

namespace tsrkit {

namespace {

std::string unique_name(const std::string& base, const std::unordered_set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int suffix = 2;; ++suffix) {
        std::string candidate = base + "_" + std::to_string(suffix);
        if (!taken.count(candidate)) return candidate;
    }
}

struct RmResult {
    MixTs mix;
    std::map<std::pair<StateId, ActionId>, StateId> sinks;
};

RmResult rm_with_sinks(const Tsr& t) {
    const std::size_t n_actions = t.actions.size();

    RmResult result;
    MixTs& m = result.mix;
    m.name = t.name;
    m.actions = t.actions;
    m.states = t.states;
    m.initial = t.initial;

    std::unordered_set<std::string> taken(t.states.begin(), t.states.end());
    for (StateId s = 0; s < t.states.size(); ++s) {
        for (ActionId a : t.responses[s]) {
            if (t.has_transition(s, a)) continue;
            std::string name = unique_name(t.states[s] + "__req_" + t.actions.name(a), taken);
            taken.insert(name);
            result.sinks.emplace(std::pair{s, a}, static_cast<StateId>(m.states.size()));
            m.states.push_back(std::move(name));
        }
    }

    m.may.assign(m.states.size() * n_actions, kNoState);
    m.must.assign(m.states.size() * n_actions, kNoState);
    for (StateId s = 0; s < t.states.size(); ++s) {
        for (ActionId a = 0; a < n_actions; ++a) m.set_may(s, a, t.target(s, a));
        for (ActionId a : t.responses[s]) {
            StateId target = t.target(s, a);
            m.set_must(s, a, target != kNoState ? target : result.sinks.at({s, a}));
        }
    }
    return result;
}

}  // namespace

Tsr mr(const MixTs& m) {
    Tsr t;
    t.name = m.name;
    t.actions = m.actions;
    t.states = m.states;
    t.initial = m.initial;
    t.delta = m.may;
    t.responses.resize(m.states.size());
    for (StateId s = 0; s < m.states.size(); ++s) {
        for (ActionId a = 0; a < m.actions.size(); ++a) {
            if (m.must_target(s, a) != kNoState) t.responses[s].push_back(a);
        }
    }
    return t;
}

MixTs rm(const Tsr& t) { return rm_with_sinks(t).mix; }

MixTs canonicalize(const MixTs& m) {
    const std::size_t n_actions = m.actions.size();
    const std::size_t n_states = m.states.size();

    std::vector<int> in_degree(n_states, 0);
    std::vector<int> out_degree(n_states, 0);
    for (StateId s = 0; s < n_states; ++s) {
        for (ActionId a = 0; a < n_actions; ++a) {
            for (StateId target : {m.may_target(s, a), m.must_target(s, a)}) {
                if (target != kNoState) {
                    ++in_degree[target];
                    ++out_degree[s];
                }
            }
        }
    }
    // A must-only edge already points at a dedicated sink when the target has
    // no other incidence; such edges are left alone so canonicalize is the
    // identity on rm images.
    auto is_dedicated_sink = [&](StateId target) {
        return target != m.initial && out_degree[target] == 0 && in_degree[target] == 1;
    };

    MixTs out = m;
    std::unordered_set<std::string> taken(m.states.begin(), m.states.end());
    for (StateId s = 0; s < n_states; ++s) {
        for (ActionId a = 0; a < n_actions; ++a) {
            StateId must = m.must_target(s, a);
            if (must == kNoState) continue;
            StateId may = m.may_target(s, a);
            if (may != kNoState) {
                out.set_must(s, a, may);
            } else if (!is_dedicated_sink(must)) {
                std::string name = unique_name(m.states[s] + "__req_" + m.actions.name(a), taken);
                taken.insert(name);
                out.set_must(s, a, static_cast<StateId>(out.states.size()));
                out.states.push_back(std::move(name));
            }
        }
    }
    if (out.states.size() != n_states) {
        out.may.resize(out.states.size() * n_actions, kNoState);
        out.must.resize(out.states.size() * n_actions, kNoState);
    }
    return out;
}

std::optional<std::vector<std::pair<StateId, StateId>>> iso_check(const MixTs& a, const MixTs& b) {
    auto [m1, m2] = align_alphabets(a, b);
    const std::size_t n_actions = m1.actions.size();

    std::vector<StateId> fwd(m1.states.size(), kNoState);
    std::vector<StateId> bwd(m2.states.size(), kNoState);
    std::deque<std::pair<StateId, StateId>> queue;

    auto bind = [&](StateId s1, StateId s2) {
        if (fwd[s1] == kNoState && bwd[s2] == kNoState) {
            fwd[s1] = s2;
            bwd[s2] = s1;
            queue.emplace_back(s1, s2);
            return true;
        }
        return fwd[s1] == s2 && bwd[s2] == s1;
    };

    if (!bind(m1.initial, m2.initial)) return std::nullopt;
    while (!queue.empty()) {
        auto [s1, s2] = queue.front();
        queue.pop_front();
        for (ActionId act = 0; act < n_actions; ++act) {
            StateId may1 = m1.may_target(s1, act);
            StateId may2 = m2.may_target(s2, act);
            if ((may1 == kNoState) != (may2 == kNoState)) return std::nullopt;
            if (may1 != kNoState && !bind(may1, may2)) return std::nullopt;

            StateId must1 = m1.must_target(s1, act);
            StateId must2 = m2.must_target(s2, act);
            if ((must1 == kNoState) != (must2 == kNoState)) return std::nullopt;
            if (must1 != kNoState && !bind(must1, must2)) return std::nullopt;
        }
    }

    std::vector<std::pair<StateId, StateId>> mapping;
    for (StateId s1 = 0; s1 < fwd.size(); ++s1) {
        if (fwd[s1] != kNoState) mapping.emplace_back(s1, fwd[s1]);
    }
    return mapping;
}

std::vector<std::pair<StateId, StateId>> lift_refinement_to_mixts(
    std::span<const std::pair<StateId, StateId>> relation, const Tsr& t1, const Tsr& t2) {
    if (!verify_refinement(t1, t2, relation)) {
        throw NotARefinementError("relation is not a refinement between the given systems");
    }
    RmResult r1 = rm_with_sinks(t1);
    RmResult r2 = rm_with_sinks(t2);

    std::vector<std::pair<StateId, StateId>> lifted(relation.begin(), relation.end());
    for (const auto& [s1, s2] : relation) {
        for (auto it = r1.sinks.lower_bound({s1, 0});
             it != r1.sinks.end() && it->first.first == s1; ++it) {
            auto match = r2.sinks.find({s2, it->first.second});
            if (match != r2.sinks.end()) lifted.emplace_back(it->second, match->second);
        }
    }
    std::sort(lifted.begin(), lifted.end());
    lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());
    return lifted;
}

std::vector<std::pair<StateId, StateId>> transfer_refinement_to_tsr(
    std::span<const std::pair<StateId, StateId>> relation, const MixTs& m1, const MixTs& m2) {
    if (!verify_mixts_refinement(m1, m2, relation)) {
        throw NotARefinementError("relation is not a mixed refinement between the given systems");
    }
    std::vector<std::pair<StateId, StateId>> out(relation.begin(), relation.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!verify_refinement(mr(m1), mr(m2), out)) {
        throw NotARefinementError("relation does not transfer to the mr images");
    }
    return out;
}

}  // namespace tsrkit
