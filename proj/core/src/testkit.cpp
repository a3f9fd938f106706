#include "tsrkit/testkit.hpp"

#include <algorithm>
#include <deque>

namespace tsrkit::testkit {

namespace {

// splitmix64; fixed here so generated systems are identical across standard
// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

    std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(next() % n); }

private:
    std::uint64_t state_;
};

Tsr blank_tsr(const std::string& name, std::uint32_t n_states, std::uint32_t n_actions) {
    Tsr t;
    t.name = name;
    for (std::uint32_t a = 0; a < n_actions; ++a) t.actions.intern("a" + std::to_string(a));
    for (std::uint32_t s = 0; s < n_states; ++s) t.states.push_back("s" + std::to_string(s));
    t.initial = 0;
    t.responses.resize(n_states);
    t.delta.assign(static_cast<std::size_t>(n_states) * n_actions, kNoState);
    return t;
}

}  // namespace

Tsr random_tsr(std::uint64_t seed, const RandomTsrParams& params) {
    Rng rng(seed);
    Tsr t = blank_tsr(params.name, params.states, params.actions);
    for (StateId s = 0; s < params.states; ++s) {
        for (ActionId a = 0; a < params.actions; ++a) {
            if (rng.chance(params.density)) t.set_transition(s, a, rng.below(params.states));
        }
        for (ActionId a = 0; a < params.actions; ++a) {
            if (rng.chance(params.response_rate)) t.responses[s].push_back(a);
        }
    }
    return t;
}

Tsr random_modal_tsr(std::uint64_t seed, const RandomTsrParams& params) {
    Rng rng(seed);
    Tsr t = blank_tsr(params.name, params.states, params.actions);
    for (StateId s = 0; s < params.states; ++s) {
        for (ActionId a = 0; a < params.actions; ++a) {
            if (rng.chance(params.density)) t.set_transition(s, a, rng.below(params.states));
        }
        for (ActionId a = 0; a < params.actions; ++a) {
            if (t.has_transition(s, a) && rng.chance(params.response_rate)) {
                t.responses[s].push_back(a);
            }
        }
    }
    return t;
}

MixTs random_mixts(std::uint64_t seed, const RandomMixTsParams& params) {
    Rng rng(seed);
    MixTs m;
    m.name = params.name;
    for (std::uint32_t a = 0; a < params.actions; ++a) m.actions.intern("a" + std::to_string(a));
    for (std::uint32_t s = 0; s < params.states; ++s) m.states.push_back("s" + std::to_string(s));
    m.initial = 0;
    m.may.assign(static_cast<std::size_t>(params.states) * params.actions, kNoState);
    m.must.assign(static_cast<std::size_t>(params.states) * params.actions, kNoState);
    for (StateId s = 0; s < params.states; ++s) {
        for (ActionId a = 0; a < params.actions; ++a) {
            if (rng.chance(params.may_density)) m.set_may(s, a, rng.below(params.states));
            if (rng.chance(params.must_density)) m.set_must(s, a, rng.below(params.states));
        }
    }
    return m;
}

Tsr mutate_to_refinement(const Tsr& t, std::uint64_t seed, const MutationParams& params) {
    Rng rng(seed);
    Tsr out = t;
    out.name = t.name + "_refined";
    for (StateId s = 0; s < t.states.size(); ++s) {
        for (ActionId a = 0; a < t.actions.size(); ++a) {
            bool deletable = t.has_transition(s, a) && !t.responds_to(s, a);
            if (deletable && rng.chance(params.delete_rate)) out.set_transition(s, a, kNoState);
        }
        for (ActionId a = 0; a < t.actions.size(); ++a) {
            if (!t.responds_to(s, a) && rng.chance(params.grow_rate)) {
                out.responses[s].push_back(a);
            }
        }
        std::sort(out.responses[s].begin(), out.responses[s].end());
    }
    return out;
}

std::optional<Tsr> mutate_to_unsafe_refinement(const Tsr& t, std::uint64_t seed) {
    Rng rng(seed);

    std::vector<StateId> candidates;
    for (StateId s : reachable_states(t)) {
        bool has_edge = false;
        bool all_deletable = true;
        for (ActionId a = 0; a < t.actions.size(); ++a) {
            if (!t.has_transition(s, a)) continue;
            has_edge = true;
            if (t.responds_to(s, a)) all_deletable = false;
        }
        if (has_edge && all_deletable) candidates.push_back(s);
    }
    if (candidates.empty()) return std::nullopt;

    StateId victim = candidates[rng.below(static_cast<std::uint32_t>(candidates.size()))];

    Tsr out = t;
    out.name = t.name + "_unsafe";
    for (ActionId a = 0; a < t.actions.size(); ++a) out.set_transition(victim, a, kNoState);
    if (out.responses[victim].empty()) {
        out.responses[victim].push_back(rng.below(static_cast<std::uint32_t>(t.actions.size())));
    }
    return out;
}

}  // namespace tsrkit::testkit
