#include "tsrkit/language.hpp"

#include <algorithm>
#include <cstdint>

namespace tsrkit {

namespace {

bool accepting(const Tsr& t, StateId s) { return t.responses[s].empty(); }

constexpr std::uint32_t kUnseen = static_cast<std::uint32_t>(-1);

}  // namespace

bool accepts(const Tsr& t, const Trace& word) {
    for (ActionId a : word.actions) {
        if (a >= t.actions.size()) {
            throw UnknownActionError("action id " + std::to_string(a)
                                     + " is outside the system's action table");
        }
    }
    StateId end = t.run(word);
    return end != kNoState && accepting(t, end);
}

EmptinessResult is_empty(const Tsr& t) {
    struct Node {
        StateId state;
        std::uint32_t parent;
        ActionId via;
    };
    std::vector<Node> nodes;
    std::vector<bool> seen(t.states.size(), false);

    nodes.push_back({t.initial, kUnseen, 0});
    seen[t.initial] = true;
    for (std::uint32_t head = 0; head < nodes.size(); ++head) {
        StateId s = nodes[head].state;
        if (accepting(t, s)) {
            Trace witness;
            for (std::uint32_t i = head; nodes[i].parent != kUnseen; i = nodes[i].parent) {
                witness.actions.push_back(nodes[i].via);
            }
            std::reverse(witness.actions.begin(), witness.actions.end());
            return {false, std::move(witness)};
        }
        for (ActionId a = 0; a < t.actions.size(); ++a) {
            StateId next = t.target(s, a);
            if (next != kNoState && !seen[next]) {
                seen[next] = true;
                nodes.push_back({next, head, a});
            }
        }
    }
    return {true, std::nullopt};
}

InclusionResult includes(const Tsr& abstract, const Tsr& concrete, bool strict) {
    auto [t1, t2] = align_alphabets(abstract, concrete, strict);
    const std::size_t n_actions = t1.actions.size();
    // State n1 is the rejecting sink completing the abstract automaton.
    const StateId sink = static_cast<StateId>(t1.states.size());

    InclusionResult result;
    result.alphabet = t1.actions;

    struct Node {
        StateId s1;
        StateId s2;
        std::uint32_t parent;
        ActionId via;
    };
    std::vector<Node> nodes;
    std::vector<std::uint32_t> seen((t1.states.size() + 1) * t2.states.size(), kUnseen);
    auto key = [&](StateId s1, StateId s2) {
        return static_cast<std::size_t>(s1) * t2.states.size() + s2;
    };

    nodes.push_back({t1.initial, t2.initial, kUnseen, 0});
    seen[key(t1.initial, t2.initial)] = 0;

    for (std::uint32_t head = 0; head < nodes.size(); ++head) {
        auto [s1, s2] = std::pair{nodes[head].s1, nodes[head].s2};
        if (accepting(t2, s2) && (s1 == sink || !accepting(t1, s1))) {
            Trace word;
            for (std::uint32_t i = head; nodes[i].parent != kUnseen; i = nodes[i].parent) {
                word.actions.push_back(nodes[i].via);
            }
            std::reverse(word.actions.begin(), word.actions.end());
            result.included = false;
            result.counterexample = std::move(word);
            return result;
        }
        for (ActionId a = 0; a < n_actions; ++a) {
            StateId next2 = t2.target(s2, a);
            if (next2 == kNoState) continue;
            StateId next1 = s1 == sink ? sink : t1.target(s1, a);
            if (next1 == kNoState) next1 = sink;
            if (seen[key(next1, next2)] == kUnseen) {
                seen[key(next1, next2)] = static_cast<std::uint32_t>(nodes.size());
                nodes.push_back({next1, next2, head, a});
            }
        }
    }

    result.included = true;
    return result;
}

EquivalenceResult equivalent(const Tsr& a, const Tsr& b, bool strict) {
    EquivalenceResult result;
    InclusionResult forward = includes(a, b, strict);  // L(b) subset-of L(a)?
    result.alphabet = forward.alphabet;
    if (!forward.included) {
        result.equivalent = false;
        result.counterexample = forward.counterexample;
        result.counterexample_in_first = false;
        return result;
    }
    InclusionResult backward = includes(b, a, strict);  // L(a) subset-of L(b)?
    if (!backward.included) {
        result.equivalent = false;
        result.counterexample = backward.counterexample;
        result.counterexample_in_first = true;
        result.alphabet = backward.alphabet;
        return result;
    }
    result.equivalent = true;
    return result;
}

std::vector<Trace> enumerate_words(const Tsr& t, std::size_t maxlen, std::size_t cap) {
    struct Node {
        StateId state;
        std::uint32_t parent;
        ActionId via;
    };
    std::vector<Node> nodes;
    nodes.push_back({t.initial, kUnseen, 0});

    auto word_of = [&](std::uint32_t index) {
        Trace word;
        for (std::uint32_t i = index; nodes[i].parent != kUnseen; i = nodes[i].parent) {
            word.actions.push_back(nodes[i].via);
        }
        std::reverse(word.actions.begin(), word.actions.end());
        return word;
    };

    std::vector<Trace> accepted;
    std::uint32_t level_begin = 0;
    std::uint32_t level_end = 1;
    for (std::size_t len = 0; len <= maxlen; ++len) {
        for (std::uint32_t i = level_begin; i < level_end; ++i) {
            if (accepting(t, nodes[i].state)) {
                if (accepted.size() >= cap) {
                    throw ResourceLimitError("enumeration exceeds the configured word cap");
                }
                accepted.push_back(word_of(i));
            }
        }
        if (len == maxlen) break;
        for (std::uint32_t i = level_begin; i < level_end; ++i) {
            for (ActionId a = 0; a < t.actions.size(); ++a) {
                StateId next = t.target(nodes[i].state, a);
                if (next == kNoState) continue;
                if (nodes.size() >= cap) {
                    throw ResourceLimitError("enumeration exceeds the configured run cap");
                }
                nodes.push_back({next, i, a});
            }
        }
        level_begin = level_end;
        level_end = static_cast<std::uint32_t>(nodes.size());
    }
    return accepted;
}

}  // namespace tsrkit
