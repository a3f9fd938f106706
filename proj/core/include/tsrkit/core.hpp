#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tsrkit/sysdoc.hpp"

namespace tsrkit {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

inline constexpr StateId kNoState = static_cast<StateId>(-1);

// Interns distinct action names to dense ids, 0..n-1 in declaration order.
class ActionTable {
public:
    ActionTable() = default;

    // Returns the id of `name`, adding it to the table if new.
    ActionId intern(std::string name);

    std::optional<ActionId> find(std::string_view name) const;
    const std::string& name(ActionId a) const { return names_.at(a); }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const ActionTable& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, ActionId> lookup_;
};

// Finite word over a system's action table.
struct Trace {
    std::vector<ActionId> actions;

    bool operator==(const Trace&) const = default;
};

// Action-deterministic transition system with a response set per state.
// delta is stored as a dense states x actions matrix with kNoState for
// "undefined"; responses[s] is a sorted set of action ids and is total over
// states (empty set means accepting).
struct Tsr {
    std::string name;
    ActionTable actions;
    std::vector<std::string> states;
    StateId initial = 0;
    std::vector<std::vector<ActionId>> responses;
    std::vector<StateId> delta;

    std::size_t state_count() const { return states.size(); }
    std::size_t action_count() const { return actions.size(); }

    StateId target(StateId s, ActionId a) const { return delta[s * actions.size() + a]; }
    bool has_transition(StateId s, ActionId a) const { return target(s, a) != kNoState; }
    void set_transition(StateId s, ActionId a, StateId t) { delta[s * actions.size() + a] = t; }
    bool responds_to(StateId s, ActionId a) const;

    // Runs `w` from the initial state; kNoState if some step is undefined.
    StateId run(const Trace& w) const;

    bool operator==(const Tsr&) const = default;
};

// System with separate may and must transition maps, each action-deterministic.
// must targets need not agree with may targets and need not have a may edge
// at all.
struct MixTs {
    std::string name;
    ActionTable actions;
    std::vector<std::string> states;
    StateId initial = 0;
    std::vector<StateId> may;
    std::vector<StateId> must;

    std::size_t state_count() const { return states.size(); }
    std::size_t action_count() const { return actions.size(); }

    StateId may_target(StateId s, ActionId a) const { return may[s * actions.size() + a]; }
    StateId must_target(StateId s, ActionId a) const { return must[s * actions.size() + a]; }
    void set_may(StateId s, ActionId a, StateId t) { may[s * actions.size() + a] = t; }
    void set_must(StateId s, ActionId a, StateId t) { must[s * actions.size() + a] = t; }

    bool operator==(const MixTs&) const = default;
};

Tsr validate_tsr(const SystemDoc& doc);
MixTs validate_mixts(const SystemDoc& doc);

// The actions on transitions that may be taken from s, sorted ascending.
std::vector<ActionId> may_set(const Tsr& t, StateId s);

// True iff every response action has an outgoing transition in its state.
bool is_modal(const Tsr& t);

// True iff every must edge is also a may edge with the same target.
bool is_modal(const MixTs& m);

// States reachable from the initial state, sorted ascending. For MixTs the
// closure is taken over may and must edges together.
std::vector<StateId> reachable_states(const Tsr& t);
std::vector<StateId> reachable_states(const MixTs& m);

// Rewrites two systems over the union of their action tables (left table
// order first, then actions unique to the right). State ids are unchanged.
// With strict=true, differing action-name sets raise AlphabetMismatchError
// instead.
std::pair<Tsr, Tsr> align_alphabets(const Tsr& a, const Tsr& b, bool strict = false);
std::pair<MixTs, MixTs> align_alphabets(const MixTs& a, const MixTs& b, bool strict = false);

// Structural equality of the parts reachable from the initial states,
// matching states by name (no renaming is allowed). The system name field
// and unreachable states are ignored; action tables may differ in order as
// long as the reachable behaviour agrees by name.
bool reachable_part_equal(const Tsr& a, const Tsr& b);

}  // namespace tsrkit
