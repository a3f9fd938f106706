#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tsrkit/core.hpp"

namespace tsrkit {

enum class ViolationCode {
    ResponseNotGrown,      // concrete state misses a response of the abstract state
    MustNotPreserved,      // a required transition of the abstract state has no match
    MayNotReflected,       // the concrete state moves where the abstract state cannot
    DeadlockNotReflected,  // the concrete state deadlocks, the abstract one does not
};

std::string_view to_string(ViolationCode code);

// Which transition map a product step followed; TSR checks only ever step
// through may edges.
enum class StepKind { May, Must };

struct RefinementCounterexample {
    Trace trace;
    std::vector<StepKind> steps;  // one entry per trace action
    std::pair<StateId, StateId> pair;
    ViolationCode violation;
};

// Verdict of a refinement check between an abstract system (left) and a
// candidate concrete refinement (right). When the refinement holds, relation
// is the forced closure of the initial pair: it contains (i1, i2) and, for
// every related pair, the unique successor pairs the matching conditions
// force. When it fails, the counterexample trace replays in both systems from
// the initial states and ends in the violating pair. Trace action ids refer
// to `alphabet`, the union of the two systems' action tables.
struct RefinementReport {
    bool holds = false;
    std::vector<std::pair<StateId, StateId>> relation;
    std::optional<RefinementCounterexample> counterexample;
    ActionTable alphabet;
};

RefinementReport check_refinement(const Tsr& abstract, const Tsr& concrete, bool strict = false);
RefinementReport check_safe_refinement(const Tsr& abstract, const Tsr& concrete,
                                       bool strict = false);

// Brute-force oracle: the largest relation over all state pairs that
// satisfies the refinement conditions (and deadlock reflection when safe).
// A refinement containing the initial pair exists iff (i1, i2) is a member.
// Quadratic in the state product; meant for cross-checks, not scale.
std::vector<std::pair<StateId, StateId>> greatest_refinement_relation(const Tsr& abstract,
                                                                      const Tsr& concrete,
                                                                      bool safe);

// Mixed refinement: every must of the abstract state is matched by a must of
// the concrete state, every may of the concrete state by a may of the
// abstract state, targets related. Action-determinism of both maps makes the
// rooted product exploration exact, mirroring check_refinement.
RefinementReport check_mixts_refinement(const MixTs& abstract, const MixTs& concrete,
                                        bool strict = false);

std::vector<std::pair<StateId, StateId>> greatest_mixts_refinement_relation(
    const MixTs& abstract, const MixTs& concrete);

// Checks a candidate relation against the definitional conditions, pair by
// pair, including membership of the initial pair.
bool verify_refinement(const Tsr& abstract, const Tsr& concrete,
                       std::span<const std::pair<StateId, StateId>> relation, bool safe = false);
bool verify_mixts_refinement(const MixTs& abstract, const MixTs& concrete,
                             std::span<const std::pair<StateId, StateId>> relation);

}  // namespace tsrkit
