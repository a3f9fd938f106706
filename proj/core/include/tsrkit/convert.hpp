#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tsrkit/core.hpp"

namespace tsrkit {

// Forgets must-edge targets: responses(s) collects the actions with a must
// edge at s, the transition map is the may map. States are kept as they are.
Tsr mr(const MixTs& m);

// Rebuilds the mixed system: may = delta; every response action gets a must
// edge, pointing at the may target when one exists and otherwise at a fresh
// sink state named "<state>__req_<action>" (a numeric suffix resolves name
// collisions).
MixTs rm(const Tsr& t);

// Rewrites must edges into the shape rm produces: targets follow the may
// edge when one exists, and must-only edges point at dedicated sinks. Sinks
// already in that shape are kept; displaced original targets are retained as
// (possibly unreachable) states.
MixTs canonicalize(const MixTs& m);

// Reachable-part isomorphism. Action-determinism of both maps forces the
// candidate state mapping from the initial pair, so the check is one
// synchronized BFS; returns the bijection (sorted by left state id) or
// nullopt. Unreachable states on either side are ignored.
std::optional<std::vector<std::pair<StateId, StateId>>> iso_check(const MixTs& a, const MixTs& b);

// Lifts a refinement between two TSRs to one between their rm images: the
// input pairs plus (sink1(s,a), sink2(s',a)) for every related (s, s') whose
// sink exists on both sides. Throws NotARefinementError if the input relation
// is not a refinement.
std::vector<std::pair<StateId, StateId>> lift_refinement_to_mixts(
    std::span<const std::pair<StateId, StateId>> relation, const Tsr& t1, const Tsr& t2);

// Re-reads a mixed refinement as a refinement between the mr images. The
// pair set is unchanged; both the input and the transferred reading are
// verified, and NotARefinementError is thrown when either fails.
std::vector<std::pair<StateId, StateId>> transfer_refinement_to_tsr(
    std::span<const std::pair<StateId, StateId>> relation, const MixTs& m1, const MixTs& m2);

}  // namespace tsrkit
