#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tsrkit/core.hpp"

namespace tsrkit::testkit {

// All generators are pure functions of the seed and the parameter record, so
// any failing case is replayable from the printed seed.

struct RandomTsrParams {
    std::uint32_t states = 6;
    std::uint32_t actions = 3;
    double density = 0.3;        // probability that delta(s, a) is defined
    double response_rate = 0.3;  // probability that a joins the response set of s
    std::string name = "random";
};

Tsr random_tsr(std::uint64_t seed, const RandomTsrParams& params);

// As random_tsr, but responses are drawn from the may set only, so the
// result is modal by construction.
Tsr random_modal_tsr(std::uint64_t seed, const RandomTsrParams& params);

struct RandomMixTsParams {
    std::uint32_t states = 6;
    std::uint32_t actions = 3;
    double may_density = 0.3;
    double must_density = 0.2;
    std::string name = "random_mix";
};

MixTs random_mixts(std::uint64_t seed, const RandomMixTsParams& params);

struct MutationParams {
    double delete_rate = 0.4;  // per deletable transition
    double grow_rate = 0.2;    // per absent response action
};

// Mutates t into a system the identity relation refines: deletes only
// transitions whose action is not a response of their source and only ever
// grows response sets; never adds transitions.
Tsr mutate_to_refinement(const Tsr& t, std::uint64_t seed, const MutationParams& params = {});

// Builds a refinement of t with a reachable deadlocked state that is not
// deadlocked in t, so the safe check fails with DeadlockNotReflected while
// the plain check still holds. Returns nullopt when t has no reachable state
// whose outgoing transitions are all deletable.
std::optional<Tsr> mutate_to_unsafe_refinement(const Tsr& t, std::uint64_t seed);

}  // namespace tsrkit::testkit
