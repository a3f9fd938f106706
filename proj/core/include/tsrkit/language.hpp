#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tsrkit/core.hpp"

namespace tsrkit {

// A word is accepted when it labels a run from the initial state ending in a
// state with an empty response set. Every TSR is a deterministic partial
// automaton under this reading, so the language operations below need no
// subset construction.

// Throws UnknownActionError if the word uses an action outside t's table.
bool accepts(const Tsr& t, const Trace& word);

struct EmptinessResult {
    bool empty = true;
    // Shortest accepted word (smallest action ids among equal lengths),
    // present iff the language is non-empty.
    std::optional<Trace> witness;
};

EmptinessResult is_empty(const Tsr& t);

struct InclusionResult {
    bool included = false;
    // Shortest word accepted by the concrete system but not the abstract
    // one; present iff not included. Ids refer to `alphabet`.
    std::optional<Trace> counterexample;
    ActionTable alphabet;
};

// Decides L(concrete) subset-of L(abstract) on the product of the two
// automata, completing the abstract side with a rejecting sink.
InclusionResult includes(const Tsr& abstract, const Tsr& concrete, bool strict = false);

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<Trace> counterexample;
    // True when the counterexample is accepted by the first system only.
    bool counterexample_in_first = false;
    ActionTable alphabet;
};

EquivalenceResult equivalent(const Tsr& a, const Tsr& b, bool strict = false);

// All accepted words of length <= maxlen, ordered by (length, lexicographic
// action id). Throws ResourceLimitError when the accepted list or the
// explored run tree would exceed `cap` entries.
std::vector<Trace> enumerate_words(const Tsr& t, std::size_t maxlen, std::size_t cap = 1'000'000);

}  // namespace tsrkit
