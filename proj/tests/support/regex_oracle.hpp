#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "tsrkit/core.hpp"

namespace testsupport {

// Independent oracle for the restricted medication workflow language
//
//   ε + prescribe.sign.(dont_trust.prescribe.sign)*.(dont_trust.cancel + give)
//
// expanded directly from the expression, without touching the automaton path
// under test.
inline std::vector<std::vector<std::string>> medication_regex_words(std::size_t maxlen) {
    std::vector<std::vector<std::string>> words;
    words.push_back({});
    for (std::size_t k = 0; 2 + 3 * k + 1 <= maxlen; ++k) {
        std::vector<std::string> stem = {"prescribe", "sign"};
        for (std::size_t i = 0; i < k; ++i) {
            stem.insert(stem.end(), {"dont_trust", "prescribe", "sign"});
        }
        if (stem.size() + 1 <= maxlen) {
            auto w = stem;
            w.push_back("give");
            words.push_back(std::move(w));
        }
        if (stem.size() + 2 <= maxlen) {
            auto w = stem;
            w.insert(w.end(), {"dont_trust", "cancel"});
            words.push_back(std::move(w));
        }
    }
    return words;
}

// Interns oracle words through `table` and orders them the way enumeration
// does: by length, then lexicographically by action id.
inline std::vector<tsrkit::Trace> as_sorted_traces(std::vector<std::vector<std::string>> words,
                                                   const tsrkit::ActionTable& table) {
    std::vector<tsrkit::Trace> traces;
    for (const auto& w : words) {
        tsrkit::Trace trace;
        for (const auto& name : w) trace.actions.push_back(*table.find(name));
        traces.push_back(std::move(trace));
    }
    std::sort(traces.begin(), traces.end(), [](const tsrkit::Trace& a, const tsrkit::Trace& b) {
        if (a.actions.size() != b.actions.size()) return a.actions.size() < b.actions.size();
        return a.actions < b.actions;
    });
    return traces;
}

}  // namespace testsupport
