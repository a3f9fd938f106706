#include "tsrkit/refine.hpp"

#include <algorithm>
#include <cstdint>

#include "tsrkit/analysis.hpp"

namespace tsrkit {

std::string_view to_string(ViolationCode code) {
    switch (code) {
        case ViolationCode::ResponseNotGrown: return "ResponseNotGrown";
        case ViolationCode::MustNotPreserved: return "MustNotPreserved";
        case ViolationCode::MayNotReflected: return "MayNotReflected";
        case ViolationCode::DeadlockNotReflected: return "DeadlockNotReflected";
    }
    return "?";
}

namespace {

constexpr std::uint32_t kUnseen = static_cast<std::uint32_t>(-1);

struct ProductNode {
    StateId s1;
    StateId s2;
    std::uint32_t parent;
    ActionId via;
    StepKind kind;
};

// Pairs are explored in BFS order with actions expanded in ascending id
// order, so the first failing pair yields the shortest counterexample trace
// and the lexicographically smallest one among equal lengths.
class ProductExploration {
public:
    ProductExploration(std::size_t n1, std::size_t n2)
        : n2_(n2), seen_(n1 * n2, kUnseen) {}

    bool discover(StateId s1, StateId s2, std::uint32_t parent, ActionId via, StepKind kind) {
        std::size_t key = static_cast<std::size_t>(s1) * n2_ + s2;
        if (seen_[key] != kUnseen) return false;
        seen_[key] = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({s1, s2, parent, via, kind});
        return true;
    }

    const std::vector<ProductNode>& nodes() const { return nodes_; }

    RefinementCounterexample counterexample_at(std::uint32_t index, ViolationCode code) const {
        RefinementCounterexample ce;
        ce.pair = {nodes_[index].s1, nodes_[index].s2};
        ce.violation = code;
        for (std::uint32_t i = index; nodes_[i].parent != kUnseen; i = nodes_[i].parent) {
            ce.trace.actions.push_back(nodes_[i].via);
            ce.steps.push_back(nodes_[i].kind);
        }
        std::reverse(ce.trace.actions.begin(), ce.trace.actions.end());
        std::reverse(ce.steps.begin(), ce.steps.end());
        return ce;
    }

    std::vector<std::pair<StateId, StateId>> relation() const {
        std::vector<std::pair<StateId, StateId>> out;
        out.reserve(nodes_.size());
        for (const auto& node : nodes_) out.emplace_back(node.s1, node.s2);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::size_t n2_;
    std::vector<std::uint32_t> seen_;
    std::vector<ProductNode> nodes_;
};

bool subset(const std::vector<ActionId>& small, const std::vector<ActionId>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<bool> deadlock_flags(const Tsr& t) {
    std::vector<bool> flags(t.states.size());
    for (StateId s = 0; s < t.states.size(); ++s) flags[s] = is_deadlocked(t, s);
    return flags;
}

RefinementReport check_tsr_refinement_impl(const Tsr& abstract, const Tsr& concrete, bool safe,
                                           bool strict) {
    auto [t1, t2] = align_alphabets(abstract, concrete, strict);
    const std::size_t n_actions = t1.actions.size();

    std::vector<bool> dead1;
    std::vector<bool> dead2;
    if (safe) {
        dead1 = deadlock_flags(t1);
        dead2 = deadlock_flags(t2);
    }

    RefinementReport report;
    report.alphabet = t1.actions;

    ProductExploration product(t1.states.size(), t2.states.size());
    product.discover(t1.initial, t2.initial, kUnseen, 0, StepKind::May);

    for (std::uint32_t head = 0; head < product.nodes().size(); ++head) {
        const auto [s1, s2] = std::pair{product.nodes()[head].s1, product.nodes()[head].s2};

        std::optional<ViolationCode> violation;
        if (!subset(t1.responses[s1], t2.responses[s2])) {
            violation = ViolationCode::ResponseNotGrown;
        }
        if (!violation) {
            for (ActionId a : t1.responses[s1]) {
                if (t1.has_transition(s1, a) && !t2.has_transition(s2, a)) {
                    violation = ViolationCode::MustNotPreserved;
                    break;
                }
            }
        }
        if (!violation) {
            for (ActionId a = 0; a < n_actions; ++a) {
                if (t2.has_transition(s2, a) && !t1.has_transition(s1, a)) {
                    violation = ViolationCode::MayNotReflected;
                    break;
                }
            }
        }
        if (!violation && safe && dead2[s2] && !dead1[s1]) {
            violation = ViolationCode::DeadlockNotReflected;
        }
        if (violation) {
            report.holds = false;
            report.counterexample = product.counterexample_at(head, *violation);
            return report;
        }

        for (ActionId a = 0; a < n_actions; ++a) {
            StateId next2 = t2.target(s2, a);
            if (next2 == kNoState) continue;
            product.discover(t1.target(s1, a), next2, head, a, StepKind::May);
        }
    }

    report.holds = true;
    report.relation = product.relation();
    return report;
}

}  // namespace

RefinementReport check_refinement(const Tsr& abstract, const Tsr& concrete, bool strict) {
    return check_tsr_refinement_impl(abstract, concrete, /*safe=*/false, strict);
}

RefinementReport check_safe_refinement(const Tsr& abstract, const Tsr& concrete, bool strict) {
    return check_tsr_refinement_impl(abstract, concrete, /*safe=*/true, strict);
}

std::vector<std::pair<StateId, StateId>> greatest_refinement_relation(const Tsr& abstract,
                                                                      const Tsr& concrete,
                                                                      bool safe) {
    auto [t1, t2] = align_alphabets(abstract, concrete);
    const std::size_t n1 = t1.states.size();
    const std::size_t n2 = t2.states.size();
    const std::size_t n_actions = t1.actions.size();

    auto dead1 = deadlock_flags(t1);
    auto dead2 = deadlock_flags(t2);

    std::vector<bool> rel(n1 * n2, true);
    auto related = [&](StateId s1, StateId s2) { return rel[s1 * n2 + s2]; };

    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s1 = 0; s1 < n1; ++s1) {
            for (StateId s2 = 0; s2 < n2; ++s2) {
                if (!related(s1, s2)) continue;
                bool ok = subset(t1.responses[s1], t2.responses[s2])
                          && (!safe || !dead2[s2] || dead1[s1]);
                if (ok) {
                    for (ActionId a : t1.responses[s1]) {
                        StateId u1 = t1.target(s1, a);
                        if (u1 == kNoState) continue;
                        StateId u2 = t2.target(s2, a);
                        if (u2 == kNoState || !related(u1, u2)) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (ok) {
                    for (ActionId a = 0; a < n_actions && ok; ++a) {
                        StateId u2 = t2.target(s2, a);
                        if (u2 == kNoState) continue;
                        StateId u1 = t1.target(s1, a);
                        if (u1 == kNoState || !related(u1, u2)) ok = false;
                    }
                }
                if (!ok) {
                    rel[s1 * n2 + s2] = false;
                    changed = true;
                }
            }
        }
    }

    std::vector<std::pair<StateId, StateId>> out;
    for (StateId s1 = 0; s1 < n1; ++s1) {
        for (StateId s2 = 0; s2 < n2; ++s2) {
            if (related(s1, s2)) out.emplace_back(s1, s2);
        }
    }
    return out;
}

RefinementReport check_mixts_refinement(const MixTs& abstract, const MixTs& concrete,
                                        bool strict) {
    auto [m1, m2] = align_alphabets(abstract, concrete, strict);
    const std::size_t n_actions = m1.actions.size();

    RefinementReport report;
    report.alphabet = m1.actions;

    ProductExploration product(m1.states.size(), m2.states.size());
    product.discover(m1.initial, m2.initial, kUnseen, 0, StepKind::May);

    for (std::uint32_t head = 0; head < product.nodes().size(); ++head) {
        const auto [s1, s2] = std::pair{product.nodes()[head].s1, product.nodes()[head].s2};

        std::optional<ViolationCode> violation;
        for (ActionId a = 0; a < n_actions && !violation; ++a) {
            if (m1.must_target(s1, a) != kNoState && m2.must_target(s2, a) == kNoState) {
                violation = ViolationCode::MustNotPreserved;
            } else if (m2.may_target(s2, a) != kNoState && m1.may_target(s1, a) == kNoState) {
                violation = ViolationCode::MayNotReflected;
            }
        }
        if (violation) {
            report.holds = false;
            report.counterexample = product.counterexample_at(head, *violation);
            return report;
        }

        for (ActionId a = 0; a < n_actions; ++a) {
            StateId must2 = m2.must_target(s2, a);
            StateId must1 = m1.must_target(s1, a);
            if (must1 != kNoState) product.discover(must1, must2, head, a, StepKind::Must);
            StateId may2 = m2.may_target(s2, a);
            if (may2 != kNoState) product.discover(m1.may_target(s1, a), may2, head, a, StepKind::May);
        }
    }

    report.holds = true;
    report.relation = product.relation();
    return report;
}

std::vector<std::pair<StateId, StateId>> greatest_mixts_refinement_relation(const MixTs& abstract,
                                                                            const MixTs& concrete) {
    auto [m1, m2] = align_alphabets(abstract, concrete);
    const std::size_t n1 = m1.states.size();
    const std::size_t n2 = m2.states.size();
    const std::size_t n_actions = m1.actions.size();

    std::vector<bool> rel(n1 * n2, true);
    auto related = [&](StateId s1, StateId s2) { return rel[s1 * n2 + s2]; };

    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s1 = 0; s1 < n1; ++s1) {
            for (StateId s2 = 0; s2 < n2; ++s2) {
                if (!related(s1, s2)) continue;
                bool ok = true;
                for (ActionId a = 0; a < n_actions && ok; ++a) {
                    StateId must1 = m1.must_target(s1, a);
                    if (must1 != kNoState) {
                        StateId must2 = m2.must_target(s2, a);
                        if (must2 == kNoState || !related(must1, must2)) ok = false;
                    }
                    StateId may2 = m2.may_target(s2, a);
                    if (ok && may2 != kNoState) {
                        StateId may1 = m1.may_target(s1, a);
                        if (may1 == kNoState || !related(may1, may2)) ok = false;
                    }
                }
                if (!ok) {
                    rel[s1 * n2 + s2] = false;
                    changed = true;
                }
            }
        }
    }

    std::vector<std::pair<StateId, StateId>> out;
    for (StateId s1 = 0; s1 < n1; ++s1) {
        for (StateId s2 = 0; s2 < n2; ++s2) {
            if (related(s1, s2)) out.emplace_back(s1, s2);
        }
    }
    return out;
}

namespace {

class PairSet {
public:
    PairSet(std::span<const std::pair<StateId, StateId>> pairs, std::size_t n1, std::size_t n2)
        : n2_(n2), bits_(n1 * n2, false), valid_(true) {
        for (const auto& [s1, s2] : pairs) {
            if (s1 >= n1 || s2 >= n2) {
                valid_ = false;
                return;
            }
            bits_[static_cast<std::size_t>(s1) * n2 + s2] = true;
        }
    }

    bool valid() const { return valid_; }
    bool contains(StateId s1, StateId s2) const {
        return bits_[static_cast<std::size_t>(s1) * n2_ + s2];
    }

private:
    std::size_t n2_;
    std::vector<bool> bits_;
    bool valid_;
};

}  // namespace

bool verify_refinement(const Tsr& abstract, const Tsr& concrete,
                       std::span<const std::pair<StateId, StateId>> relation, bool safe) {
    auto [t1, t2] = align_alphabets(abstract, concrete);
    PairSet rel(relation, t1.states.size(), t2.states.size());
    if (!rel.valid() || !rel.contains(t1.initial, t2.initial)) return false;

    auto dead1 = deadlock_flags(t1);
    auto dead2 = deadlock_flags(t2);

    for (const auto& [s1, s2] : relation) {
        if (!subset(t1.responses[s1], t2.responses[s2])) return false;
        for (ActionId a : t1.responses[s1]) {
            StateId u1 = t1.target(s1, a);
            if (u1 == kNoState) continue;
            StateId u2 = t2.target(s2, a);
            if (u2 == kNoState || !rel.contains(u1, u2)) return false;
        }
        for (ActionId a = 0; a < t1.actions.size(); ++a) {
            StateId u2 = t2.target(s2, a);
            if (u2 == kNoState) continue;
            StateId u1 = t1.target(s1, a);
            if (u1 == kNoState || !rel.contains(u1, u2)) return false;
        }
        if (safe && dead2[s2] && !dead1[s1]) return false;
    }
    return true;
}

bool verify_mixts_refinement(const MixTs& abstract, const MixTs& concrete,
                             std::span<const std::pair<StateId, StateId>> relation) {
    auto [m1, m2] = align_alphabets(abstract, concrete);
    PairSet rel(relation, m1.states.size(), m2.states.size());
    if (!rel.valid() || !rel.contains(m1.initial, m2.initial)) return false;

    for (const auto& [s1, s2] : relation) {
        for (ActionId a = 0; a < m1.actions.size(); ++a) {
            StateId must1 = m1.must_target(s1, a);
            if (must1 != kNoState) {
                StateId must2 = m2.must_target(s2, a);
                if (must2 == kNoState || !rel.contains(must1, must2)) return false;
            }
            StateId may2 = m2.may_target(s2, a);
            if (may2 != kNoState) {
                StateId may1 = m1.may_target(s1, a);
                if (may1 == kNoState || !rel.contains(may1, may2)) return false;
            }
        }
    }
    return true;
}

}  // namespace tsrkit
