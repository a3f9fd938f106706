#include "tsrkit/core.hpp"

#include <algorithm>
#include <deque>

namespace tsrkit {

ActionId ActionTable::intern(std::string name) {
    auto it = lookup_.find(name);
    if (it != lookup_.end()) return it->second;
    ActionId id = static_cast<ActionId>(names_.size());
    lookup_.emplace(name, id);
    names_.push_back(std::move(name));
    return id;
}

std::optional<ActionId> ActionTable::find(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

bool Tsr::responds_to(StateId s, ActionId a) const {
    const auto& set = responses[s];
    return std::binary_search(set.begin(), set.end(), a);
}

StateId Tsr::run(const Trace& w) const {
    StateId s = initial;
    for (ActionId a : w.actions) {
        s = target(s, a);
        if (s == kNoState) return kNoState;
    }
    return s;
}

namespace {

struct DocIndex {
    ActionTable actions;
    std::vector<std::string> states;
    std::unordered_map<std::string, StateId> state_ids;
    StateId initial = kNoState;
};

DocIndex index_declarations(const SystemDoc& doc) {
    DocIndex ix;
    for (const auto& a : doc.actions) {
        if (ix.actions.find(a.text)) {
            throw ValidateError(ValidateCode::DuplicateName,
                                "action '" + a.text + "' declared twice", a.span);
        }
        ix.actions.intern(a.text);
    }
    for (const auto& s : doc.states) {
        if (ix.state_ids.count(s.text)) {
            throw ValidateError(ValidateCode::DuplicateName,
                                "state '" + s.text + "' declared twice", s.span);
        }
        ix.state_ids.emplace(s.text, static_cast<StateId>(ix.states.size()));
        ix.states.push_back(s.text);
    }
    if (!doc.initial) {
        throw ValidateError(ValidateCode::MissingInitial,
                            "document '" + doc.name.text + "' has no initial state");
    }
    auto it = ix.state_ids.find(doc.initial->text);
    if (it == ix.state_ids.end()) {
        throw ValidateError(ValidateCode::UndeclaredName,
                            "initial state '" + doc.initial->text + "' is not declared",
                            doc.initial->span);
    }
    ix.initial = it->second;
    return ix;
}

StateId require_state(const DocIndex& ix, const DocName& name) {
    auto it = ix.state_ids.find(name.text);
    if (it == ix.state_ids.end()) {
        throw ValidateError(ValidateCode::UndeclaredName,
                            "state '" + name.text + "' is not declared", name.span);
    }
    return it->second;
}

ActionId require_action(const DocIndex& ix, const DocName& name) {
    auto id = ix.actions.find(name.text);
    if (!id) {
        throw ValidateError(ValidateCode::UndeclaredName,
                            "action '" + name.text + "' is not declared", name.span);
    }
    return *id;
}

std::vector<std::vector<ActionId>> collect_responses(const SystemDoc& doc, const DocIndex& ix) {
    std::vector<std::vector<ActionId>> responses(ix.states.size());
    for (const auto& line : doc.responses) {
        StateId s = require_state(ix, line.state);
        for (const auto& a : line.actions) responses[s].push_back(require_action(ix, a));
    }
    for (auto& set : responses) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    return responses;
}

void place_edge(std::vector<StateId>& map, std::size_t n_actions, const DocIndex& ix,
                const DocEdge& edge, const char* label) {
    StateId src = require_state(ix, edge.src);
    ActionId act = require_action(ix, edge.action);
    StateId dst = require_state(ix, edge.dst);
    StateId& slot = map[src * n_actions + act];
    if (slot != kNoState) {
        throw ValidateError(ValidateCode::DuplicateTransition,
                            std::string("second ") + label + " transition from '" + edge.src.text
                                + "' on action '" + edge.action.text + "'",
                            edge.action.span);
    }
    slot = dst;
}

}  // namespace

Tsr validate_tsr(const SystemDoc& doc) {
    if (doc.kind != DocKind::Tsr) {
        throw ValidateError(ValidateCode::KindMismatch,
                            "document '" + doc.name.text + "' is not a tsr", doc.name.span);
    }
    DocIndex ix = index_declarations(doc);
    Tsr t;
    t.name = doc.name.text;
    t.actions = ix.actions;
    t.states = ix.states;
    t.initial = ix.initial;
    t.responses = collect_responses(doc, ix);
    t.delta.assign(t.states.size() * t.actions.size(), kNoState);
    for (const auto& edge : doc.edges) place_edge(t.delta, t.actions.size(), ix, edge, "tsr");
    return t;
}

MixTs validate_mixts(const SystemDoc& doc) {
    if (doc.kind != DocKind::MixTs) {
        throw ValidateError(ValidateCode::KindMismatch,
                            "document '" + doc.name.text + "' is not a mixts", doc.name.span);
    }
    DocIndex ix = index_declarations(doc);
    MixTs m;
    m.name = doc.name.text;
    m.actions = ix.actions;
    m.states = ix.states;
    m.initial = ix.initial;
    m.may.assign(m.states.size() * m.actions.size(), kNoState);
    m.must.assign(m.states.size() * m.actions.size(), kNoState);
    for (const auto& edge : doc.edges) {
        if (edge.kind == DocEdgeKind::May) {
            place_edge(m.may, m.actions.size(), ix, edge, "may");
        } else {
            place_edge(m.must, m.actions.size(), ix, edge, "must");
        }
    }
    return m;
}

std::vector<ActionId> may_set(const Tsr& t, StateId s) {
    std::vector<ActionId> out;
    for (ActionId a = 0; a < t.actions.size(); ++a) {
        if (t.has_transition(s, a)) out.push_back(a);
    }
    return out;
}

bool is_modal(const Tsr& t) {
    for (StateId s = 0; s < t.states.size(); ++s) {
        for (ActionId a : t.responses[s]) {
            if (!t.has_transition(s, a)) return false;
        }
    }
    return true;
}

bool is_modal(const MixTs& m) {
    for (std::size_t i = 0; i < m.must.size(); ++i) {
        if (m.must[i] != kNoState && m.may[i] != m.must[i]) return false;
    }
    return true;
}

namespace {

template <typename Successors>
std::vector<StateId> bfs_closure(StateId initial, std::size_t n_states, Successors&& successors) {
    std::vector<bool> seen(n_states, false);
    std::deque<StateId> queue;
    seen[initial] = true;
    queue.push_back(initial);
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        successors(s, [&](StateId t) {
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        });
    }
    std::vector<StateId> out;
    for (StateId s = 0; s < n_states; ++s) {
        if (seen[s]) out.push_back(s);
    }
    return out;
}

}  // namespace

std::vector<StateId> reachable_states(const Tsr& t) {
    return bfs_closure(t.initial, t.states.size(), [&](StateId s, auto&& visit) {
        for (ActionId a = 0; a < t.actions.size(); ++a) {
            StateId next = t.target(s, a);
            if (next != kNoState) visit(next);
        }
    });
}

std::vector<StateId> reachable_states(const MixTs& m) {
    return bfs_closure(m.initial, m.states.size(), [&](StateId s, auto&& visit) {
        for (ActionId a = 0; a < m.actions.size(); ++a) {
            StateId may = m.may_target(s, a);
            if (may != kNoState) visit(may);
            StateId must = m.must_target(s, a);
            if (must != kNoState) visit(must);
        }
    });
}

namespace {

ActionTable union_table(const ActionTable& a, const ActionTable& b, bool strict) {
    if (strict) {
        auto sorted = [](const std::vector<std::string>& v) {
            auto copy = v;
            std::sort(copy.begin(), copy.end());
            return copy;
        };
        if (sorted(a.names()) != sorted(b.names())) {
            throw AlphabetMismatchError("action tables differ and strict alignment was requested");
        }
    }
    ActionTable u;
    for (const auto& n : a.names()) u.intern(n);
    for (const auto& n : b.names()) u.intern(n);
    return u;
}

std::vector<StateId> remap_matrix(const std::vector<StateId>& old, std::size_t n_states,
                                  const ActionTable& from, const ActionTable& to) {
    std::vector<StateId> fresh(n_states * to.size(), kNoState);
    for (StateId s = 0; s < n_states; ++s) {
        for (ActionId a = 0; a < from.size(); ++a) {
            fresh[s * to.size() + *to.find(from.name(a))] = old[s * from.size() + a];
        }
    }
    return fresh;
}

Tsr reindex(const Tsr& t, const ActionTable& table) {
    if (t.actions == table) return t;
    Tsr out = t;
    out.actions = table;
    out.delta = remap_matrix(t.delta, t.states.size(), t.actions, table);
    for (StateId s = 0; s < t.states.size(); ++s) {
        std::vector<ActionId> set;
        for (ActionId a : t.responses[s]) set.push_back(*table.find(t.actions.name(a)));
        std::sort(set.begin(), set.end());
        out.responses[s] = std::move(set);
    }
    return out;
}

MixTs reindex(const MixTs& m, const ActionTable& table) {
    if (m.actions == table) return m;
    MixTs out = m;
    out.actions = table;
    out.may = remap_matrix(m.may, m.states.size(), m.actions, table);
    out.must = remap_matrix(m.must, m.states.size(), m.actions, table);
    return out;
}

}  // namespace

std::pair<Tsr, Tsr> align_alphabets(const Tsr& a, const Tsr& b, bool strict) {
    ActionTable u = union_table(a.actions, b.actions, strict);
    return {reindex(a, u), reindex(b, u)};
}

std::pair<MixTs, MixTs> align_alphabets(const MixTs& a, const MixTs& b, bool strict) {
    ActionTable u = union_table(a.actions, b.actions, strict);
    return {reindex(a, u), reindex(b, u)};
}

bool reachable_part_equal(const Tsr& a, const Tsr& b) {
    auto [ta, tb] = align_alphabets(a, b);
    if (ta.states[ta.initial] != tb.states[tb.initial]) return false;

    std::unordered_map<std::string, StateId> b_ids;
    for (StateId s = 0; s < tb.states.size(); ++s) b_ids.emplace(tb.states[s], s);

    auto reach_a = reachable_states(ta);
    auto reach_b = reachable_states(tb);
    if (reach_a.size() != reach_b.size()) return false;

    for (StateId sa : reach_a) {
        auto it = b_ids.find(ta.states[sa]);
        if (it == b_ids.end()) return false;
        StateId sb = it->second;
        if (ta.responses[sa] != tb.responses[sb]) return false;
        for (ActionId act = 0; act < ta.actions.size(); ++act) {
            StateId na = ta.target(sa, act);
            StateId nb = tb.target(sb, act);
            if ((na == kNoState) != (nb == kNoState)) return false;
            if (na != kNoState && ta.states[na] != tb.states[nb]) return false;
        }
    }
    return true;
}

bool same_content(const SystemDoc& a, const SystemDoc& b) {
    auto texts = [](const std::vector<DocName>& names) {
        std::vector<std::string> out;
        out.reserve(names.size());
        for (const auto& n : names) out.push_back(n.text);
        return out;
    };
    if (a.kind != b.kind || a.name.text != b.name.text) return false;
    if (texts(a.actions) != texts(b.actions) || texts(a.states) != texts(b.states)) return false;
    if (a.initial.has_value() != b.initial.has_value()) return false;
    if (a.initial && a.initial->text != b.initial->text) return false;
    if (a.responses.size() != b.responses.size() || a.edges.size() != b.edges.size()) return false;
    for (std::size_t i = 0; i < a.responses.size(); ++i) {
        if (a.responses[i].state.text != b.responses[i].state.text) return false;
        if (texts(a.responses[i].actions) != texts(b.responses[i].actions)) return false;
    }
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        const auto& ea = a.edges[i];
        const auto& eb = b.edges[i];
        if (ea.kind != eb.kind || ea.src.text != eb.src.text || ea.action.text != eb.action.text
            || ea.dst.text != eb.dst.text) {
            return false;
        }
    }
    return true;
}

}  // namespace tsrkit
