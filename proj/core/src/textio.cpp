#include "tsrkit/textio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tsrkit {

namespace {

struct Token {
    std::string text;
    Span span;
    bool colon = false;
};

bool bare_name_char(char c, bool first) {
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return true;
    return !first && std::isdigit(static_cast<unsigned char>(c));
}

bool is_bare_name(std::string_view text) {
    if (text.empty()) return false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!bare_name_char(text[i], i == 0)) return false;
    }
    return true;
}

std::vector<Token> tokenize_line(std::string_view line, int line_no) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') break;
        Span span{line_no, static_cast<int>(i) + 1};
        if (c == ':') {
            tokens.push_back({":", span, true});
            ++i;
            continue;
        }
        if (c == '"') {
            std::string text;
            ++i;
            bool closed = false;
            while (i < line.size()) {
                char d = line[i];
                if (d == '\\') {
                    if (i + 1 >= line.size() || (line[i + 1] != '"' && line[i + 1] != '\\')) {
                        throw ParseError("bad escape in quoted name", {line_no, (int)i + 1});
                    }
                    text += line[i + 1];
                    i += 2;
                } else if (d == '"') {
                    closed = true;
                    ++i;
                    break;
                } else {
                    text += d;
                    ++i;
                }
            }
            if (!closed) throw ParseError("unterminated quoted name", span);
            tokens.push_back({std::move(text), span, false});
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r'
               && line[i] != '#' && line[i] != ':' && line[i] != '"') {
            ++i;
        }
        std::string text(line.substr(start, i - start));
        if (!is_bare_name(text)) {
            throw ParseError("'" + text + "' is not a valid name", span);
        }
        tokens.push_back({std::move(text), span, false});
    }
    return tokens;
}

DocName name_of(const Token& token) {
    if (token.colon) throw ParseError("expected a name, found ':'", token.span);
    return {token.text, token.span};
}

std::string quote_if_needed(const std::string& name) {
    if (is_bare_name(name)) return name;
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

SystemDoc parse(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    SystemDoc doc;
    bool have_kind = false;
    bool have_name = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        auto tokens = tokenize_line(line, line_no);
        if (tokens.empty()) continue;
        const Token& head = tokens.front();
        Span span = head.span;

        auto names = [&](std::size_t from) {
            std::vector<DocName> out;
            for (std::size_t i = from; i < tokens.size(); ++i) out.push_back(name_of(tokens[i]));
            return out;
        };
        auto expect_arity = [&](std::size_t n, const char* what) {
            if (tokens.size() != n + 1) {
                throw ParseError(std::string("'") + head.text + "' takes " + what, span);
            }
        };

        if (!have_kind) {
            if (head.text != "kind") throw ParseError("expected 'kind tsr' or 'kind mixts'", span);
            expect_arity(1, "one argument");
            const std::string& k = tokens[1].text;
            if (k == "tsr") {
                doc.kind = DocKind::Tsr;
            } else if (k == "mixts") {
                doc.kind = DocKind::MixTs;
            } else {
                throw ParseError("unknown kind '" + k + "'", tokens[1].span);
            }
            have_kind = true;
            continue;
        }
        if (!have_name) {
            if (head.text != "system") throw ParseError("expected 'system NAME'", span);
            expect_arity(1, "one argument");
            doc.name = name_of(tokens[1]);
            have_name = true;
            continue;
        }

        if (head.text == "actions" || head.text == "states") {
            if (tokens.size() < 2) {
                throw ParseError("'" + head.text + "' needs at least one name", span);
            }
            auto list = names(1);
            auto& target = head.text == "actions" ? doc.actions : doc.states;
            target.insert(target.end(), list.begin(), list.end());
        } else if (head.text == "initial") {
            expect_arity(1, "one argument");
            if (doc.initial) throw ParseError("initial state declared twice", span);
            doc.initial = name_of(tokens[1]);
        } else if (head.text == "responses") {
            if (tokens.size() < 3 || !tokens[2].colon) {
                throw ParseError("'responses' takes a state, ':', then actions", span);
            }
            DocResponses line_resp;
            line_resp.state = name_of(tokens[1]);
            for (std::size_t i = 3; i < tokens.size(); ++i) {
                line_resp.actions.push_back(name_of(tokens[i]));
            }
            doc.responses.push_back(std::move(line_resp));
        } else if (head.text == "trans" || head.text == "may" || head.text == "must") {
            expect_arity(3, "source, action, target");
            DocEdgeKind kind = head.text == "trans"  ? DocEdgeKind::Trans
                               : head.text == "may"  ? DocEdgeKind::May
                                                     : DocEdgeKind::Must;
            if (doc.kind == DocKind::Tsr && kind != DocEdgeKind::Trans) {
                throw ParseError("'" + head.text + "' is only valid in a mixts document", span);
            }
            if (doc.kind == DocKind::MixTs && kind == DocEdgeKind::Trans) {
                throw ParseError("'trans' is only valid in a tsr document", span);
            }
            doc.edges.push_back({kind, name_of(tokens[1]), name_of(tokens[2]), name_of(tokens[3])});
        } else {
            throw ParseError("unknown directive '" + head.text + "'", span);
        }
    }

    if (!have_kind) throw ParseError("empty document: expected 'kind tsr' or 'kind mixts'", {1, 1});
    if (!have_name) throw ParseError("missing 'system NAME' line", {line_no, 1});
    return doc;
}

SystemDoc parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

namespace {

std::string serialize_doc(const SystemDoc& doc) {
    // Unknown names sort after declared ones so serialization stays total on
    // unvalidated documents.
    std::map<std::string, std::size_t> action_rank;
    std::map<std::string, std::size_t> state_rank;
    for (const auto& a : doc.actions) action_rank.emplace(a.text, action_rank.size());
    for (const auto& s : doc.states) state_rank.emplace(s.text, state_rank.size());
    auto rank = [](const std::map<std::string, std::size_t>& ranks, const std::string& name) {
        auto it = ranks.find(name);
        return it == ranks.end() ? std::pair{ranks.size(), name} : std::pair{it->second, name};
    };

    std::ostringstream out;
    out << "kind " << (doc.kind == DocKind::Tsr ? "tsr" : "mixts") << "\n";
    out << "system " << quote_if_needed(doc.name.text) << "\n";
    if (!doc.actions.empty()) {
        out << "actions";
        for (const auto& a : doc.actions) out << ' ' << quote_if_needed(a.text);
        out << "\n";
    }
    if (!doc.states.empty()) {
        out << "states";
        for (const auto& s : doc.states) out << ' ' << quote_if_needed(s.text);
        out << "\n";
    }
    if (doc.initial) out << "initial " << quote_if_needed(doc.initial->text) << "\n";

    std::map<std::string, std::vector<std::string>> responses;
    for (const auto& line : doc.responses) {
        auto& set = responses[line.state.text];
        for (const auto& a : line.actions) set.push_back(a.text);
    }
    std::vector<std::pair<std::size_t, const std::string*>> response_order;
    for (auto& [state, set] : responses) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty()) continue;
        response_order.emplace_back(rank(state_rank, state).first, &state);
    }
    std::sort(response_order.begin(), response_order.end(),
              [](const auto& a, const auto& b) {
                  return a.first != b.first ? a.first < b.first : *a.second < *b.second;
              });
    for (const auto& [_, state] : response_order) {
        out << "responses " << quote_if_needed(*state) << " :";
        for (const auto& a : responses[*state]) out << ' ' << quote_if_needed(a);
        out << "\n";
    }

    auto edges = doc.edges;
    std::stable_sort(edges.begin(), edges.end(), [&](const DocEdge& a, const DocEdge& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        auto ka = std::tuple{rank(state_rank, a.src.text), rank(action_rank, a.action.text)};
        auto kb = std::tuple{rank(state_rank, b.src.text), rank(action_rank, b.action.text)};
        return ka < kb;
    });
    for (const auto& e : edges) {
        const char* keyword = e.kind == DocEdgeKind::Trans ? "trans"
                              : e.kind == DocEdgeKind::May ? "may"
                                                           : "must";
        out << keyword << ' ' << quote_if_needed(e.src.text) << ' '
            << quote_if_needed(e.action.text) << ' ' << quote_if_needed(e.dst.text) << "\n";
    }
    return out.str();
}

}  // namespace

std::string serialize(const SystemDoc& doc) { return serialize_doc(doc); }

SystemDoc to_doc(const Tsr& t) {
    SystemDoc doc;
    doc.kind = DocKind::Tsr;
    doc.name = {t.name, {}};
    for (const auto& a : t.actions.names()) doc.actions.push_back({a, {}});
    for (const auto& s : t.states) doc.states.push_back({s, {}});
    doc.initial = DocName{t.states[t.initial], {}};
    for (StateId s = 0; s < t.states.size(); ++s) {
        if (t.responses[s].empty()) continue;
        DocResponses line;
        line.state = {t.states[s], {}};
        std::vector<std::string> names;
        for (ActionId a : t.responses[s]) names.push_back(t.actions.name(a));
        std::sort(names.begin(), names.end());
        for (auto& n : names) line.actions.push_back({std::move(n), {}});
        doc.responses.push_back(std::move(line));
    }
    for (StateId s = 0; s < t.states.size(); ++s) {
        for (ActionId a = 0; a < t.actions.size(); ++a) {
            StateId target = t.target(s, a);
            if (target == kNoState) continue;
            doc.edges.push_back({DocEdgeKind::Trans,
                                 {t.states[s], {}},
                                 {t.actions.name(a), {}},
                                 {t.states[target], {}}});
        }
    }
    return doc;
}

SystemDoc to_doc(const MixTs& m) {
    SystemDoc doc;
    doc.kind = DocKind::MixTs;
    doc.name = {m.name, {}};
    for (const auto& a : m.actions.names()) doc.actions.push_back({a, {}});
    for (const auto& s : m.states) doc.states.push_back({s, {}});
    doc.initial = DocName{m.states[m.initial], {}};
    auto emit = [&](const std::vector<StateId>& map, DocEdgeKind kind) {
        for (StateId s = 0; s < m.states.size(); ++s) {
            for (ActionId a = 0; a < m.actions.size(); ++a) {
                StateId target = map[s * m.actions.size() + a];
                if (target == kNoState) continue;
                doc.edges.push_back(
                    {kind, {m.states[s], {}}, {m.actions.name(a), {}}, {m.states[target], {}}});
            }
        }
    };
    emit(m.may, DocEdgeKind::May);
    emit(m.must, DocEdgeKind::Must);
    return doc;
}

std::string serialize(const Tsr& t) { return serialize_doc(to_doc(t)); }
std::string serialize(const MixTs& m) { return serialize_doc(to_doc(m)); }

namespace {

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void dot_header(std::ostringstream& out, const std::string& name, StateId initial,
                const std::vector<std::string>& states) {
    out << "digraph \"" << dot_escape(name) << "\" {\n";
    out << "  rankdir=LR;\n";
    out << "  __start [shape=none, label=\"\"];\n";
    out << "  __start -> \"" << dot_escape(states[initial]) << "\";\n";
}

}  // namespace

std::string export_dot(const Tsr& t) {
    std::ostringstream out;
    dot_header(out, t.name, t.initial, t.states);
    for (StateId s = 0; s < t.states.size(); ++s) {
        out << "  \"" << dot_escape(t.states[s]) << "\" [label=\"" << dot_escape(t.states[s]);
        if (!t.responses[s].empty()) {
            std::vector<std::string> names;
            for (ActionId a : t.responses[s]) names.push_back(t.actions.name(a));
            std::sort(names.begin(), names.end());
            out << "\\n□{";
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (i > 0) out << ',';
                out << dot_escape(names[i]);
            }
            out << "}";
        }
        out << "\"];\n";
    }
    for (StateId s = 0; s < t.states.size(); ++s) {
        for (ActionId a = 0; a < t.actions.size(); ++a) {
            StateId target = t.target(s, a);
            if (target == kNoState) continue;
            out << "  \"" << dot_escape(t.states[s]) << "\" -> \"" << dot_escape(t.states[target])
                << "\" [label=\"" << dot_escape(t.actions.name(a)) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const MixTs& m) {
    std::ostringstream out;
    dot_header(out, m.name, m.initial, m.states);
    for (const auto& s : m.states) {
        out << "  \"" << dot_escape(s) << "\" [label=\"" << dot_escape(s) << "\"];\n";
    }
    auto edges = [&](const std::vector<StateId>& map, const char* style) {
        for (StateId s = 0; s < m.states.size(); ++s) {
            for (ActionId a = 0; a < m.actions.size(); ++a) {
                StateId target = map[s * m.actions.size() + a];
                if (target == kNoState) continue;
                out << "  \"" << dot_escape(m.states[s]) << "\" -> \""
                    << dot_escape(m.states[target]) << "\" [label=\""
                    << dot_escape(m.actions.name(a)) << "\"" << style << "];\n";
            }
        }
    };
    // Must transitions render solid, may transitions dashed.
    edges(m.must, ", style=solid");
    edges(m.may, ", style=dashed");
    out << "}\n";
    return out.str();
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json responses_json(const Tsr& t) {
    ordered_json obj = ordered_json::object();
    for (StateId s = 0; s < t.states.size(); ++s) {
        std::vector<std::string> names;
        for (ActionId a : t.responses[s]) names.push_back(t.actions.name(a));
        std::sort(names.begin(), names.end());
        obj[t.states[s]] = names;
    }
    return obj;
}

ordered_json edges_json(const std::vector<StateId>& map, const std::vector<std::string>& states,
                        const ActionTable& actions) {
    ordered_json list = ordered_json::array();
    for (StateId s = 0; s < states.size(); ++s) {
        for (ActionId a = 0; a < actions.size(); ++a) {
            StateId target = map[s * actions.size() + a];
            if (target == kNoState) continue;
            list.push_back({{"from", states[s]}, {"action", actions.name(a)}, {"to", states[target]}});
        }
    }
    return list;
}

}  // namespace

std::string export_json(const Tsr& t) {
    ordered_json doc{{"kind", "tsr"},
                     {"name", t.name},
                     {"actions", t.actions.names()},
                     {"states", t.states},
                     {"initial", t.states[t.initial]},
                     {"responses", responses_json(t)},
                     {"trans", edges_json(t.delta, t.states, t.actions)}};
    return doc.dump(2) + "\n";
}

std::string export_json(const MixTs& m) {
    ordered_json doc{{"kind", "mixts"},
                     {"name", m.name},
                     {"actions", m.actions.names()},
                     {"states", m.states},
                     {"initial", m.states[m.initial]},
                     {"may", edges_json(m.may, m.states, m.actions)},
                     {"must", edges_json(m.must, m.states, m.actions)}};
    return doc.dump(2) + "\n";
}

std::variant<Tsr, MixTs> load_system(const std::string& path) {
    SystemDoc doc = parse_file(path);
    if (doc.kind == DocKind::Tsr) return validate_tsr(doc);
    return validate_mixts(doc);
}

std::string format_trace(const Trace& trace, const ActionTable& actions) {
    std::string out;
    for (std::size_t i = 0; i < trace.actions.size(); ++i) {
        if (i > 0) out += ' ';
        out += actions.name(trace.actions[i]);
    }
    return out;
}

}  // namespace tsrkit
