#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tsrkit/analysis.hpp"
#include "tsrkit/convert.hpp"
#include "tsrkit/core.hpp"
#include "tsrkit/language.hpp"
#include "tsrkit/refine.hpp"
#include "tsrkit/textio.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace tsrkit;

// Exit codes: 0 when the queried property holds (or the command just
// succeeds), 1 when the property fails, 2 for usage, parse, or validation
// errors.
constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;

struct Report {
    bool json_mode = false;
    json data = json::object();
    std::vector<std::string> lines;
    std::optional<std::string> raw;  // verbatim payload (dot/convert/fmt text)
    int code = kExitHolds;

    void line(std::string text) { lines.push_back(std::move(text)); }

    int flush() const {
        if (json_mode) {
            std::cout << data.dump(2) << "\n";
        } else if (raw) {
            std::cout << *raw;
        } else {
            for (const auto& l : lines) std::cout << l << "\n";
        }
        return code;
    }
};

std::string join_names(const std::vector<StateId>& states, const std::vector<std::string>& names) {
    std::string out;
    for (StateId s : states) {
        if (!out.empty()) out += ' ';
        out += names[s];
    }
    return out;
}

// "label:" for an empty list, "label: x y z" otherwise.
std::string labeled(const std::string& label, const std::string& items) {
    return items.empty() ? label + ":" : label + ": " + items;
}

json names_json(const std::vector<StateId>& states, const std::vector<std::string>& names) {
    json out = json::array();
    for (StateId s : states) out.push_back(names[s]);
    return out;
}

json trace_json(const Trace& trace, const ActionTable& actions) {
    json out = json::array();
    for (ActionId a : trace.actions) out.push_back(actions.name(a));
    return out;
}

const Tsr& require_tsr(const std::variant<Tsr, MixTs>& sys, const std::string& path) {
    if (!std::holds_alternative<Tsr>(sys)) {
        throw Error("'" + path + "' is a mixts document; this command needs a tsr");
    }
    return std::get<Tsr>(sys);
}

MixTs as_mixts(const std::variant<Tsr, MixTs>& sys) {
    if (std::holds_alternative<MixTs>(sys)) return std::get<MixTs>(sys);
    return rm(std::get<Tsr>(sys));
}

void cmd_check(Report& report, const std::string& path) {
    auto sys = load_system(path);
    const bool is_tsr = std::holds_alternative<Tsr>(sys);
    const std::string name = is_tsr ? std::get<Tsr>(sys).name : std::get<MixTs>(sys).name;
    const std::size_t n_states =
        is_tsr ? std::get<Tsr>(sys).state_count() : std::get<MixTs>(sys).state_count();
    const std::size_t n_actions =
        is_tsr ? std::get<Tsr>(sys).action_count() : std::get<MixTs>(sys).action_count();

    report.data = {{"command", "check"},
                   {"kind", is_tsr ? "tsr" : "mixts"},
                   {"name", name},
                   {"states", n_states},
                   {"actions", n_actions},
                   {"valid", true}};
    report.line("kind: " + std::string(is_tsr ? "tsr" : "mixts"));
    report.line("name: " + name);
    report.line("states: " + std::to_string(n_states));
    report.line("actions: " + std::to_string(n_actions));
}

void cmd_modal(Report& report, const std::string& path) {
    auto sys = load_system(path);
    bool modal = std::holds_alternative<Tsr>(sys) ? is_modal(std::get<Tsr>(sys))
                                                  : is_modal(std::get<MixTs>(sys));
    report.data = {{"command", "modal"}, {"modal", modal}};
    report.line(std::string("modal: ") + (modal ? "true" : "false"));
    report.code = modal ? kExitHolds : kExitFails;
}

void cmd_deadlocks(Report& report, const std::string& path) {
    auto sys = load_system(path);
    const Tsr& t = require_tsr(sys, path);
    DeadlockReport dl = deadlock_states(t);
    report.data = {{"command", "deadlocks"},
                   {"deadlocked", names_json(dl.deadlocked, t.states)},
                   {"reachable_deadlocked", names_json(dl.reachable_deadlocked, t.states)},
                   {"deadlock_free", dl.deadlock_free}};
    report.line(labeled("deadlocked", join_names(dl.deadlocked, t.states)));
    report.line(labeled("reachable_deadlocked", join_names(dl.reachable_deadlocked, t.states)));
    report.line(std::string("deadlock_free: ") + (dl.deadlock_free ? "true" : "false"));
    report.code = dl.deadlock_free ? kExitHolds : kExitFails;
}

void emit_refinement(Report& report, const RefinementReport& result,
                     const std::vector<std::string>& left_states,
                     const std::vector<std::string>& right_states, bool safe,
                     std::optional<bool> oracle_agrees) {
    report.data["command"] = "refine";
    report.data["safe"] = safe;
    report.data["holds"] = result.holds;
    report.line(std::string("refinement: ") + (result.holds ? "holds" : "fails"));
    if (result.holds) {
        json rel = json::array();
        std::string rel_text;
        for (const auto& [s1, s2] : result.relation) {
            rel.push_back({left_states[s1], right_states[s2]});
            if (!rel_text.empty()) rel_text += ' ';
            rel_text += "(" + left_states[s1] + "," + right_states[s2] + ")";
        }
        report.data["relation"] = rel;
        report.line(labeled("relation", rel_text));
    }
    if (oracle_agrees) {
        report.data["oracle_agrees"] = *oracle_agrees;
        report.line(std::string("oracle: ") + (*oracle_agrees ? "agrees" : "DISAGREES"));
    }
    if (!result.holds) {
        const auto& ce = *result.counterexample;
        report.data["violation"] = std::string(to_string(ce.violation));
        report.data["pair"] = {left_states[ce.pair.first], right_states[ce.pair.second]};
        report.data["counterexample"] = trace_json(ce.trace, result.alphabet);
        json steps = json::array();
        for (StepKind kind : ce.steps) steps.push_back(kind == StepKind::Must ? "must" : "may");
        report.data["steps"] = steps;
        report.line("violation: " + std::string(to_string(ce.violation)));
        report.line("pair: (" + left_states[ce.pair.first] + "," + right_states[ce.pair.second]
                    + ")");
        report.line(labeled("counterexample", format_trace(ce.trace, result.alphabet)));
        report.code = kExitFails;
    }
}

void cmd_refine(Report& report, const std::string& abstract_path, const std::string& concrete_path,
                bool safe, bool oracle) {
    auto left = load_system(abstract_path);
    auto right = load_system(concrete_path);
    if (left.index() != right.index()) {
        throw Error("cannot check refinement between a tsr and a mixts; convert one side first");
    }

    if (std::holds_alternative<Tsr>(left)) {
        const Tsr& t1 = std::get<Tsr>(left);
        const Tsr& t2 = std::get<Tsr>(right);
        RefinementReport result = safe ? check_safe_refinement(t1, t2) : check_refinement(t1, t2);
        std::optional<bool> oracle_agrees;
        if (oracle) {
            auto gfp = greatest_refinement_relation(t1, t2, safe);
            bool member = std::binary_search(gfp.begin(), gfp.end(),
                                             std::pair{t1.initial, t2.initial});
            oracle_agrees = member == result.holds;
        }
        emit_refinement(report, result, t1.states, t2.states, safe, oracle_agrees);
        if (oracle_agrees && !*oracle_agrees) report.code = kExitError;
        return;
    }

    if (safe) throw Error("--safe applies to tsr inputs; deadlocks live on response sets");
    const MixTs& m1 = std::get<MixTs>(left);
    const MixTs& m2 = std::get<MixTs>(right);
    RefinementReport result = check_mixts_refinement(m1, m2);
    std::optional<bool> oracle_agrees;
    if (oracle) {
        auto gfp = greatest_mixts_refinement_relation(m1, m2);
        bool member =
            std::binary_search(gfp.begin(), gfp.end(), std::pair{m1.initial, m2.initial});
        oracle_agrees = member == result.holds;
    }
    emit_refinement(report, result, m1.states, m2.states, /*safe=*/false, oracle_agrees);
    if (oracle_agrees && !*oracle_agrees) report.code = kExitError;
}

void cmd_convert(Report& report, const std::string& path, const std::string& to) {
    auto sys = load_system(path);
    std::string text;
    if (to == "tsr") {
        text = std::holds_alternative<Tsr>(sys) ? serialize(std::get<Tsr>(sys))
                                                : serialize(mr(std::get<MixTs>(sys)));
    } else {
        text = std::holds_alternative<MixTs>(sys) ? serialize(std::get<MixTs>(sys))
                                                  : serialize(rm(std::get<Tsr>(sys)));
    }
    report.data = {{"command", "convert"}, {"to", to}, {"text", text}};
    report.raw = text;
}

void cmd_canon(Report& report, const std::string& path) {
    auto sys = load_system(path);
    if (!std::holds_alternative<MixTs>(sys)) {
        throw Error("'" + path + "' is a tsr document; canon takes a mixts");
    }
    std::string text = serialize(canonicalize(std::get<MixTs>(sys)));
    report.data = {{"command", "canon"}, {"text", text}};
    report.raw = text;
}

void cmd_iso(Report& report, const std::string& path1, const std::string& path2) {
    MixTs m1 = as_mixts(load_system(path1));
    MixTs m2 = as_mixts(load_system(path2));
    auto mapping = iso_check(m1, m2);
    report.data = {{"command", "iso"}, {"isomorphic", mapping.has_value()}};
    report.line(std::string("isomorphic: ") + (mapping ? "true" : "false"));
    if (mapping) {
        json pairs = json::array();
        for (const auto& [s1, s2] : *mapping) {
            pairs.push_back({m1.states[s1], m2.states[s2]});
            report.line(m1.states[s1] + " -> " + m2.states[s2]);
        }
        report.data["mapping"] = pairs;
    } else {
        report.code = kExitFails;
    }
}

void cmd_lang_empty(Report& report, const std::string& path) {
    auto sys = load_system(path);
    const Tsr& t = require_tsr(sys, path);
    EmptinessResult result = is_empty(t);
    report.data = {{"command", "lang empty"}, {"empty", result.empty}};
    report.line(std::string("empty: ") + (result.empty ? "true" : "false"));
    if (!result.empty) {
        report.data["counterexample"] = trace_json(*result.witness, t.actions);
        report.line(labeled("counterexample", format_trace(*result.witness, t.actions)));
        report.code = kExitFails;
    }
}

void cmd_lang_member(Report& report, const std::string& path,
                     const std::vector<std::string>& word) {
    auto sys = load_system(path);
    const Tsr& t = require_tsr(sys, path);
    Trace trace;
    for (const auto& name : word) {
        auto id = t.actions.find(name);
        if (!id) throw UnknownActionError("action '" + name + "' is not in the alphabet");
        trace.actions.push_back(*id);
    }
    bool accepted = accepts(t, trace);
    report.data = {{"command", "lang member"},
                   {"word", trace_json(trace, t.actions)},
                   {"accepted", accepted}};
    report.line(std::string("accepted: ") + (accepted ? "true" : "false"));
    report.code = accepted ? kExitHolds : kExitFails;
}

void cmd_lang_includes(Report& report, const std::string& abstract_path,
                       const std::string& concrete_path) {
    const Tsr t1 = require_tsr(load_system(abstract_path), abstract_path);
    const Tsr t2 = require_tsr(load_system(concrete_path), concrete_path);
    InclusionResult result = includes(t1, t2);
    report.data = {{"command", "lang includes"}, {"included", result.included}};
    report.line(std::string("included: ") + (result.included ? "true" : "false"));
    if (!result.included) {
        report.data["counterexample"] = trace_json(*result.counterexample, result.alphabet);
        report.line(labeled("counterexample", format_trace(*result.counterexample, result.alphabet)));
        report.code = kExitFails;
    }
}

void cmd_lang_equiv(Report& report, const std::string& path1, const std::string& path2) {
    const Tsr t1 = require_tsr(load_system(path1), path1);
    const Tsr t2 = require_tsr(load_system(path2), path2);
    EquivalenceResult result = equivalent(t1, t2);
    report.data = {{"command", "lang equiv"}, {"equivalent", result.equivalent}};
    report.line(std::string("equivalent: ") + (result.equivalent ? "true" : "false"));
    if (!result.equivalent) {
        report.data["counterexample_in"] = result.counterexample_in_first ? "first" : "second";
        report.data["counterexample"] = trace_json(*result.counterexample, result.alphabet);
        report.line(std::string("counterexample_in: ")
                    + (result.counterexample_in_first ? "first" : "second"));
        report.line(labeled("counterexample", format_trace(*result.counterexample, result.alphabet)));
        report.code = kExitFails;
    }
}

void cmd_lang_enum(Report& report, const std::string& path, std::size_t maxlen) {
    auto sys = load_system(path);
    const Tsr& t = require_tsr(sys, path);
    auto words = enumerate_words(t, maxlen);
    json list = json::array();
    for (const auto& w : words) {
        list.push_back(trace_json(w, t.actions));
        report.line(w.actions.empty() ? "ε" : format_trace(w, t.actions));
    }
    report.data = {{"command", "lang enum"}, {"maxlen", maxlen}, {"words", list}};
}

void cmd_dot(Report& report, const std::string& path) {
    auto sys = load_system(path);
    std::string text = std::holds_alternative<Tsr>(sys) ? export_dot(std::get<Tsr>(sys))
                                                        : export_dot(std::get<MixTs>(sys));
    report.data = {{"command", "dot"}, {"text", text}};
    report.raw = text;
}

void cmd_fmt(Report& report, const std::string& path, bool in_place) {
    auto sys = load_system(path);
    std::string text = std::holds_alternative<Tsr>(sys) ? serialize(std::get<Tsr>(sys))
                                                        : serialize(std::get<MixTs>(sys));
    if (in_place) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + path + "'");
        out << text;
        report.data = {{"command", "fmt"}, {"written", path}};
        report.raw = "";
    } else {
        report.data = {{"command", "fmt"}, {"text", text}};
        report.raw = text;
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Analysis toolkit for transition systems with responses"};
    app.require_subcommand(1);
    // Let --json appear before or after the subcommand.
    app.fallthrough();
    bool json_mode = false;
    app.add_flag("--json", json_mode, "Emit a machine-readable report on stdout");

    Report report;

    std::string path;
    std::string path2;
    bool safe = false;
    bool oracle = false;
    std::string to;
    bool in_place = false;
    std::vector<std::string> word;
    std::size_t maxlen = 6;

    auto* check = app.add_subcommand("check", "Parse and validate a system file");
    check->add_option("file", path)->required();
    check->callback([&] { cmd_check(report, path); });

    auto* modal = app.add_subcommand("modal", "Is every response action also possible?");
    modal->add_option("file", path)->required();
    modal->callback([&] { cmd_modal(report, path); });

    auto* deadlocks = app.add_subcommand("deadlocks", "Report deadlocked states of a tsr");
    deadlocks->add_option("file", path)->required();
    deadlocks->callback([&] { cmd_deadlocks(report, path); });

    auto* refine = app.add_subcommand("refine", "Does CONCRETE refine ABSTRACT?");
    refine->add_option("abstract", path)->required();
    refine->add_option("concrete", path2)->required();
    refine->add_flag("--safe", safe, "Additionally require deadlock reflection");
    refine->add_flag("--oracle", oracle, "Cross-check with the fixpoint relation");
    refine->callback([&] { cmd_refine(report, path, path2, safe, oracle); });

    auto* convert = app.add_subcommand("convert", "Convert between tsr and mixts");
    convert->add_option("file", path)->required();
    convert->add_option("--to", to, "Target kind")
        ->required()
        ->check(CLI::IsMember({"tsr", "mixts"}));
    convert->callback([&] { cmd_convert(report, path, to); });

    auto* canon = app.add_subcommand("canon", "Canonicalize a mixts");
    canon->add_option("file", path)->required();
    canon->callback([&] { cmd_canon(report, path); });

    auto* iso = app.add_subcommand("iso", "Reachable-part isomorphism (tsr inputs are lifted)");
    iso->add_option("file1", path)->required();
    iso->add_option("file2", path2)->required();
    iso->callback([&] { cmd_iso(report, path, path2); });

    auto* lang = app.add_subcommand("lang", "Finite-trace language queries");
    lang->require_subcommand(1);

    auto* lang_empty = lang->add_subcommand("empty", "Is the language empty?");
    lang_empty->add_option("file", path)->required();
    lang_empty->callback([&] { cmd_lang_empty(report, path); });

    auto* lang_member = lang->add_subcommand("member", "Is the given word accepted?");
    lang_member->add_option("file", path)->required();
    lang_member->add_option("action", word, "Word, one action per argument");
    lang_member->callback([&] { cmd_lang_member(report, path, word); });

    auto* lang_includes = lang->add_subcommand("includes", "Is L(CONCRETE) within L(ABSTRACT)?");
    lang_includes->add_option("abstract", path)->required();
    lang_includes->add_option("concrete", path2)->required();
    lang_includes->callback([&] { cmd_lang_includes(report, path, path2); });

    auto* lang_equiv = lang->add_subcommand("equiv", "Do two systems accept the same words?");
    lang_equiv->add_option("file1", path)->required();
    lang_equiv->add_option("file2", path2)->required();
    lang_equiv->callback([&] { cmd_lang_equiv(report, path, path2); });

    auto* lang_enum = lang->add_subcommand("enum", "List accepted words up to a length bound");
    lang_enum->add_option("file", path)->required();
    lang_enum->add_option("--maxlen", maxlen, "Maximum word length")->capture_default_str();
    lang_enum->callback([&] { cmd_lang_enum(report, path, maxlen); });

    auto* dot = app.add_subcommand("dot", "Export to graphviz dot");
    dot->add_option("file", path)->required();
    dot->callback([&] { cmd_dot(report, path); });

    auto* fmt = app.add_subcommand("fmt", "Reformat a file canonically");
    fmt->add_option("file", path)->required();
    fmt->add_flag("-i,--in-place", in_place, "Rewrite the file instead of printing");
    fmt->callback([&] { cmd_fmt(report, path, in_place); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int cli_code = app.exit(e);
        return cli_code == 0 ? 0 : kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }

    report.json_mode = json_mode;
    return report.flush();
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
