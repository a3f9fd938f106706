#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "tsrkit/core.hpp"
#include "tsrkit/sysdoc.hpp"

namespace tsrkit {

// Line-based textual format. '#' starts a comment, names are bare
// identifiers or double-quoted strings (\" and \\ escapes). The first two
// effective lines must be `kind tsr|mixts` and `system NAME`; the remaining
// lines declare actions, states, the initial state, responses and
// transitions in any order.
SystemDoc parse(std::string_view text);
SystemDoc parse_file(const std::string& path);

// Canonical text: states and actions in declaration order, response actions
// sorted by name, transition lines sorted by (source, action) declaration
// ids. parse(serialize(doc)) reproduces the document content.
std::string serialize(const SystemDoc& doc);
std::string serialize(const Tsr& t);
std::string serialize(const MixTs& m);

SystemDoc to_doc(const Tsr& t);
SystemDoc to_doc(const MixTs& m);

// Graphviz rendering: response sets annotate the state label, must edges are
// solid and may edges dashed.
std::string export_dot(const Tsr& t);
std::string export_dot(const MixTs& m);

// JSON object mirroring the validated structure field-for-field.
std::string export_json(const Tsr& t);
std::string export_json(const MixTs& m);

// Parses and validates in one step, dispatching on the document kind.
std::variant<Tsr, MixTs> load_system(const std::string& path);

// Space-separated action names.
std::string format_trace(const Trace& trace, const ActionTable& actions);

}  // namespace tsrkit
