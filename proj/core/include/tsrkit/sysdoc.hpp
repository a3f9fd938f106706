#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsrkit {

// 1-based source position; {0,0} means "no position" (synthetic documents).
struct Span {
    int line = 0;
    int column = 0;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lexical or grammatical problem in the textual format.
class ParseError : public Error {
public:
    ParseError(const std::string& message, Span span)
        : Error(message + " (line " + std::to_string(span.line) + ", column "
                + std::to_string(span.column) + ")"),
          span_(span) {}

    Span span() const { return span_; }

private:
    Span span_;
};

enum class ValidateCode {
    DuplicateTransition,
    UndeclaredName,
    MissingInitial,
    DuplicateName,
    KindMismatch,
};

// Well-formed document that violates a structural invariant of the model.
class ValidateError : public Error {
public:
    ValidateError(ValidateCode code, const std::string& message, Span span = {})
        : Error(span.line > 0 ? message + " (line " + std::to_string(span.line) + ", column "
                                    + std::to_string(span.column) + ")"
                              : message),
          code_(code),
          span_(span) {}

    ValidateCode code() const { return code_; }
    Span span() const { return span_; }

private:
    ValidateCode code_;
    Span span_;
};

class UnknownActionError : public Error {
public:
    using Error::Error;
};

class AlphabetMismatchError : public Error {
public:
    using Error::Error;
};

class NotARefinementError : public Error {
public:
    using Error::Error;
};

class ResourceLimitError : public Error {
public:
    using Error::Error;
};

enum class DocKind { Tsr, MixTs };

enum class DocEdgeKind { Trans, May, Must };

struct DocName {
    std::string text;
    Span span;
};

struct DocResponses {
    DocName state;
    std::vector<DocName> actions;
};

struct DocEdge {
    DocEdgeKind kind = DocEdgeKind::Trans;
    DocName src;
    DocName action;
    DocName dst;
};

// Parsed, unvalidated system description. Declaration order is preserved;
// every name carries the source span it was read from.
struct SystemDoc {
    DocKind kind = DocKind::Tsr;
    DocName name;
    std::vector<DocName> actions;
    std::vector<DocName> states;
    std::optional<DocName> initial;
    std::vector<DocResponses> responses;
    std::vector<DocEdge> edges;
};

// Content comparison that ignores source spans.
bool same_content(const SystemDoc& a, const SystemDoc& b);

}  // namespace tsrkit
