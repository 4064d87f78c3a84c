/// @file parser.hpp
/// Recursive-descent parser producing a PolicyModel plus diagnostics.

#pragma once

#include <string>
#include <string_view>

#include "egen/ast.hpp"
#include "egen/diagnostics.hpp"

namespace egen {

struct ParseResult {
    PolicyModel model;
    std::vector<Diagnostic> diagnostics;

    /// True when no Error-severity diagnostic was produced.
    bool ok() const { return !has_errors(diagnostics); }
};

/// Parses a whole source buffer. On a syntax error inside a policy the
/// parser records a diagnostic and resynchronises at the next
/// `AdaptationPolicy` keyword, so later policies still parse; progress is
/// strictly monotone so malformed input cannot loop. `source_name` is kept
/// on the model for rendering diagnostics and for generated-file headers.
ParseResult parse(std::string_view source, std::string source_name = "");

} // namespace egen
