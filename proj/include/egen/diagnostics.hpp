/// @file diagnostics.hpp
/// Span-carrying diagnostics shared by the parser, validator, and code
/// generator.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace egen {

/// Half-open byte range into the original source text, plus the 1-based
/// line/column of the range start. Tabs count as one column.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;
};

enum class Severity { Error, Warning };

/// A single finding with a short stable code (E001, V003, EGEN-G02, ...).
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    Span span;
};

bool has_errors(const std::vector<Diagnostic>& diags);

/// Renders one diagnostic as `file:line:col: error[CODE]: message`.
std::string render(const Diagnostic& d, const std::string& file);

} // namespace egen
