/// @file lexer.hpp
/// Tokenizer for the policy language. Keyword-only: anything word-shaped
/// that is not in the keyword table becomes an Identifier token and is left
/// for the parser to reject.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "egen/diagnostics.hpp"

namespace egen {

enum class TokenKind { Keyword, Identifier, Integer, Equals, LBrace, RBrace, End };

enum class Kw {
    AdaptationPolicy,
    Condition,
    Then,
    Adaptation,
    And,
    BatteryState,
    BatteryLevel,
    AppState,
    ThresholdHigh,
    ThresholdMedium,
    SensingInterval,
    DecreasingFactor, // `Decreasing_Factor` and `DecreasingFactor` both land here
    BatteryAwareFunction,
    Charging,
    Discharging,
    High,
    Medium,
    Low,
    Foreground,
    Background,
    Linear,
    Exponential,
};

struct Token {
    TokenKind kind = TokenKind::End;
    Kw keyword = Kw::And; // meaningful only when kind == Keyword
    std::string lexeme;
    std::int64_t int_value = 0; // meaningful only when kind == Integer
    Span span;
};

struct TokenizeResult {
    std::vector<Token> tokens; // always terminated by an End token
    std::vector<Diagnostic> diagnostics;
};

/// Splits source into tokens. Unknown characters produce E001 and are
/// skipped. Integers wider than 2^31-1 produce E012 and clamp. `//` line
/// comments and all whitespace are discarded.
TokenizeResult tokenize(std::string_view source);

/// Human-readable token description for diagnostics ("keyword 'AND'",
/// "integer '3000'", "'{'", "end of input").
std::string describe(const Token& t);

} // namespace egen
