#include "egen/lexer.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <utility>

namespace egen {

namespace {

constexpr std::int64_t kMaxInt = 2147483647; // 2^31 - 1

constexpr std::array<std::pair<const char*, Kw>, 23> kKeywords{{
    {"AdaptationPolicy", Kw::AdaptationPolicy},
    {"Condition", Kw::Condition},
    {"then", Kw::Then},
    {"Adaptation", Kw::Adaptation},
    {"AND", Kw::And},
    {"BatteryState", Kw::BatteryState},
    {"BatteryLevel", Kw::BatteryLevel},
    {"AppState", Kw::AppState},
    {"Threshold_High", Kw::ThresholdHigh},
    {"Threshold_Medium", Kw::ThresholdMedium},
    {"SensingInterval", Kw::SensingInterval},
    {"Decreasing_Factor", Kw::DecreasingFactor},
    {"DecreasingFactor", Kw::DecreasingFactor},
    {"BatteryAwareFunction", Kw::BatteryAwareFunction},
    {"Charging", Kw::Charging},
    {"Discharging", Kw::Discharging},
    {"High", Kw::High},
    {"Medium", Kw::Medium},
    {"Low", Kw::Low},
    {"Foreground", Kw::Foreground},
    {"Background", Kw::Background},
    {"Linear", Kw::Linear},
    {"Exponential", Kw::Exponential},
}};

bool word_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

} // namespace

std::string describe(const Token& t) {
    switch (t.kind) {
    case TokenKind::Keyword: return "keyword '" + t.lexeme + "'";
    case TokenKind::Identifier: return "identifier '" + t.lexeme + "'";
    case TokenKind::Integer: return "integer '" + t.lexeme + "'";
    case TokenKind::Equals: return "'='";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    default: return "end of input";
    }
}

TokenizeResult tokenize(std::string_view source) {
    TokenizeResult result;
    std::size_t pos = 0;
    int line = 1;
    int column = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (source[pos] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++pos;
        }
    };

    auto push = [&](TokenKind kind, std::size_t begin, int l, int c, std::string lexeme) {
        Token t;
        t.kind = kind;
        t.lexeme = std::move(lexeme);
        t.span = Span{begin, pos, l, c};
        result.tokens.push_back(std::move(t));
    };

    while (pos < source.size()) {
        char c = source[pos];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && pos + 1 < source.size() && source[pos + 1] == '/') {
            while (pos < source.size() && source[pos] != '\n') advance(1);
            continue;
        }

        std::size_t begin = pos;
        int l = line;
        int col = column;

        if (c == '{' || c == '}' || c == '=') {
            advance(1);
            TokenKind kind = c == '{'   ? TokenKind::LBrace
                             : c == '}' ? TokenKind::RBrace
                                        : TokenKind::Equals;
            push(kind, begin, l, col, std::string(1, c));
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos < source.size() && std::isdigit(static_cast<unsigned char>(source[pos])))
                advance(1);
            std::string lexeme(source.substr(begin, pos - begin));
            std::int64_t value = 0;
            bool overflow = false;
            for (char d : lexeme) {
                value = value * 10 + (d - '0');
                if (value > kMaxInt) {
                    overflow = true;
                    value = kMaxInt; // clamp so one bad literal does not cascade
                    break;
                }
            }
            if (overflow) {
                result.diagnostics.push_back(
                    {Severity::Error, "E012",
                     "integer literal '" + lexeme + "' exceeds 2147483647",
                     Span{begin, pos, l, col}});
            }
            push(TokenKind::Integer, begin, l, col, lexeme);
            result.tokens.back().int_value = value;
            continue;
        }

        if (word_start(c)) {
            while (pos < source.size() && word_char(source[pos])) advance(1);
            std::string lexeme(source.substr(begin, pos - begin));
            TokenKind kind = TokenKind::Identifier;
            Kw kw = Kw::And;
            for (const auto& [text, k] : kKeywords) {
                if (lexeme == text) {
                    kind = TokenKind::Keyword;
                    kw = k;
                    break;
                }
            }
            push(kind, begin, l, col, std::move(lexeme));
            result.tokens.back().keyword = kw;
            continue;
        }

        advance(1);
        result.diagnostics.push_back({Severity::Error, "E001",
                                      std::string("unexpected character '") + c + "'",
                                      Span{begin, pos, l, col}});
    }

    Token end;
    end.kind = TokenKind::End;
    end.span = Span{pos, pos, line, column};
    result.tokens.push_back(std::move(end));
    return result;
}

} // namespace egen
