#include "egen/parser.hpp"

#include <algorithm>
#include <initializer_list>

#include "egen/lexer.hpp"

namespace egen {

namespace {

/// Internal unwind token: thrown on a syntax error inside a policy, caught
/// at the policy loop which then resynchronises. Never escapes parse().
struct ParseFailure {};

Span join(const Span& a, const Span& b) {
    return Span{a.begin, b.end, a.line, a.column};
}

class Parser {
public:
    Parser(const std::vector<Token>& tokens, std::vector<Diagnostic>& diags)
        : toks_(tokens), diags_(diags) {}

    PolicyModel run() {
        PolicyModel model;
        while (!at_end()) {
            if (is_kw(Kw::AdaptationPolicy)) {
                std::size_t start = pos_;
                try {
                    model.policies.push_back(parse_policy());
                } catch (const ParseFailure&) {
                    if (pos_ == start) ++pos_;
                    sync_to_policy();
                }
            } else {
                report("expected keyword 'AdaptationPolicy', found " + describe(cur()));
                ++pos_;
                sync_to_policy();
            }
        }
        return model;
    }

private:
    const std::vector<Token>& toks_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    bool at_end() const { return cur().kind == TokenKind::End; }
    bool is_kw(Kw k) const { return cur().kind == TokenKind::Keyword && cur().keyword == k; }
    void advance() {
        if (!at_end()) ++pos_;
    }

    void sync_to_policy() {
        while (!at_end() && !is_kw(Kw::AdaptationPolicy)) ++pos_;
    }

    void report(const std::string& message) {
        diags_.push_back({Severity::Error, "E010", message, cur().span});
    }

    [[noreturn]] void fail(const std::string& message) {
        report(message);
        throw ParseFailure{};
    }

    Token expect(TokenKind kind, const char* what) {
        if (cur().kind != kind) fail(std::string("expected ") + what + ", found " + describe(cur()));
        Token t = cur();
        advance();
        return t;
    }

    Token expect_kw(Kw k, const char* spelling) {
        if (!is_kw(k))
            fail(std::string("expected keyword '") + spelling + "', found " + describe(cur()));
        Token t = cur();
        advance();
        return t;
    }

    Kw expect_value(std::initializer_list<Kw> allowed, const char* what) {
        if (cur().kind == TokenKind::Keyword)
            for (Kw k : allowed)
                if (cur().keyword == k) {
                    Kw got = cur().keyword;
                    advance();
                    return got;
                }
        fail(std::string("expected ") + what + ", found " + describe(cur()));
    }

    AdaptationPolicy parse_policy() {
        AdaptationPolicy pol;
        Token head = expect_kw(Kw::AdaptationPolicy, "AdaptationPolicy");
        Token id = expect(TokenKind::Integer, "a policy id");
        pol.id.value = static_cast<std::int32_t>(id.int_value);
        pol.id.raw = id.lexeme;
        pol.id.span = id.span;
        expect(TokenKind::LBrace, "'{'");
        expect_kw(Kw::Condition, "Condition");
        pol.condition = parse_condition();
        expect_kw(Kw::Then, "then");
        expect_kw(Kw::Adaptation, "Adaptation");
        pol.adaptation = parse_adaptation();
        Token tail = expect(TokenKind::RBrace, "'}' closing the policy");
        pol.span = join(head.span, tail.span);
        return pol;
    }

    ContextBlock parse_condition() {
        ContextBlock block;
        Token lb = expect(TokenKind::LBrace, "'{'");
        bool seen[5] = {false, false, false, false, false};
        for (int i = 0; i < 5; ++i) {
            parse_context_binding(block, seen);
            if (i < 4) expect_kw(Kw::And, "AND");
        }
        Token rb = expect(TokenKind::RBrace, "'}' closing the Condition block");
        block.span = join(lb.span, rb.span);
        return block;
    }

    FeatureBlock parse_adaptation() {
        FeatureBlock block;
        Token lb = expect(TokenKind::LBrace, "'{'");
        bool seen[3] = {false, false, false};
        for (int i = 0; i < 3; ++i) {
            parse_feature_binding(block, seen);
            if (i < 2) expect_kw(Kw::And, "AND");
        }
        Token rb = expect(TokenKind::RBrace, "'}' closing the Adaptation block");
        block.span = join(lb.span, rb.span);
        return block;
    }

    /// Consumes `= <value>` without recording anything; used after E011 so
    /// one misplaced binding yields one diagnostic, not a cascade.
    void swallow_binding_tail() {
        expect(TokenKind::Equals, "'='");
        if (cur().kind == TokenKind::Integer || cur().kind == TokenKind::Keyword) {
            advance();
            return;
        }
        fail("expected a binding value, found " + describe(cur()));
    }

    void misplaced(const Token& key, const char* block_kind) {
        diags_.push_back({Severity::Error, "E011",
                          "binding '" + key.lexeme + "' is not allowed in " + block_kind,
                          key.span});
    }

    void parse_context_binding(ContextBlock& block, bool seen[5]) {
        const Token key = cur();
        if (key.kind != TokenKind::Keyword)
            fail("expected a Condition binding, found " + describe(key));

        auto record = [&](ContextKey k, const Span& value_span, int slot, auto assign) {
            block.entries.push_back({k, join(key.span, value_span)});
            if (!seen[slot]) {
                seen[slot] = true;
                assign();
            }
        };

        switch (key.keyword) {
        case Kw::BatteryState: {
            advance();
            expect(TokenKind::Equals, "'='");
            Span vs = cur().span;
            Kw v = expect_value({Kw::Charging, Kw::Discharging}, "'Charging' or 'Discharging'");
            record(ContextKey::BatteryState, vs, 0, [&] {
                block.battery_state =
                    v == Kw::Charging ? BatteryState::Charging : BatteryState::Discharging;
            });
            return;
        }
        case Kw::BatteryLevel: {
            advance();
            expect(TokenKind::Equals, "'='");
            Span vs = cur().span;
            Kw v = expect_value({Kw::High, Kw::Medium, Kw::Low}, "'High', 'Medium' or 'Low'");
            record(ContextKey::BatteryLevel, vs, 1, [&] {
                block.battery_level = v == Kw::High     ? BatteryLevel::High
                                      : v == Kw::Medium ? BatteryLevel::Medium
                                                        : BatteryLevel::Low;
            });
            return;
        }
        case Kw::ThresholdHigh: {
            advance();
            expect(TokenKind::Equals, "'='");
            Token v = expect(TokenKind::Integer, "an integer");
            record(ContextKey::ThresholdHigh, v.span, 2, [&] {
                block.threshold_high = static_cast<std::int32_t>(v.int_value);
            });
            return;
        }
        case Kw::ThresholdMedium: {
            advance();
            expect(TokenKind::Equals, "'='");
            Token v = expect(TokenKind::Integer, "an integer");
            record(ContextKey::ThresholdMedium, v.span, 3, [&] {
                block.threshold_medium = static_cast<std::int32_t>(v.int_value);
            });
            return;
        }
        case Kw::AppState: {
            advance();
            expect(TokenKind::Equals, "'='");
            Span vs = cur().span;
            Kw v = expect_value({Kw::Foreground, Kw::Background}, "'Foreground' or 'Background'");
            record(ContextKey::AppState, vs, 4, [&] {
                block.app_state = v == Kw::Foreground ? AppState::Foreground : AppState::Background;
            });
            return;
        }
        case Kw::SensingInterval:
        case Kw::DecreasingFactor:
        case Kw::BatteryAwareFunction:
            misplaced(key, "a Condition block");
            advance();
            swallow_binding_tail();
            return;
        default:
            fail("expected a Condition binding, found " + describe(key));
        }
    }

    void parse_feature_binding(FeatureBlock& block, bool seen[3]) {
        const Token key = cur();
        if (key.kind != TokenKind::Keyword)
            fail("expected an Adaptation binding, found " + describe(key));

        auto record = [&](FeatureKey k, const Span& value_span, int slot, auto assign) {
            block.entries.push_back({k, join(key.span, value_span)});
            if (!seen[slot]) {
                seen[slot] = true;
                assign();
            }
        };

        switch (key.keyword) {
        case Kw::SensingInterval: {
            advance();
            expect(TokenKind::Equals, "'='");
            Token v = expect(TokenKind::Integer, "an integer");
            record(FeatureKey::SensingInterval, v.span, 0, [&] {
                block.sensing_interval_ms = static_cast<std::int32_t>(v.int_value);
            });
            return;
        }
        case Kw::DecreasingFactor: {
            advance();
            expect(TokenKind::Equals, "'='");
            Token v = expect(TokenKind::Integer, "an integer");
            record(FeatureKey::DecreasingFactor, v.span, 1, [&] {
                block.decreasing_factor = static_cast<std::int32_t>(v.int_value);
            });
            return;
        }
        case Kw::BatteryAwareFunction: {
            advance();
            expect(TokenKind::Equals, "'='");
            Span vs = cur().span;
            Kw v = expect_value({Kw::Linear, Kw::Exponential}, "'Linear' or 'Exponential'");
            record(FeatureKey::BatteryAwareFunction, vs, 2, [&] {
                block.function = v == Kw::Linear ? BatteryAwareFunction::Linear
                                                 : BatteryAwareFunction::Exponential;
            });
            return;
        }
        case Kw::BatteryState:
        case Kw::BatteryLevel:
        case Kw::AppState:
        case Kw::ThresholdHigh:
        case Kw::ThresholdMedium:
            misplaced(key, "an Adaptation block");
            advance();
            swallow_binding_tail();
            return;
        default:
            fail("expected an Adaptation binding, found " + describe(key));
        }
    }
};

} // namespace

ParseResult parse(std::string_view source, std::string source_name) {
    TokenizeResult lexed = tokenize(source);
    ParseResult result;
    result.diagnostics = std::move(lexed.diagnostics);

    Parser parser(lexed.tokens, result.diagnostics);
    result.model = parser.run();
    result.model.source_name = std::move(source_name);

    std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
                         return a.code < b.code;
                     });
    return result;
}

} // namespace egen
