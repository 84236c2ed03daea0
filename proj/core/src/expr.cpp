#include "etaq/expr.hpp"

#include <cctype>

namespace etaq {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const NameResolver& resolve;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw ParseError(std::string("expected '") + c + "' at position " +
                             std::to_string(pos) + " in \"" + s + "\"");
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    long long integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits)
            throw ParseError("expected an integer at position " + std::to_string(start) +
                             " in \"" + s + "\"");
        return std::stoll(s.substr(start, pos - start));
    }

    // integer, or (a/b) in parentheses
    Rat exponent() {
        skip_ws();
        if (peek() == '(') {
            expect('(');
            long long num = integer();
            long long den = 1;
            if (eat('/')) den = integer();
            expect(')');
            if (den == 0) throw ParseError("zero denominator in exponent");
            return rat(num, den);
        }
        return rat(integer());
    }

    std::string name() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }

    EtaQuotient expr() {
        EtaQuotient acc = term();
        for (;;) {
            if (eat('*'))
                acc = combine(acc, term());
            else if (eat('/'))
                acc = combine(acc, term().inverse());
            else
                return acc;
        }
    }

    EtaQuotient term() {
        EtaQuotient f = factor();
        if (eat('^')) return f.scaled(exponent());
        return f;
    }

    std::array<long long, 4> bases_spec() {
        skip_ws();
        if (peek() == '(') {
            expect('(');
            std::array<long long, 4> b{};
            for (int i = 0; i < 4; ++i) {
                if (i) expect(',');
                b[static_cast<size_t>(i)] = integer();
            }
            expect(')');
            return b;
        }
        long long shorthand = integer();
        if (shorthand == 6) return {1, 2, 3, 6};
        if (shorthand == 8) return {1, 2, 4, 8};
        throw ParseError("unknown bases shorthand @" + std::to_string(shorthand) +
                         " (use @6, @8 or @(a,b,c,d))");
    }

    TupleSpec tuple() {
        expect('[');
        TupleSpec t;
        for (int i = 0; i < 4; ++i) {
            if (i) expect(',');
            t.exponents[static_cast<size_t>(i)] = integer();
        }
        expect(']');
        expect('@');
        t.bases = bases_spec();
        t.root = 3;
        return t;
    }

    EtaQuotient factor() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            expect('(');
            EtaQuotient e = expr();
            expect(')');
            return e;
        }
        if (c == '[') return tuple().quotient();
        std::string id = name();
        if (id == "eta") {
            expect('(');
            std::string var = name();
            if (var != "q") throw ParseError("eta expects the variable q");
            long long delta = 1;
            if (eat('^')) delta = integer();
            expect(')');
            if (delta < 1) throw ParseError("eta scale must be a positive integer");
            return EtaQuotient({EtaTerm{delta, rat(1)}});
        }
        if (id == "cbrt") {
            expect('(');
            EtaQuotient e = expr();
            expect(')');
            return e.scaled(rat(1, 3));
        }
        if (id == "root") {
            expect('(');
            EtaQuotient e = expr();
            expect(',');
            long long n = integer();
            expect(')');
            if (n < 1) throw ParseError("root index must be >= 1");
            return e.scaled(rat(1, n));
        }
        if (!id.empty() && resolve) {
            if (auto hit = resolve(id)) return *hit;
        }
        if (!id.empty())
            throw ParseError("unknown name \"" + id + "\" in expression");
        throw ParseError("unexpected character at position " + std::to_string(pos) +
                         " in \"" + s + "\"");
    }
};

} // namespace

EtaQuotient parse_quotient(const std::string& text, const NameResolver& resolver) {
    Parser p{text, 0, resolver};
    EtaQuotient e = p.expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("trailing input at position " + std::to_string(p.pos) + " in \"" +
                         text + "\"");
    return e;
}

std::optional<TupleSpec> parse_tuple(const std::string& text) {
    NameResolver none;
    Parser p{text, 0, none};
    p.skip_ws();
    if (p.peek() != '[') return std::nullopt;
    try {
        TupleSpec t = p.tuple();
        p.skip_ws();
        if (p.pos != text.size()) return std::nullopt;
        return t;
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

} // namespace etaq
