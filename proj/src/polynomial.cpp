#include "ntkit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ntkit::dioph {

namespace {

using TermMap = std::map<std::vector<unsigned>, BigInt>;

TermMap add(const TermMap& a, const TermMap& b, int sign_b) {
    TermMap out = a;
    for (const auto& [e, c] : b) {
        BigInt& slot = out[e];
        slot += sign_b < 0 ? BigInt(-c) : c;
        if (slot == 0) out.erase(e);
    }
    return out;
}

TermMap mul(const TermMap& a, const TermMap& b, unsigned arity) {
    TermMap out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            std::vector<unsigned> e(arity, 0);
            for (unsigned i = 0; i < arity; ++i) e[i] = ea[i] + eb[i];
            BigInt& slot = out[e];
            slot += ca * cb;
            if (slot == 0) out.erase(e);
        }
    }
    return out;
}

TermMap pow(TermMap base, unsigned long exp, unsigned arity) {
    TermMap out;
    out[std::vector<unsigned>(arity, 0)] = 1;
    while (exp > 0) {
        if (exp & 1) out = mul(out, base, arity);
        base = mul(base, base, arity);
        exp >>= 1;
    }
    return out;
}

struct Token {
    enum Kind { number, variable, plus, minus, star, caret, lparen, rparen, end };
    Kind kind;
    size_t offset;
    BigInt value;       // number
    bool is_witness = false;  // variable
    unsigned index = 0;       // variable, 1-based
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::number, start, parse_int(text.substr(i, j - i)), false, 0});
            i = j;
        } else if (c == 'x' || c == 'y') {
            size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i + 1) throw ParseError("variable needs an index", start);
            unsigned idx = std::stoul(std::string(text.substr(i + 1, j - i - 1)));
            if (idx == 0) throw ParseError("variable index must be >= 1", start);
            out.push_back({Token::variable, start, 0, c == 'y', idx});
            i = j;
        } else {
            Token::Kind k;
            switch (c) {
                case '+': k = Token::plus; break;
                case '-': k = Token::minus; break;
                case '*': k = Token::star; break;
                case '^': k = Token::caret; break;
                case '(': k = Token::lparen; break;
                case ')': k = Token::rparen; break;
                default: throw ParseError(std::string("unexpected character '") + c + "'", start);
            }
            out.push_back({k, start, 0, false, 0});
            ++i;
        }
    }
    out.push_back({Token::end, text.size(), 0, false, 0});
    return out;
}

struct Parser {
    const std::vector<Token>& toks;
    size_t pos = 0;
    unsigned n_params, arity;

    const Token& peek() const { return toks[pos]; }
    const Token& take() { return toks[pos++]; }

    TermMap constant(const BigInt& v) {
        TermMap t;
        if (v != 0) t[std::vector<unsigned>(arity, 0)] = v;
        return t;
    }

    TermMap expression() {
        int sign = 1;
        if (peek().kind == Token::minus) {
            take();
            sign = -1;
        } else if (peek().kind == Token::plus) {
            take();
        }
        TermMap acc = term();
        if (sign < 0) acc = add(TermMap{}, acc, -1);
        while (peek().kind == Token::plus || peek().kind == Token::minus) {
            int s = take().kind == Token::plus ? 1 : -1;
            acc = add(acc, term(), s);
        }
        return acc;
    }

    TermMap term() {
        TermMap acc = factor();
        while (peek().kind == Token::star) {
            take();
            acc = mul(acc, factor(), arity);
        }
        return acc;
    }

    TermMap factor() {
        TermMap base = atom();
        if (peek().kind == Token::caret) {
            size_t off = take().offset;
            if (peek().kind != Token::number) throw ParseError("exponent must be a number", peek().offset);
            BigInt e = take().value;
            if (e < 0 || !e.fits_ulong_p()) throw ParseError("exponent out of range", off);
            base = pow(base, e.get_ui(), arity);
        }
        return base;
    }

    TermMap atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::number:
                return constant(take().value);
            case Token::variable: {
                take();
                std::vector<unsigned> e(arity, 0);
                unsigned slot = t.is_witness ? n_params + t.index - 1 : t.index - 1;
                e[slot] = 1;
                TermMap out;
                out[e] = 1;
                return out;
            }
            case Token::minus: {
                take();
                return add(TermMap{}, atom(), -1);
            }
            case Token::lparen: {
                take();
                TermMap inner = expression();
                if (peek().kind != Token::rparen) throw ParseError("expected ')'", peek().offset);
                take();
                return inner;
            }
            default:
                throw ParseError("expected a number, variable, or '('", t.offset);
        }
    }
};

}  // namespace

BigInt IntPolynomial::eval(std::span<const BigInt> point) const {
    if (point.size() != arity) {
        throw std::invalid_argument("polynomial arity mismatch: expected " +
                                    std::to_string(arity) + " values, got " +
                                    std::to_string(point.size()));
    }
    BigInt total = 0;
    BigInt mono, pw;
    for (const auto& [exps, coef] : terms) {
        mono = coef;
        for (unsigned i = 0; i < arity; ++i) {
            if (exps[i] == 0) continue;
            mpz_pow_ui(pw.get_mpz_t(), point[i].get_mpz_t(), exps[i]);
            mono *= pw;
        }
        total += mono;
    }
    return total;
}

ParsedPolynomial parse_polynomial(std::string_view text) {
    auto toks = lex(text);

    unsigned n_params = 0, m_witnesses = 0;
    for (const auto& t : toks) {
        if (t.kind != Token::variable) continue;
        (t.is_witness ? m_witnesses : n_params) =
            std::max(t.is_witness ? m_witnesses : n_params, t.index);
    }

    Parser parser{toks, 0, n_params, n_params + m_witnesses};
    TermMap result = parser.expression();
    if (parser.peek().kind != Token::end) {
        throw ParseError("trailing input", parser.peek().offset);
    }

    ParsedPolynomial out;
    out.n_params = n_params;
    out.m_witnesses = m_witnesses;
    out.poly.arity = n_params + m_witnesses;
    out.poly.terms.assign(result.begin(), result.end());
    return out;
}

std::string to_string(const IntPolynomial& poly, unsigned n_params) {
    if (poly.terms.empty()) return "0";
    std::string out;
    // Leading variables first.
    for (auto it = poly.terms.rbegin(); it != poly.terms.rend(); ++it) {
        const auto& [exps, coef] = *it;
        BigInt c = coef;
        if (out.empty()) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        bool has_var = std::any_of(exps.begin(), exps.end(), [](unsigned e) { return e != 0; });
        bool printed = false;
        if (c != 1 || !has_var) {
            out += ntkit::to_string(c);
            printed = true;
        }
        for (unsigned i = 0; i < poly.arity; ++i) {
            if (exps[i] == 0) continue;
            if (printed) out += "*";
            printed = true;
            out += (i < n_params ? "x" + std::to_string(i + 1)
                                 : "y" + std::to_string(i - n_params + 1));
            if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
        }
    }
    return out;
}

}  // namespace ntkit::dioph
