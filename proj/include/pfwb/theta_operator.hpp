#pragma once

// Fuchsian operators in x-graded theta form  L = sum_j x^j P_j(theta),
// theta = x d/dx, with exact rational coefficients.  Includes the text
// parser for operator files and the conversion to d/dx form used by the
// ordinary-point Taylor stepper.

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfwb/poly.hpp"

namespace pfwb {

struct ThetaOperator {
    int order = 0;                  // r = max theta-degree over all terms
    std::map<int, RatPoly> terms;   // j -> P_j(theta), P_j nonzero
    std::string name;
    std::map<std::string, std::string> metadata;

    int max_grade() const { return terms.empty() ? 0 : terms.rbegin()->first; }

    const RatPoly& term(int j) const {
        static const RatPoly zero;
        auto it = terms.find(j);
        return it == terms.end() ? zero : it->second;
    }

    // sigma(x) = sum_j [theta^r] P_j * x^j ; its roots are the finite
    // singular points away from 0
    RatPoly theta_symbol() const {
        RatPoly sigma;
        sigma.c.assign(max_grade() + 1, Rational(0));
        for (auto& [j, p] : terms) sigma.c[j] = p.coeff(order);
        sigma.trim();
        return sigma;
    }

    // d/dx form: L = sum_i b_i(x) (d/dx)^i via theta^k = sum_i S(k,i) x^i D^i
    std::vector<RatPoly> dx_form() const {
        // Stirling numbers of the second kind up to r
        int r = order;
        std::vector<std::vector<Rational>> S(r + 1, std::vector<Rational>(r + 1, Rational(0)));
        S[0][0] = 1;
        for (int k = 1; k <= r; ++k)
            for (int i = 1; i <= k; ++i) S[k][i] = S[k - 1][i - 1] + Rational(i) * S[k - 1][i];
        std::vector<RatPoly> b(r + 1);
        for (auto& [j, p] : terms)
            for (int k = 0; k <= p.degree(); ++k) {
                if (p.coeff(k) == 0) continue;
                for (int i = 0; i <= k; ++i) {
                    if (S[k][i] == 0) continue;
                    // contributes p_k * S(k,i) * x^(i+j) D^i
                    int e = i + j;
                    if (b[i].degree() < e) b[i].c.resize(e + 1, Rational(0));
                    b[i].c[e] += p.coeff(k) * S[k][i];
                }
            }
        for (auto& q : b) q.trim();
        return b;
    }
};

// --- parser ------------------------------------------------------------------

namespace detail {

struct OperatorParser {
    // value in x-graded normal form; theta_free means every P_j is constant
    struct Value {
        std::map<int, RatPoly> parts;

        bool theta_free() const {
            for (auto& [j, p] : parts)
                if (p.degree() > 0) return false;
            return true;
        }
        bool x_free() const { return parts.empty() || (parts.size() == 1 && parts.count(0)); }

        void add_in(int j, const RatPoly& p) {
            auto& slot = parts[j];
            slot = slot + p;
            if (slot.is_zero()) parts.erase(j);
        }
    };

    const std::string& text;
    size_t pos = 0;

    explicit OperatorParser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("operator parse error at position " + std::to_string(pos) +
                                    ": " + msg);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    Value parse() {
        Value v = parse_expr();
        skip_ws();
        if (pos != text.size()) fail("trailing input");
        return v;
    }

    Value parse_expr() {
        bool neg = false;
        skip_ws();
        if (eat('+')) neg = false;
        else if (eat('-')) neg = true;
        Value acc = parse_term();
        if (neg) acc = negate(acc);
        while (true) {
            skip_ws();
            if (eat('+')) acc = add(acc, parse_term());
            else if (eat('-')) acc = add(acc, negate(parse_term()));
            else break;
        }
        return acc;
    }

    Value parse_term() {
        Value acc = parse_factor();
        while (true) {
            skip_ws();
            if (eat('*')) acc = mul(acc, parse_factor());
            else break;
        }
        return acc;
    }

    Value parse_factor() {
        Value base = parse_primary();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) fail("expected integer exponent");
            unsigned long e = std::stoul(text.substr(start, pos - start));
            Value acc = one();
            for (unsigned long i = 0; i < e; ++i) acc = mul(acc, base);
            return acc;
        }
        return base;
    }

    Value parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Value v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == '-') {  // unary minus inside a product
            ++pos;
            return negate(parse_factor());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            Rational n = rational_from_string(text.substr(start, pos - start));
            Value v;
            v.add_in(0, RatPoly::constant(n));
            return v;
        }
        if (text.compare(pos, 5, "theta") == 0) {
            pos += 5;
            Value v;
            v.add_in(0, RatPoly::x());
            return v;
        }
        if (c == 'x') {
            ++pos;
            Value v;
            v.add_in(1, RatPoly::constant(Rational(1)));
            return v;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    static Value one() {
        Value v;
        v.add_in(0, RatPoly::constant(Rational(1)));
        return v;
    }
    static Value negate(const Value& x) {
        Value r;
        for (auto& [j, p] : x.parts) r.parts[j] = -p;
        return r;
    }
    static Value add(const Value& x, const Value& y) {
        Value r = x;
        for (auto& [j, p] : y.parts) r.add_in(j, p);
        return r;
    }

    // x^j P(theta) * x^k Q(theta) is only x-graded-normal without a theta
    // shift when P is constant or k = 0; the file grammar promises each
    // monomial is x^j * (polynomial in theta), so anything else is an error.
    Value mul(const Value& x, const Value& y) {
        Value r;
        if (y.x_free()) {
            const RatPoly q = y.parts.count(0) ? y.parts.at(0) : RatPoly();
            if (q.is_zero()) return r;
            for (auto& [j, p] : x.parts) r.add_in(j, p * q);
            return r;
        }
        if (x.theta_free()) {
            for (auto& [j, p] : x.parts)
                for (auto& [k, q] : y.parts) r.add_in(j + k, q.scaled(p.coeff(0)));
            return r;
        }
        fail("mixed x-theta monomial not of the form x^j * P(theta)");
    }
};

}  // namespace detail

inline ThetaOperator parse_operator(const std::string& text) {
    detail::OperatorParser parser(text);
    auto value = parser.parse();
    ThetaOperator op;
    int r = 0;
    for (auto& [j, p] : value.parts) {
        if (j < 0) throw std::invalid_argument("negative x-grade");
        r = std::max(r, p.degree());
    }
    op.order = r;
    op.terms = std::move(value.parts);
    if (op.terms.empty()) throw std::invalid_argument("empty operator");
    return op;
}

// Operator files: optional leading '#' comment lines with key=value metadata,
// then one expression (possibly spanning several lines).
inline ThetaOperator parse_operator_file(const std::string& contents) {
    std::istringstream in(contents);
    std::string line, expr;
    std::map<std::string, std::string> meta;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            std::string body = line.substr(1);
            auto eq = body.find('=');
            if (eq != std::string::npos) {
                std::string key = body.substr(0, eq), val = body.substr(eq + 1);
                auto strip = [](std::string s) {
                    size_t a = s.find_first_not_of(" \t");
                    size_t b = s.find_last_not_of(" \t\r");
                    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
                };
                meta[strip(key)] = strip(val);
            }
            continue;
        }
        expr += line + " ";
    }
    ThetaOperator op = parse_operator(expr);
    op.metadata = std::move(meta);
    if (op.metadata.count("name")) op.name = op.metadata.at("name");
    return op;
}

}  // namespace pfwb
