// Strict parser and deterministic emitter for a small OpenQASM 2.0 subset:
// one qreg, the catalog gates (with ecr/iswap accepted as dialect
// extensions), barrier (dropped), and pi-arithmetic parameter expressions.
// Every parse failure is a positioned SourceError, never a crash.

#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pswap/circuit.hpp"

namespace pswap::qasm {

struct SourceError : std::runtime_error {
    int line;
    int column;
    std::string message;
    std::string token;

    SourceError(int line_, int column_, std::string message_, std::string token_)
        : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " +
                             message_ + (token_.empty() ? "" : " near '" + token_ + "'")),
          line(line_),
          column(column_),
          message(std::move(message_)),
          token(std::move(token_)) {}
};

namespace detail {

enum class Tok {
    Ident, Number, Str, LParen, RParen, LBracket, RBracket,
    Comma, Semi, Plus, Minus, Star, Slash, End
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double num = 0.0;
    bool is_int = false;
    long long int_val = 0;
    int line = 1;
    int col = 1;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto make = [&](Tok k, std::string text) {
        Token t;
        t.kind = k;
        t.text = std::move(text);
        t.line = line;
        t.col = col;
        return t;
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            Token t = make(Tok::Ident, std::string(src.substr(i, j - i)));
            out.push_back(std::move(t));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            bool is_int = true;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                is_int = false;
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    is_int = false;
                    j = k;
                    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
                }
            }
            Token t = make(Tok::Number, std::string(src.substr(i, j - i)));
            t.is_int = is_int;
            const char* first = t.text.data();
            const char* last = first + t.text.size();
            auto res = std::from_chars(first, last, t.num);
            if (res.ec != std::errc{} || res.ptr != last)
                throw SourceError(line, col, "malformed number", t.text);
            if (is_int) {
                auto ires = std::from_chars(first, last, t.int_val);
                if (ires.ec != std::errc{}) {
                    t.is_int = false;  // out of long long range; keep as real
                }
            }
            out.push_back(std::move(t));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != '"')
                throw SourceError(line, col, "unterminated string", "\"");
            Token t = make(Tok::Str, std::string(src.substr(i + 1, j - i - 1)));
            out.push_back(std::move(t));
            col += static_cast<int>(j - i + 1);
            i = j + 1;
            continue;
        }
        Tok k;
        switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case ',': k = Tok::Comma; break;
            case ';': k = Tok::Semi; break;
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            default:
                throw SourceError(line, col, "unexpected character", std::string(1, c));
        }
        out.push_back(make(k, std::string(1, c)));
        ++col;
        ++i;
    }
    Token end = make(Tok::End, "<end of input>");
    out.push_back(std::move(end));
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Circuit parse_program() {
        expect_ident("OPENQASM", "expected OPENQASM header");
        const Token& ver = expect(Tok::Number, "expected version number");
        if (ver.text != "2.0") throw err(ver, "unsupported OPENQASM version");
        semicolon();
        if (peek().kind == Tok::Ident && peek().text == "include") {
            get();
            const Token& path = expect(Tok::Str, "expected include path string");
            if (path.text != "qelib1.inc") throw err(path, "unsupported include");
            semicolon();
        }
        Circuit circuit;
        bool have_qreg = false;
        std::string reg_name;
        while (peek().kind != Tok::End) {
            const Token& head = expect(Tok::Ident, "expected statement");
            if (head.text == "qreg") {
                if (have_qreg) throw err(head, "duplicate qreg declaration");
                const Token& name = expect(Tok::Ident, "expected register name");
                reg_name = name.text;
                expect(Tok::LBracket, "expected '['");
                const Token& size = expect(Tok::Number, "expected register size");
                if (!size.is_int || size.int_val < 1) throw err(size, "register size must be a positive integer");
                if (size.int_val > 1000000) throw err(size, "register size too large");
                expect(Tok::RBracket, "expected ']'");
                semicolon();
                circuit = Circuit(static_cast<int>(size.int_val));
                have_qreg = true;
            } else if (head.text == "barrier") {
                if (!have_qreg) throw err(head, "no quantum register declared");
                if (peek().kind != Tok::Semi) {
                    parse_qubit_ref(reg_name, circuit.n_qubits);
                    while (peek().kind == Tok::Comma) {
                        get();
                        parse_qubit_ref(reg_name, circuit.n_qubits);
                    }
                }
                semicolon();
            } else {
                const auto op = gate_from_name(head.text);
                if (!op) throw err(head, "unknown gate");
                if (!have_qreg) throw err(head, "no quantum register declared");
                GateKind kind;
                if (*op == GateOp::RZ) {
                    if (peek().kind != Tok::LParen) throw err(peek(), "rz requires an angle parameter");
                    get();
                    const Token& at = peek();
                    const double theta = parse_expr();
                    if (!std::isfinite(theta)) throw err(at, "malformed expression (non-finite value)");
                    expect(Tok::RParen, "expected ')'");
                    kind = GateKind::rz(theta);
                } else {
                    if (peek().kind == Tok::LParen) throw err(peek(), "gate takes no parameter");
                    kind = GateKind(*op);
                }
                std::vector<int> qubits;
                qubits.push_back(parse_qubit_ref(reg_name, circuit.n_qubits));
                while (peek().kind == Tok::Comma) {
                    get();
                    qubits.push_back(parse_qubit_ref(reg_name, circuit.n_qubits));
                }
                if (static_cast<int>(qubits.size()) != arity(*op))
                    throw err(head, "gate arity mismatch");
                if (qubits.size() == 2 && qubits[0] == qubits[1])
                    throw err(head, "duplicate qubit operand");
                semicolon();
                circuit.add(kind, std::move(qubits));
            }
        }
        if (!have_qreg) throw err(peek(), "no quantum register declared");
        return circuit;
    }

    double parse_bare_expr() {
        const double v = parse_expr();
        if (peek().kind != Tok::End) throw err(peek(), "trailing input after expression");
        if (!std::isfinite(v)) throw err(peek(), "malformed expression (non-finite value)");
        return v;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    const Token& get() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

    static SourceError err(const Token& t, std::string message) {
        return SourceError(t.line, t.col, std::move(message), t.text);
    }

    const Token& expect(Tok kind, const char* message) {
        if (peek().kind != kind) throw err(peek(), message);
        return get();
    }

    void expect_ident(std::string_view text, const char* message) {
        const Token& t = peek();
        if (t.kind != Tok::Ident || t.text != text) throw err(t, message);
        get();
    }

    void semicolon() { expect(Tok::Semi, "missing semicolon"); }

    int parse_qubit_ref(const std::string& reg_name, int n_qubits) {
        const Token& name = expect(Tok::Ident, "expected qubit reference");
        if (name.text != reg_name) throw err(name, "unknown register");
        expect(Tok::LBracket, "expected '['");
        const Token& idx = expect(Tok::Number, "expected qubit index");
        if (!idx.is_int || idx.int_val < 0) throw err(idx, "qubit index must be a non-negative integer");
        if (idx.int_val >= n_qubits) throw err(idx, "qubit index out of range");
        expect(Tok::RBracket, "expected ']'");
        return static_cast<int>(idx.int_val);
    }

    // expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
    // unary := '-' unary | primary ; primary := number | pi | '(' expr ')'
    double parse_expr() {
        double v = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool plus = get().kind == Tok::Plus;
            const double rhs = parse_term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double parse_term() {
        double v = parse_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token& sym = get();
            const double rhs = parse_unary();
            if (sym.kind == Tok::Slash) {
                if (rhs == 0.0) throw err(sym, "malformed expression (division by zero)");
                v /= rhs;
            } else {
                v *= rhs;
            }
        }
        return v;
    }

    double parse_unary() {
        if (peek().kind == Tok::Minus) {
            get();
            return -parse_unary();
        }
        return parse_primary();
    }

    double parse_primary() {
        const Token& t = peek();
        if (t.kind == Tok::Number) return get().num;
        if (t.kind == Tok::Ident && t.text == "pi") {
            get();
            return kPi;
        }
        if (t.kind == Tok::LParen) {
            get();
            const double v = parse_expr();
            expect(Tok::RParen, "expected ')'");
            return v;
        }
        throw err(t, "malformed expression");
    }
};

}  // namespace detail

inline Circuit parse(std::string_view text) { return detail::Parser(text).parse_program(); }

/// Parses a standalone angle expression (the CLI reuses the QASM grammar).
inline double parse_angle_expr(std::string_view expr) {
    return detail::Parser(expr).parse_bare_expr();
}

/// Canonical angle printing: exact rational multiples of pi (denominator up
/// to 16) print symbolically, everything else as 17-significant-digit
/// decimal. Deterministic byte-for-byte.
inline std::string format_angle(double theta) {
    for (long long d = 1; d <= 16; ++d) {
        const long long k = std::llround(theta * static_cast<double>(d) / kPi);
        if (std::llabs(k) > 1000000) break;
        if (std::abs(theta - static_cast<double>(k) * kPi / static_cast<double>(d)) <= 1e-12) {
            if (k == 0) return "0";
            std::string num = k == 1 ? "pi" : (k == -1 ? "-pi" : std::to_string(k) + "*pi");
            if (d == 1) return num;
            return num + "/" + std::to_string(d);
        }
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", theta);
    return buf;
}

/// Canonical form: fixed header, register named q, one op per line, LF.
inline std::string emit(const Circuit& c) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(c.n_qubits) + "];\n";
    for (const GateInstance& g : c.ops) {
        out += qasm_name(g.kind.op);
        if (g.kind.op == GateOp::RZ) out += "(" + format_angle(g.kind.theta) + ")";
        out += " q[" + std::to_string(g.qubits[0]) + "]";
        if (g.qubits.size() == 2) out += ", q[" + std::to_string(g.qubits[1]) + "]";
        out += ";\n";
    }
    return out;
}

}  // namespace pswap::qasm
