#include "gpr/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace gpr {

namespace {

struct Token {
    enum class Kind { Number, Imag, Var, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    double number = 0.0;
    size_t position = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    std::string_view text_;
    size_t pos_ = 0;
    Token current_{};

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        current_.position = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Token::Kind::End;
            return;
        }
        char c = text_[pos_];
        switch (c) {
            case '+': current_.kind = Token::Kind::Plus; ++pos_; return;
            case '-': current_.kind = Token::Kind::Minus; ++pos_; return;
            case '*': current_.kind = Token::Kind::Star; ++pos_; return;
            case '/': current_.kind = Token::Kind::Slash; ++pos_; return;
            case '^': current_.kind = Token::Kind::Caret; ++pos_; return;
            case '(': current_.kind = Token::Kind::LParen; ++pos_; return;
            case ')': current_.kind = Token::Kind::RParen; ++pos_; return;
            default: break;
        }
        if (c == 'i' || c == 'I') {
            current_.kind = Token::Kind::Imag;
            ++pos_;
            return;
        }
        if (c == 's' || c == 'S') {
            current_.kind = Token::Kind::Var;
            ++pos_;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                size_t mark = pos_ + 1;
                if (mark < text_.size() && (text_[mark] == '+' || text_[mark] == '-')) ++mark;
                if (mark < text_.size() && std::isdigit(static_cast<unsigned char>(text_[mark]))) {
                    pos_ = mark;
                    while (pos_ < text_.size() &&
                           std::isdigit(static_cast<unsigned char>(text_[pos_])))
                        ++pos_;
                }
            }
            current_.kind = Token::Kind::Number;
            current_.number = std::stod(std::string(text_.substr(start, pos_ - start)));
            return;
        }
        throw SyntaxErrorAt(pos_, "number, 'i', 's', operator or parenthesis",
                            std::string("unexpected character '") + c + "'");
    }
};

class Parser {
public:
    Parser(std::string_view text, const Tolerances& tol) : lexer_(text), tol_(tol) {}

    RationalFunction parse() {
        RationalFunction f = expr();
        if (lexer_.peek().kind != Token::Kind::End)
            throw SyntaxErrorAt(lexer_.peek().position, "end of input", "trailing input");
        return f;
    }

private:
    Lexer lexer_;
    const Tolerances& tol_;

    RationalFunction expr() {
        RationalFunction acc = term();
        while (true) {
            Token::Kind k = lexer_.peek().kind;
            if (k == Token::Kind::Plus) {
                lexer_.take();
                acc = acc.add(term(), tol_);
            } else if (k == Token::Kind::Minus) {
                lexer_.take();
                acc = acc.sub(term(), tol_);
            } else {
                return acc;
            }
        }
    }

    RationalFunction term() {
        RationalFunction acc = factor();
        while (true) {
            Token::Kind k = lexer_.peek().kind;
            if (k == Token::Kind::Star) {
                lexer_.take();
                acc = acc.mul(factor(), tol_);
            } else if (k == Token::Kind::Slash) {
                Token t = lexer_.take();
                RationalFunction rhs = factor();
                if (rhs.is_zero())
                    throw SyntaxErrorAt(t.position, "nonzero divisor", "division by zero");
                acc = acc.div(rhs, tol_);
            } else {
                return acc;
            }
        }
    }

    RationalFunction factor() {
        bool negate = false;
        while (lexer_.peek().kind == Token::Kind::Plus || lexer_.peek().kind == Token::Kind::Minus) {
            if (lexer_.take().kind == Token::Kind::Minus) negate = !negate;
        }
        RationalFunction base = power();
        return negate ? base.scale(Cpx(-1.0), tol_) : base;
    }

    RationalFunction power() {
        RationalFunction base = primary();
        if (lexer_.peek().kind != Token::Kind::Caret) return base;
        Token caret = lexer_.take();
        bool negative = false;
        while (lexer_.peek().kind == Token::Kind::Plus || lexer_.peek().kind == Token::Kind::Minus) {
            if (lexer_.take().kind == Token::Kind::Minus) negative = !negative;
        }
        if (lexer_.peek().kind != Token::Kind::Number)
            throw SyntaxErrorAt(lexer_.peek().position, "integer exponent", "bad exponent");
        Token t = lexer_.take();
        double raw = t.number;
        if (raw != std::floor(raw))
            throw SyntaxErrorAt(t.position, "integer exponent", "exponent must be an integer");
        int n = static_cast<int>(raw);
        RationalFunction acc(Cpx(1.0));
        for (int k = 0; k < n; ++k) acc = acc.mul(base, tol_);
        if (negative) {
            if (acc.is_zero())
                throw SyntaxErrorAt(caret.position, "nonzero base", "zero to a negative power");
            acc = acc.invert(tol_);
        }
        return acc;
    }

    RationalFunction primary() {
        Token t = lexer_.peek();
        switch (t.kind) {
            case Token::Kind::Number: {
                lexer_.take();
                if (lexer_.peek().kind == Token::Kind::Imag) {
                    lexer_.take();
                    return RationalFunction(Cpx(0.0, t.number));
                }
                return RationalFunction(Cpx(t.number));
            }
            case Token::Kind::Imag:
                lexer_.take();
                return RationalFunction(Cpx(0.0, 1.0));
            case Token::Kind::Var:
                lexer_.take();
                return RationalFunction::variable();
            case Token::Kind::LParen: {
                lexer_.take();
                RationalFunction inner = expr();
                if (lexer_.peek().kind != Token::Kind::RParen)
                    throw SyntaxErrorAt(lexer_.peek().position, "')'", "unbalanced parenthesis");
                lexer_.take();
                return inner;
            }
            default:
                throw SyntaxErrorAt(t.position, "number, 'i', 's' or '('", "unexpected token");
        }
    }
};

Cpx complex_from_json(const nlohmann::json& j, const Tolerances& tol);

RationalFunction parse_structured(std::string_view text, const Tolerances& tol) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxErrorAt(static_cast<size_t>(e.byte), "valid JSON", "structured form");
    }
    if (!doc.is_object())
        throw SyntaxErrorAt(0, "JSON object with gain/zeros/poles", "structured form");
    PoleZeroGain pzg;
    if (doc.contains("gain")) pzg.gain = complex_from_json(doc["gain"], tol);
    auto load = [&](const char* key, RootList& out) {
        if (!doc.contains(key)) return;
        for (const auto& item : doc[key]) {
            if (item.is_object() && item.contains("root"))
                out.roots.push_back(
                    {complex_from_json(item["root"], tol), item.value("mult", 1)});
            else
                out.roots.push_back({complex_from_json(item, tol), 1});
        }
    };
    load("zeros", pzg.zeros);
    load("poles", pzg.poles);
    return RationalFunction::from_pole_zero(pzg, tol);
}

Cpx complex_from_json(const nlohmann::json& j, const Tolerances& tol) {
    if (j.is_number()) return Cpx(j.get<double>());
    if (j.is_string()) {
        RationalFunction f = parse_expression(j.get<std::string>(), tol);
        if (f.degree() != 0 && !f.is_zero())
            throw SyntaxErrorAt(0, "constant complex literal", "non-constant expression");
        return f.is_zero() ? Cpx(0.0) : f.num().coeff(0) / f.den().coeff(0);
    }
    if (j.is_object() && j.contains("re"))
        return Cpx(j.value("re", 0.0), j.value("im", 0.0));
    if (j.is_array() && j.size() == 2)
        return Cpx(j[0].get<double>(), j[1].get<double>());
    throw SyntaxErrorAt(0, "number, \"a+bi\" string, {re,im} or [re,im]", "complex literal");
}

}  // namespace

RationalFunction parse_expression(std::string_view text, const Tolerances& tol) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{')
        return parse_structured(text.substr(first), tol);
    return Parser(text, tol).parse();
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", value);
    if (std::stod(buf) == value) return buf;
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string format_complex(Cpx value) {
    // Sub-roundoff parts are display noise; dropping them moves the value by
    // far less than the equality tolerance.
    if (std::abs(value.imag()) <= 1e-14 * std::abs(value.real())) value = Cpx(value.real());
    if (std::abs(value.real()) <= 1e-14 * std::abs(value.imag()))
        value = Cpx(0.0, value.imag());
    if (value.imag() == 0.0) return format_real(value.real());
    if (value.real() == 0.0) return format_real(value.imag()) + "i";
    std::string s = "(" + format_real(value.real());
    s += (value.imag() < 0.0) ? "-" : "+";
    s += format_real(std::abs(value.imag())) + "i)";
    return s;
}

namespace {

std::string print_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        Cpx c = p.coeff(k);
        if (c == Cpx(0.0)) continue;
        bool negative_real = c.imag() == 0.0 && c.real() < 0.0;
        bool negative_imag = c.real() == 0.0 && c.imag() < 0.0;
        Cpx magnitude = c;
        std::string sep;
        if (negative_real || negative_imag) {
            magnitude = -c;
            sep = first ? "-" : " - ";
        } else {
            sep = first ? "" : " + ";
        }
        out << sep;
        bool unit = magnitude == Cpx(1.0);
        if (k == 0) {
            out << format_complex(magnitude);
        } else {
            if (!unit) out << format_complex(magnitude) << "*";
            out << "s";
            if (k > 1) out << "^" << k;
        }
        first = false;
    }
    return out.str();
}

}  // namespace

std::string print_expression(const RationalFunction& f) {
    if (f.is_zero()) return "0";
    std::string num = print_polynomial(f.num());
    if (f.den().degree() == 0 && f.den().coeff(0) == Cpx(1.0)) return num;
    return "(" + num + ")/(" + print_polynomial(f.den()) + ")";
}

}  // namespace gpr
