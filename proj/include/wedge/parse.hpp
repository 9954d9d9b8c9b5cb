#pragma once

// Parser for the scalar-expression and differential-form grammar (EBNF in
// docs/grammar.md). One recursive-descent pass handles both: a parse result
// is a scalar until a d[...] atom enters, after which products become wedge
// products. The printers in scalar.hpp / form.hpp emit this same grammar.

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wedge/chart.hpp"
#include "wedge/form.hpp"
#include "wedge/scalar.hpp"

namespace wedge {

namespace detail {

struct Token {
    enum class Kind { Number, Ident, Symbol, Primes, End };
    Kind kind = Kind::End;
    std::string text;
    int count = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_ = Token{};
        tok_.pos = i_;
        if (i_ >= src_.size()) return;
        char c = src_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            if (j < src_.size() && src_[j] == '.')
                throw ParseError("floating literals are not part of the grammar; use rationals", j);
            tok_.kind = Token::Kind::Number;
            tok_.text = src_.substr(i_, j - i_);
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            tok_.kind = Token::Kind::Ident;
            tok_.text = src_.substr(i_, j - i_);
            i_ = j;
            return;
        }
        if (c == '\'') {
            std::size_t j = i_;
            while (j < src_.size() && src_[j] == '\'') ++j;
            tok_.kind = Token::Kind::Primes;
            tok_.count = static_cast<int>(j - i_);
            i_ = j;
            return;
        }
        tok_.kind = Token::Kind::Symbol;
        tok_.text = std::string(1, c);
        ++i_;
    }

    const std::string& src_;
    std::size_t i_ = 0;
    Token tok_;
};

// Either a scalar or a differential form; products promote scalars to forms
// as needed.
struct Value {
    std::optional<DifferentialForm> form;
    ScalarExpr scalar;

    bool is_form() const { return form.has_value(); }
};

class Parser {
public:
    Parser(const std::string& src, ChartPtr chart, bool strict)
        : lex_(src), chart_(std::move(chart)), strict_(strict) {}

    Value parse() {
        Value v = sum();
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError("unexpected trailing input", lex_.peek().pos);
        return v;
    }

private:
    Lexer lex_;
    ChartPtr chart_;
    bool strict_;

    bool at_symbol(const char* s) const {
        return lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == s;
    }
    void expect_symbol(const char* s) {
        if (!at_symbol(s))
            throw ParseError(std::string("expected '") + s + "'", lex_.peek().pos);
        lex_.take();
    }

    Value sum() {
        bool neg = false;
        while (at_symbol("-") || at_symbol("+")) {
            if (lex_.take().text == "-") neg = !neg;
        }
        Value acc = product();
        if (neg) acc = negate(acc);
        while (at_symbol("+") || at_symbol("-")) {
            bool minus = lex_.take().text == "-";
            Value rhs = product();
            acc = add(acc, minus ? negate(rhs) : rhs);
        }
        return acc;
    }

    Value product() {
        Value acc = postfix();
        for (;;) {
            if (at_symbol("*")) {
                lex_.take();
                acc = multiply(acc, postfix());
            } else if (at_symbol("/")) {
                std::size_t pos = lex_.peek().pos;
                lex_.take();
                Value rhs = postfix();
                if (rhs.is_form() || !rhs.scalar.is_rational())
                    throw ParseError("division only by rational constants", pos);
                Rational r = rhs.scalar.as_rational();
                if (r == 0) throw ParseError("division by zero", pos);
                acc = scale(acc, Rational(denominator(r), numerator(r)));
            } else if (starts_factor()) {
                acc = multiply(acc, postfix());  // juxtaposition
            } else {
                break;
            }
        }
        return acc;
    }

    bool starts_factor() const {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Number || t.kind == Token::Kind::Ident) return true;
        return t.kind == Token::Kind::Symbol && t.text == "(";
    }

    Value postfix() {
        Value acc = primary();
        while (at_symbol("^")) {
            std::size_t pos = lex_.peek().pos;
            lex_.take();
            if (lex_.peek().kind == Token::Kind::Number) {
                int k = std::stoi(lex_.take().text);
                acc = power(acc, k);
            } else if (starts_factor()) {
                acc = multiply(acc, primary());  // explicit wedge
            } else {
                throw ParseError("expected exponent or wedge factor after '^'", pos);
            }
        }
        return acc;
    }

    Value primary() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Number) {
            Token n = lex_.take();
            return scalar_value(ScalarExpr::rational(Rational(Integer(n.text))));
        }
        if (at_symbol("(")) {
            lex_.take();
            Value v = sum();
            expect_symbol(")");
            return v;
        }
        if (t.kind == Token::Kind::Ident) return ident_primary();
        throw ParseError("unexpected token", t.pos);
    }

    Value ident_primary() {
        Token id = lex_.take();
        if (id.text == "exp") {
            expect_symbol("(");
            Value arg = sum();
            expect_symbol(")");
            return scalar_value(ScalarExpr::exp_of(require_scalar(arg, id.pos)));
        }
        if (id.text == "d" && at_symbol("[")) {
            lex_.take();
            Token coord = expect_ident();
            expect_symbol("]");
            if (!chart_) throw ParseError("d[...] needs a chart", id.pos);
            if (!chart_->has(coord.text))
                throw ParseError("unknown coordinate '" + coord.text + "'", coord.pos);
            Value v;
            v.form = DifferentialForm::basis(chart_, coord.text);
            return v;
        }
        if (id.text == "D" && at_symbol("[")) {
            lex_.take();
            Token fname = expect_ident();
            std::vector<std::string> index;
            while (at_symbol(",")) {
                lex_.take();
                index.push_back(expect_ident().text);
            }
            expect_symbol("]");
            return scalar_value(make_partial(fname, std::move(index)));
        }
        int order = 0;
        if (lex_.peek().kind == Token::Kind::Primes) order = lex_.take().count;
        if (at_symbol("(")) {
            lex_.take();
            Value arg = sum();
            expect_symbol(")");
            return scalar_value(
                ScalarExpr::profile(id.text, order, require_scalar(arg, id.pos)));
        }
        if (order > 0) throw ParseError("derivative primes need an argument list", id.pos);
        if (chart_ && chart_->functions().count(id.text))
            return scalar_value(make_partial(id, {}));
        if (strict_ && chart_ && !chart_->has(id.text))
            throw ParseError("unknown identifier '" + id.text + "'", id.pos);
        return scalar_value(ScalarExpr::variable(id.text));
    }

    ScalarExpr make_partial(const Token& fname, std::vector<std::string> index) {
        if (!chart_ || !chart_->functions().count(fname.text))
            throw ParseError("abstract symbol '" + fname.text +
                                 "' is not declared on the chart",
                             fname.pos);
        for (const auto& i : index)
            if (!chart_->has(i))
                throw ParseError("unknown coordinate '" + i + "' in partial index",
                                 fname.pos);
        return ScalarExpr::partial(fname.text, std::move(index),
                                   chart_->functions().at(fname.text));
    }

    Token expect_ident() {
        if (lex_.peek().kind != Token::Kind::Ident)
            throw ParseError("expected identifier", lex_.peek().pos);
        return lex_.take();
    }

    static Value scalar_value(ScalarExpr e) {
        Value v;
        v.scalar = std::move(e);
        return v;
    }
    ScalarExpr require_scalar(const Value& v, std::size_t pos) {
        if (!v.is_form()) return v.scalar;
        if (v.form->degree() == 0) return v.form->coefficient(std::vector<int>{});
        throw ParseError("expected a scalar expression", pos);
    }
    DifferentialForm to_form(const Value& v) {
        if (v.is_form()) return *v.form;
        if (!chart_) throw Error("internal: scalar promoted without a chart");
        return DifferentialForm::scalar(chart_, v.scalar);
    }

    Value negate(const Value& v) {
        Value r;
        if (v.is_form())
            r.form = -*v.form;
        else
            r.scalar = -v.scalar;
        return r;
    }
    Value scale(const Value& v, const Rational& r) {
        Value out;
        if (v.is_form())
            out.form = v.form->scaled(ScalarExpr::rational(r));
        else
            out.scalar = v.scalar * r;
        return out;
    }
    Value add(const Value& a, const Value& b) {
        Value r;
        if (!a.is_form() && !b.is_form()) {
            r.scalar = a.scalar + b.scalar;
            return r;
        }
        r.form = to_form(a) + to_form(b);
        return r;
    }
    Value multiply(const Value& a, const Value& b) {
        Value r;
        if (!a.is_form() && !b.is_form()) {
            r.scalar = a.scalar * b.scalar;
            return r;
        }
        if (!a.is_form()) {
            r.form = b.form->scaled(a.scalar);
            return r;
        }
        if (!b.is_form()) {
            r.form = a.form->scaled(b.scalar);
            return r;
        }
        r.form = wedge_product(*a.form, *b.form);
        return r;
    }
    Value power(const Value& v, int k) {
        Value r;
        if (k < 0) throw Error("negative exponents are not supported");
        if (v.is_form() && v.form->degree() > 0)
            r.form = wedge_power(*v.form, k);
        else if (v.is_form())
            r.form = DifferentialForm::scalar(
                v.form->chart_ptr(), v.form->coefficient(std::vector<int>{}).pow(k));
        else
            r.scalar = v.scalar.pow(k);
        return r;
    }
};

}  // namespace detail

inline ScalarExpr parse_scalar(const std::string& text, ChartPtr chart = nullptr,
                               bool strict = false) {
    detail::Parser p(text, chart, strict);
    detail::Value v = p.parse();
    if (!v.is_form()) return v.scalar;
    if (v.form->degree() == 0) return v.form->coefficient(std::vector<int>{});
    throw ParseError("expected a scalar expression, found a form of degree " +
                         std::to_string(v.form->degree()),
                     0);
}

inline DifferentialForm parse_form(const std::string& text, ChartPtr chart,
                                   bool strict = true) {
    if (!chart) throw Error("parse_form needs a chart");
    detail::Parser p(text, chart, strict);
    detail::Value v = p.parse();
    if (v.is_form()) return *v.form;
    return DifferentialForm::scalar(chart, v.scalar);
}

}  // namespace wedge
