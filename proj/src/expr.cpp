#include "hermite/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "hermite/errors.hpp"

namespace hermite {

namespace {

using Kind = ExprNode::Kind;

bool is_function(std::string_view name) {
    static constexpr std::string_view names[] = {"exp", "sin", "cos", "sinh", "cosh", "sech", "sqrt"};
    for (auto n : names)
        if (n == name) return true;
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr parse() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
        ExprPtr e = expr();
        skip_ws();
        if (pos_ < src_.size()) {
            if (src_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
            throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static ExprPtr make(Kind k, std::size_t off, std::vector<ExprPtr> args = {}) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->offset = off;
        n->args = std::move(args);
        return n;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('+')) lhs = make(Kind::add, at, {lhs, term()});
            else if (accept('-')) lhs = make(Kind::sub, at, {lhs, term()});
            else return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('*')) lhs = make(Kind::mul, at, {lhs, unary()});
            else if (accept('/')) lhs = make(Kind::div, at, {lhs, unary()});
            else return lhs;
        }
    }

    ExprPtr unary() {
        skip_ws();
        const std::size_t at = pos_;
        if (accept('-')) return make(Kind::negate, at, {unary()});
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        skip_ws();
        const std::size_t at = pos_;
        if (accept('^')) return make(Kind::pow, at, {base, unary()});
        return base;
    }

    ExprPtr primary() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!accept(')')) throw ParseError("unbalanced '('", at);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) ++end;
            const std::string name(src_.substr(pos_, end - pos_));
            pos_ = end;
            if (name == "x") return make(Kind::variable, at);
            if (name == "pi" || name == "e") {
                auto n = std::make_shared<ExprNode>();
                n->kind = Kind::constant;
                n->name = name;
                n->value = name == "pi" ? std::numbers::pi : std::numbers::e;
                n->offset = at;
                return n;
            }
            if (!is_function(name)) throw ParseError("unknown identifier '" + name + "'", at);
            if (!accept('(')) throw ParseError("function '" + name + "' expects one argument", pos_);
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == ')') throw ParseError("function '" + name + "' expects one argument", pos_);
            ExprPtr arg = expr();
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == ',') throw ParseError("function '" + name + "' expects one argument", pos_);
            if (!accept(')')) throw ParseError("unbalanced '('", at + name.size());
            auto n = std::make_shared<ExprNode>();
            n->kind = Kind::call;
            n->name = name;
            n->offset = at;
            n->args = {arg};
            return n;
        }
        if (c == ')') throw ParseError("unbalanced ')'", pos_);
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    ExprPtr number() {
        const std::size_t at = pos_;
        auto digits = [&](std::size_t i) {
            while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
            return i;
        };
        std::size_t end = digits(pos_);
        if (end < src_.size() && src_[end] == '.') end = digits(end + 1);
        if (end == at + 1 && src_[at] == '.') throw ParseError("malformed number", at);
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t k = end + 1;
            if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
            const std::size_t exp_end = digits(k);
            if (exp_end > k) end = exp_end;
        }
        const std::string text(src_.substr(at, end - at));
        pos_ = end;
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::number;
        n->value = std::strtod(text.c_str(), nullptr);
        n->offset = at;
        return n;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

std::complex<double> int_pow(std::complex<double> b, long long e) {
    const bool inv = e < 0;
    unsigned long long k = static_cast<unsigned long long>(inv ? -e : e);
    std::complex<double> r = 1.0;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return inv ? 1.0 / r : r;
}

std::complex<double> eval_node(const ExprNode& n, std::complex<double> x) {
    auto check = [&n](std::complex<double> v) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw EvalError("non-finite value", n.offset);
        return v;
    };
    switch (n.kind) {
        case Kind::number:
        case Kind::constant: return n.value;
        case Kind::variable: return x;
        case Kind::negate: return -eval_node(*n.args[0], x);
        case Kind::add: return eval_node(*n.args[0], x) + eval_node(*n.args[1], x);
        case Kind::sub: return eval_node(*n.args[0], x) - eval_node(*n.args[1], x);
        case Kind::mul: return check(eval_node(*n.args[0], x) * eval_node(*n.args[1], x));
        case Kind::div: {
            const auto den = eval_node(*n.args[1], x);
            if (den == 0.0) throw EvalError("division by zero", n.offset);
            return check(eval_node(*n.args[0], x) / den);
        }
        case Kind::pow: {
            const auto b = eval_node(*n.args[0], x);
            const auto e = eval_node(*n.args[1], x);
            if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) <= 64) {
                if (b == 0.0 && e.real() < 0) throw EvalError("zero to a negative power", n.offset);
                return check(int_pow(b, static_cast<long long>(e.real())));
            }
            if (b == 0.0) {
                if (e.real() > 0) return 0.0;
                throw EvalError("branch point of power", n.offset);
            }
            return check(std::pow(b, e));
        }
        case Kind::call: {
            const auto a = eval_node(*n.args[0], x);
            const std::string& f = n.name;
            if (f == "exp") return check(std::exp(a));
            if (f == "sin") return check(std::sin(a));
            if (f == "cos") return check(std::cos(a));
            if (f == "sinh") return check(std::sinh(a));
            if (f == "cosh") return check(std::cosh(a));
            if (f == "sqrt") return check(std::sqrt(a));
            if (f == "sech") {
                const auto c = std::cosh(a);
                if (c == 0.0) throw EvalError("pole of sech", n.offset);
                return check(1.0 / c);
            }
            throw EvalError("unknown function '" + f + "'", n.offset);
        }
    }
    throw EvalError("malformed tree", n.offset);
}

void print_node(const ExprNode& n, std::string& out) {
    auto bin = [&](const char* op) {
        out += '(';
        print_node(*n.args[0], out);
        out += op;
        print_node(*n.args[1], out);
        out += ')';
    };
    switch (n.kind) {
        case Kind::number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        }
        case Kind::constant: out += n.name; return;
        case Kind::variable: out += 'x'; return;
        case Kind::negate:
            out += "(-";
            print_node(*n.args[0], out);
            out += ')';
            return;
        case Kind::add: bin(" + "); return;
        case Kind::sub: bin(" - "); return;
        case Kind::mul: bin("*"); return;
        case Kind::div: bin("/"); return;
        case Kind::pow: bin("^"); return;
        case Kind::call:
            out += n.name;
            out += '(';
            print_node(*n.args[0], out);
            out += ')';
            return;
    }
}

}  // namespace

std::complex<double> ExprAst::eval(std::complex<double> x) const {
    if (!root_) throw EvalError("empty expression", 0);
    return eval_node(*root_, x);
}

std::string ExprAst::to_string() const {
    std::string out;
    if (root_) print_node(*root_, out);
    return out;
}

bool same_tree(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
    if ((a.kind == Kind::number || a.kind == Kind::constant) && a.value != b.value) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_tree(*a.args[i], *b.args[i])) return false;
    return true;
}

ExprAst parse_function(std::string_view src) { return ExprAst(Parser(src).parse()); }

}  // namespace hermite
