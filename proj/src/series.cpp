#include "viikit/series.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace viikit {

// --- TruncatedSeries ---------------------------------------------------------

TruncatedSeries TruncatedSeries::constant(const Rational& c, int order) {
    TruncatedSeries s(order);
    s.set_coeff(0, 0, c);
    return s;
}

TruncatedSeries TruncatedSeries::variable_z(int order) {
    TruncatedSeries s(order);
    s.set_coeff(1, 0, Rational(1));
    return s;
}

TruncatedSeries TruncatedSeries::variable_zeta(int order) {
    TruncatedSeries s(order);
    s.set_coeff(0, 1, Rational(1));
    return s;
}

TruncatedSeries TruncatedSeries::monomial(const Rational& c, int ze, int ze2, int order) {
    TruncatedSeries s(order);
    s.set_coeff(ze, ze2, c);
    return s;
}

Rational TruncatedSeries::coeff(int a, int b) const {
    auto it = c_.find({a, b});
    return it == c_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::set_coeff(int a, int b, const Rational& v) {
    if (a < 0 || b < 0) throw Error("TruncatedSeries: negative exponent");
    if (v.is_zero()) {
        c_.erase({a, b});
        return;
    }
    if (a + b > order_) return;  // beyond validity; not stored
    c_[{a, b}] = v;
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
    if (new_order > order_)
        throw OrderMismatch("cannot widen validity from order " + std::to_string(order_) +
                            " to " + std::to_string(new_order));
    TruncatedSeries out(new_order);
    for (const auto& [key, val] : c_)
        if (key.first + key.second <= new_order) out.c_[key] = val;
    return out;
}

TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y) {
    TruncatedSeries out(std::min(x.order_, y.order_));
    for (const auto& [key, val] : x.c_)
        if (key.first + key.second <= out.order_) out.c_[key] = val;
    for (const auto& [key, val] : y.c_) {
        if (key.first + key.second > out.order_) continue;
        auto [it, inserted] = out.c_.emplace(key, val);
        if (!inserted) {
            it->second += val;
            if (it->second.is_zero()) out.c_.erase(it);
        }
    }
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y) { return x + (-y); }

TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
    TruncatedSeries out(std::min(x.order_, y.order_));
    for (const auto& [kx, vx] : x.c_)
        for (const auto& [ky, vy] : y.c_) {
            int a = kx.first + ky.first, b = kx.second + ky.second;
            if (a + b > out.order_) continue;
            Rational prod = vx * vy;
            auto [it, inserted] = out.c_.emplace(TruncatedSeries::Key{a, b}, prod);
            if (!inserted) {
                it->second += prod;
                if (it->second.is_zero()) out.c_.erase(it);
            }
        }
    return out;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries out(order_);
    for (const auto& [key, val] : c_) out.c_[key] = -val;
    return out;
}

TruncatedSeries TruncatedSeries::invert_unit() const {
    Rational c0 = coeff(0, 0);
    if (c0.is_zero()) throw NonUnit("inverting a series with zero constant term");
    // u = c0 (1 + r): invert the geometric part by Horner, then scale.
    TruncatedSeries r = *this;
    r.c_.erase({0, 0});
    r = r * TruncatedSeries::constant(c0.inverse(), order_);
    TruncatedSeries acc = TruncatedSeries::constant(Rational(1), order_);
    for (int i = 0; i < order_; ++i)
        acc = TruncatedSeries::constant(Rational(1), order_) - r * acc;
    return acc * TruncatedSeries::constant(c0.inverse(), order_);
}

TruncatedSeries TruncatedSeries::divide_monomial(int a, int b) const {
    if (a < 0 || b < 0) throw Error("divide_monomial: negative exponent");
    if (order_ - a - b < 0)
        throw OrderMismatch("dividing by z^" + std::to_string(a) + " zeta^" + std::to_string(b) +
                            " leaves no validity at order " + std::to_string(order_));
    TruncatedSeries out(order_ - a - b);
    for (const auto& [key, val] : c_) {
        if (key.first < a || key.second < b)
            throw FixtureViolation("term z^" + std::to_string(key.first) + " zeta^" +
                                   std::to_string(key.second) + " is not divisible by z^" +
                                   std::to_string(a) + " zeta^" + std::to_string(b));
        out.c_[{key.first - a, key.second - b}] = val;
    }
    return out;
}

TruncatedSeries TruncatedSeries::pow(long long e) const {
    if (e < 0) return invert_unit().pow(-e);
    TruncatedSeries acc = TruncatedSeries::constant(Rational(1), order_);
    for (long long i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

std::string TruncatedSeries::str() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, val] : c_) {
        Rational v = val;
        if (first) {
            if (v.sign() < 0) {
                out << "-";
                v = -v;
            }
        } else {
            out << (v.sign() < 0 ? " - " : " + ");
            if (v.sign() < 0) v = -v;
        }
        first = false;
        std::string vars;
        if (key.first > 0) {
            vars += "z";
            if (key.first > 1) vars += "^" + std::to_string(key.first);
        }
        if (key.second > 0) {
            if (!vars.empty()) vars += "*";
            vars += "zeta";
            if (key.second > 1) vars += "^" + std::to_string(key.second);
        }
        if (vars.empty()) {
            out << v.str();
        } else {
            if (v != Rational(1)) out << v.str() << "*";
            out << vars;
        }
    }
    return out.str();
}

// --- expression language ------------------------------------------------------

struct ExprNode {
    enum class Kind { add, sub, mul, div, neg, pow, inv, literal, ident };
    Kind kind;
    ExprPtr lhs;
    ExprPtr rhs;
    long long exponent = 0;
    Rational value;
    std::string name;
};

namespace {

struct Token {
    enum class Kind { number, ident, op, end };
    Kind kind = Kind::end;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
        if (pos_ >= text_.size()) {
            current_ = {Token::Kind::end, ""};
            return;
        }
        char c = text_[pos_];
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
            current_ = {Token::Kind::number, text_.substr(start, pos_ - start)};
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
                ++pos_;
            current_ = {Token::Kind::ident, text_.substr(start, pos_ - start)};
            return;
        }
        if (std::string("+-*/^()").find(c) != std::string::npos) {
            ++pos_;
            current_ = {Token::Kind::op, std::string(1, c)};
            return;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' in expression");
    }

    std::string text_;
    size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ExprPtr parse() {
        ExprPtr e = expression();
        if (lex_.peek().kind != Token::Kind::end)
            throw ParseError("trailing input after expression: '" + lex_.peek().text + "'");
        return e;
    }

private:
    bool is_op(const char* s) const {
        return lex_.peek().kind == Token::Kind::op && lex_.peek().text == s;
    }

    ExprPtr expression() {
        bool negate = false;
        if (is_op("-")) {
            lex_.take();
            negate = true;
        } else if (is_op("+")) {
            lex_.take();
        }
        ExprPtr e = term();
        if (negate) e = unary(ExprNode::Kind::neg, e);
        while (is_op("+") || is_op("-")) {
            bool plus = lex_.take().text == "+";
            ExprPtr r = term();
            e = binary(plus ? ExprNode::Kind::add : ExprNode::Kind::sub, e, r);
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (is_op("*") || is_op("/")) {
            bool times = lex_.take().text == "*";
            ExprPtr r = factor();
            e = binary(times ? ExprNode::Kind::mul : ExprNode::Kind::div, e, r);
        }
        return e;
    }

    ExprPtr factor() {
        ExprPtr base = primary();
        if (!is_op("^")) return base;
        lex_.take();
        bool negative = false;
        if (is_op("-")) {
            lex_.take();
            negative = true;
        }
        Token t = lex_.take();
        if (t.kind != Token::Kind::number)
            throw ParseError("expected an integer exponent after '^'");
        auto node = std::make_shared<ExprNode>();
        node->kind = ExprNode::Kind::pow;
        node->lhs = base;
        node->exponent = std::stoll(t.text) * (negative ? -1 : 1);
        return node;
    }

    ExprPtr primary() {
        if (is_op("-")) {
            lex_.take();
            return unary(ExprNode::Kind::neg, primary());
        }
        if (is_op("(")) {
            lex_.take();
            ExprPtr e = expression();
            expect(")");
            return e;
        }
        Token t = lex_.take();
        if (t.kind == Token::Kind::number) {
            auto node = std::make_shared<ExprNode>();
            node->kind = ExprNode::Kind::literal;
            node->value = Rational::parse(t.text);
            return node;
        }
        if (t.kind == Token::Kind::ident) {
            if (t.text == "inv" && is_op("(")) {
                lex_.take();
                ExprPtr e = expression();
                expect(")");
                return unary(ExprNode::Kind::inv, e);
            }
            auto node = std::make_shared<ExprNode>();
            node->kind = ExprNode::Kind::ident;
            node->name = t.text;
            return node;
        }
        throw ParseError(t.kind == Token::Kind::end
                             ? std::string("unexpected end of expression")
                             : "unexpected token '" + t.text + "'");
    }

    void expect(const char* s) {
        if (!is_op(s)) throw ParseError(std::string("expected '") + s + "'");
        lex_.take();
    }

    static ExprPtr unary(ExprNode::Kind kind, ExprPtr inner) {
        auto node = std::make_shared<ExprNode>();
        node->kind = kind;
        node->lhs = std::move(inner);
        return node;
    }

    static ExprPtr binary(ExprNode::Kind kind, ExprPtr lhs, ExprPtr rhs) {
        auto node = std::make_shared<ExprNode>();
        node->kind = kind;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        return node;
    }

    Lexer lex_;
};

// Division dispatch: a single-term divisor is an exact monomial extraction
// (scaled by its coefficient); a unit divisor multiplies by the inverse.
TruncatedSeries divide(const TruncatedSeries& lhs, const TruncatedSeries& rhs) {
    if (rhs.coefficients().empty()) throw NonUnit("division by the zero series");
    if (rhs.coefficients().size() == 1) {
        const auto& [key, val] = *rhs.coefficients().begin();
        int shared = std::min(lhs.order(), rhs.order());
        TruncatedSeries quotient = lhs.truncated(shared).divide_monomial(key.first, key.second);
        return quotient * TruncatedSeries::constant(val.inverse(), quotient.order());
    }
    return lhs * rhs.invert_unit();
}

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).parse(); }

TruncatedSeries eval_expression(const ExprPtr& expr, const SeriesEnv& env) {
    if (!expr) throw Error("empty expression");
    switch (expr->kind) {
        case ExprNode::Kind::add:
            return eval_expression(expr->lhs, env) + eval_expression(expr->rhs, env);
        case ExprNode::Kind::sub:
            return eval_expression(expr->lhs, env) - eval_expression(expr->rhs, env);
        case ExprNode::Kind::mul:
            return eval_expression(expr->lhs, env) * eval_expression(expr->rhs, env);
        case ExprNode::Kind::div: {
            if (env.polynomial_only)
                throw Error("division is not allowed in a polynomial map");
            TruncatedSeries lhs = eval_expression(expr->lhs, env);
            TruncatedSeries rhs = eval_expression(expr->rhs, env);
            return divide(lhs, rhs);
        }
        case ExprNode::Kind::neg:
            return -eval_expression(expr->lhs, env);
        case ExprNode::Kind::pow: {
            if (env.polynomial_only && expr->exponent < 0)
                throw Error("negative powers are not allowed in a polynomial map");
            return eval_expression(expr->lhs, env).pow(expr->exponent);
        }
        case ExprNode::Kind::inv: {
            if (env.polynomial_only) throw Error("inv is not allowed in a polynomial map");
            return eval_expression(expr->lhs, env).invert_unit();
        }
        case ExprNode::Kind::literal:
            return TruncatedSeries::constant(expr->value, env.order);
        case ExprNode::Kind::ident: {
            auto s = env.series.find(expr->name);
            if (s != env.series.end()) return s->second;
            auto c = env.constants.find(expr->name);
            if (c != env.constants.end()) return TruncatedSeries::constant(c->second, env.order);
            throw Error("unknown identifier '" + expr->name + "'");
        }
    }
    throw Error("unreachable expression kind");
}

// --- polynomial maps and composition -------------------------------------------

PolyMap PolyMap::parse(const std::string& first_text, const std::string& second_text) {
    PolyMap m;
    m.first_text = first_text;
    m.second_text = second_text;
    m.first = parse_expression(first_text);
    m.second = parse_expression(second_text);
    return m;
}

std::pair<TruncatedSeries, TruncatedSeries> PolyMap::apply(
    const std::pair<TruncatedSeries, TruncatedSeries>& in,
    const std::map<std::string, Rational>& constants) const {
    SeriesEnv env;
    env.series.emplace("u", in.first);
    env.series.emplace("v", in.second);
    env.constants = constants;
    env.polynomial_only = true;
    env.order = std::min(in.first.order(), in.second.order());
    return {eval_expression(first, env), eval_expression(second, env)};
}

std::pair<TruncatedSeries, TruncatedSeries> compose_chain(
    const std::vector<PolyMap>& maps, std::pair<TruncatedSeries, TruncatedSeries> inner, int order,
    const std::map<std::string, Rational>& constants) {
    if (inner.first.order() < order || inner.second.order() < order)
        throw OrderMismatch("inner components carry validity (" +
                            std::to_string(inner.first.order()) + ", " +
                            std::to_string(inner.second.order()) + ") below the requested order " +
                            std::to_string(order));
    std::pair<TruncatedSeries, TruncatedSeries> cur = {inner.first.truncated(order),
                                                       inner.second.truncated(order)};
    for (size_t i = maps.size(); i-- > 0;) cur = maps[i].apply(cur, constants);
    return cur;
}

// --- germs and factorization fixtures -------------------------------------------

namespace {

Rational resolve_scalar(const GermScalar& s, const std::map<std::string, Rational>& assignment,
                        const std::string& role) {
    if (std::holds_alternative<Rational>(s)) return std::get<Rational>(s);
    const std::string& name = std::get<std::string>(s);
    auto it = assignment.find(name);
    if (it == assignment.end())
        throw Error("no value assigned to symbol '" + name + "' (" + role + ")");
    return it->second;
}

}  // namespace

std::pair<TruncatedSeries, TruncatedSeries> expand_germ(
    const Germ& germ, const std::map<std::string, Rational>& assignment, int order) {
    validate(germ);
    TruncatedSeries first(order);
    Rational lambda = resolve_scalar(germ.lambda, assignment, "lambda");
    first.set_coeff(1, (int)germ.s, lambda);
    for (const auto& [p, c] : germ.coeffs) {
        Rational value = resolve_scalar(c, assignment, "c_" + std::to_string(p));
        Rational prior = first.coeff(0, (int)p);
        first.set_coeff(0, (int)p, prior + value);
    }
    if (!scalar_is_zero(germ.c_extra)) {
        Rational extra = resolve_scalar(germ.c_extra, assignment, "c_extra");
        int exponent = (int)((germ.s * germ.k) / (germ.k - 1));
        first.set_coeff(0, exponent, first.coeff(0, exponent) + extra);
    }
    TruncatedSeries second = TruncatedSeries::monomial(Rational(1), 0, (int)germ.k, order);
    return {first, second};
}

namespace {

struct MismatchKey {
    int degree;
    int component;
    int z_exp;
    int zeta_exp;
    bool operator<(const MismatchKey& o) const {
        if (degree != o.degree) return degree < o.degree;
        if (component != o.component) return component < o.component;
        return z_exp < o.z_exp;
    }
};

std::optional<Mismatch> first_mismatch(const std::pair<TruncatedSeries, TruncatedSeries>& got,
                                       const std::pair<TruncatedSeries, TruncatedSeries>& want,
                                       int order) {
    std::optional<MismatchKey> best;
    std::optional<Mismatch> out;
    for (int component = 1; component <= 2; ++component) {
        const TruncatedSeries& g = component == 1 ? got.first : got.second;
        const TruncatedSeries& w = component == 1 ? want.first : want.second;
        std::set<TruncatedSeries::Key> keys;
        for (const auto& [k, v] : g.coefficients()) keys.insert(k);
        for (const auto& [k, v] : w.coefficients()) keys.insert(k);
        for (const auto& k : keys) {
            if (k.first + k.second > order) continue;
            Rational gv = g.coeff(k.first, k.second);
            Rational wv = w.coeff(k.first, k.second);
            if (gv == wv) continue;
            MismatchKey mk{k.first + k.second, component, k.first, k.second};
            if (!best || mk < *best) {
                best = mk;
                out = Mismatch{component, k.first, k.second, gv, wv};
            }
        }
    }
    return out;
}

}  // namespace

Verdict verify_factorization(const FactorizationFixture& fixture, int order) {
    if (order < 3) throw Error("verification order must be at least 3");

    for (int slack = 4;; slack *= 2) {
        try {
            const int working = order + slack;
            SeriesEnv env;
            env.order = working;
            env.series.emplace("z", TruncatedSeries::variable_z(working));
            env.series.emplace("zeta", TruncatedSeries::variable_zeta(working));
            env.constants = fixture.assignment;

            std::pair<TruncatedSeries, TruncatedSeries> sigma{TruncatedSeries(0),
                                                              TruncatedSeries(0)};
            try {
                for (const NamedIntermediate& im : fixture.intermediates) {
                    TruncatedSeries value = eval_expression(parse_expression(im.expr), env);
                    env.series.insert_or_assign(im.name, std::move(value));
                }
                sigma.first = eval_expression(parse_expression(fixture.sigma.first), env);
                sigma.second = eval_expression(parse_expression(fixture.sigma.second), env);
            } catch (const FixtureViolation& e) {
                Verdict verdict;
                verdict.require_all = fixture.require_all;
                verdict.order = order;
                for (const FactorizationChain& chain : fixture.chains) {
                    ChainVerdict cv;
                    cv.chain = chain.name;
                    cv.equal = false;
                    cv.order = order;
                    cv.violation = e.what();
                    verdict.chains.push_back(std::move(cv));
                }
                return verdict;
            }
            if (sigma.first.order() < order || sigma.second.order() < order)
                throw OrderMismatch("sigma lost too much validity; padding insufficient");

            std::pair<TruncatedSeries, TruncatedSeries> target =
                expand_germ(fixture.target, fixture.assignment, order);

            Verdict verdict;
            verdict.require_all = fixture.require_all;
            verdict.order = order;
            for (const FactorizationChain& chain : fixture.chains) {
                ChainVerdict cv;
                cv.chain = chain.name;
                cv.order = order;
                auto composed = compose_chain(chain.maps, sigma, order, fixture.assignment);
                cv.mismatch = first_mismatch(composed, target, order);
                cv.equal = !cv.mismatch.has_value();
                verdict.chains.push_back(std::move(cv));
            }
            return verdict;
        } catch (const OrderMismatch&) {
            if (slack >= 64) throw;
        }
    }
}

}  // namespace viikit
