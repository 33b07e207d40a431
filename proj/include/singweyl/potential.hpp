#pragma once

// Potentials on a half-line interval (a,b): callable q(x), endpoint data,
// and the singularity strength l at the left endpoint. Sources: any
// callable, a tabulated (x,q) column file, or a small arithmetic
// expression in x.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "singweyl/quadrature.hpp"
#include "singweyl/types.hpp"

namespace singweyl {

struct Potential {
    std::function<double(double)> q;
    double a = 0.0;
    double b = std::numeric_limits<double>::infinity();
    // Strength of the l(l+1)/(x-a)^2 singularity at a; a regular endpoint
    // behaves like l = 0 with vanishing centrifugal term.
    double l = 0.0;
    bool regular_left = true;
    enum class Tail { regular, decaying } tail = Tail::decaying;
    // Expansion q(x) - l(l+1)/(x-a)^2 = q1/(x-a) + q0 + o(1); estimated
    // numerically when not provided by a model.
    double q1 = std::numeric_limits<double>::quiet_NaN();
    double q0 = std::numeric_limits<double>::quiet_NaN();

    // Remainder after removing the centrifugal part.
    double q_reduced(double x) const {
        double s = x - a;
        return q(x) - l * (l + 1.0) / (s * s);
    }

    void validate() const {
        if (!q) throw precondition_error("Potential: missing q");
        if (!(a < b)) throw precondition_error("Potential: need a < b");
        if (l < -0.5) throw precondition_error("Potential: singularity strength below -1/2 unsupported");
    }
};

inline void estimate_frobenius_coeffs(Potential& pot) {
    if (std::isfinite(pot.q1) && std::isfinite(pot.q0)) return;
    // q_reduced(a+s) ~ q1/s + q0 + c s; least squares at moderate offsets
    // where subtracting the centrifugal part does not cancel.
    std::vector<double> ss;
    for (int k = 1; k <= 12; ++k) ss.push_back(0.005 * k);
    double G[3][3] = {};
    double rhs[3] = {};
    for (double s : ss) {
        double basis[3] = {1.0 / s, 1.0, s};
        double v = pot.q_reduced(pot.a + s);
        if (!std::isfinite(v)) continue;
        for (int i = 0; i < 3; ++i) {
            rhs[i] += basis[i] * v;
            for (int j = 0; j < 3; ++j) G[i][j] += basis[i] * basis[j];
        }
    }
    // 3x3 Gaussian elimination with partial pivoting
    double A[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) A[i][j] = G[i][j];
        A[i][3] = rhs[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col || A[col][col] == 0.0) continue;
            double f = A[r][col] / A[col][col];
            for (int j = col; j < 4; ++j) A[r][j] -= f * A[col][j];
        }
    }
    double q1 = A[0][3] / A[0][0];
    double q0 = A[1][3] / A[1][1];
    if (std::abs(q1) < 1e-6) q1 = 0.0;
    if (!std::isfinite(pot.q1)) pot.q1 = std::isfinite(q1) ? q1 : 0.0;
    if (!std::isfinite(pot.q0)) pot.q0 = std::isfinite(q0) ? q0 : 0.0;
}

// ---------------------------------------------------------------------------
// Expression potentials: +, -, *, /, ^, x, ln, exp, parentheses, numbers.

namespace detail {

struct ExprNode {
    enum class Kind { number, var, add, sub, mul, div, pow, neg, ln, exp } kind;
    double value = 0.0;
    std::shared_ptr<ExprNode> lhs, rhs;

    double eval(double x) const {
        switch (kind) {
            case Kind::number: return value;
            case Kind::var: return x;
            case Kind::add: return lhs->eval(x) + rhs->eval(x);
            case Kind::sub: return lhs->eval(x) - rhs->eval(x);
            case Kind::mul: return lhs->eval(x) * rhs->eval(x);
            case Kind::div: return lhs->eval(x) / rhs->eval(x);
            case Kind::pow: return std::pow(lhs->eval(x), rhs->eval(x));
            case Kind::neg: return -lhs->eval(x);
            case Kind::ln: return std::log(lhs->eval(x));
            case Kind::exp: return std::exp(lhs->eval(x));
        }
        return 0.0;
    }
};

using ExprPtr = std::shared_ptr<ExprNode>;

class ExprParser {
  public:
    explicit ExprParser(std::string text) : s_(std::move(text)) {}

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

  private:
    std::string s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw precondition_error("potential expression: " + what + " at offset " + std::to_string(pos_));
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static ExprPtr node(ExprNode::Kind k, ExprPtr l = {}, ExprPtr r = {}) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    ExprPtr parse_sum() {
        ExprPtr e = parse_term();
        for (;;) {
            if (eat('+'))
                e = node(ExprNode::Kind::add, e, parse_term());
            else if (eat('-'))
                e = node(ExprNode::Kind::sub, e, parse_term());
            else
                return e;
        }
    }
    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (eat('*'))
                e = node(ExprNode::Kind::mul, e, parse_unary());
            else if (eat('/'))
                e = node(ExprNode::Kind::div, e, parse_unary());
            else
                return e;
        }
    }
    ExprPtr parse_unary() {
        if (eat('-')) return node(ExprNode::Kind::neg, parse_unary());
        return parse_power();
    }
    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (eat('^')) return node(ExprNode::Kind::pow, base, parse_unary());
        return base;
    }
    ExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit((unsigned char)c) || c == '.') {
            std::size_t used = 0;
            double v = std::stod(s_.substr(pos_), &used);
            pos_ += used;
            auto n = node(ExprNode::Kind::number);
            n->value = v;
            return n;
        }
        if (std::isalpha((unsigned char)c)) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha((unsigned char)s_[pos_])) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (name == "x") return node(ExprNode::Kind::var);
            if (name == "ln" || name == "exp") {
                if (!eat('(')) fail("expected '(' after " + name);
                ExprPtr arg = parse_sum();
                if (!eat(')')) fail("expected ')'");
                return node(name == "ln" ? ExprNode::Kind::ln : ExprNode::Kind::exp, arg);
            }
            fail("unknown symbol '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace detail

inline Potential potential_from_expression(const std::string& expr, double a = 0.0,
                                           double b = std::numeric_limits<double>::infinity()) {
    detail::ExprPtr tree = detail::ExprParser(expr).parse();
    Potential pot;
    pot.q = [tree](double x) { return tree->eval(x); };
    pot.a = a;
    pot.b = b;
    // Detect a centrifugal leading term l(l+1)/(x-a)^2 so that the regular
    // solution can be started correctly.
    const double s1 = 1e-5, s2 = 2e-5;
    double g1 = s1 * s1 * pot.q(a + s1);
    double g2 = s2 * s2 * pot.q(a + s2);
    if (std::isfinite(g1) && std::isfinite(g2) && std::abs(g1) > 1e-8 && std::abs(g1 - g2) < 1e-3 * std::abs(g1)) {
        double ll1 = 2.0 * g1 - g2;  // removes the linear term of s^2 q(a+s)
        double l = 0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * ll1)));
        pot.l = l;
        pot.regular_left = false;
    }
    estimate_frobenius_coeffs(pot);
    pot.validate();
    return pot;
}

// Tabulated (x,q) samples with linear interpolation; constant extension
// outside the tabulated range.
inline Potential potential_from_table(std::vector<double> xs, std::vector<double> qs) {
    if (xs.size() != qs.size() || xs.size() < 2) throw precondition_error("potential table: need >= 2 matching rows");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw precondition_error("potential table: x must be strictly increasing");
    auto xsp = std::make_shared<std::vector<double>>(std::move(xs));
    auto qsp = std::make_shared<std::vector<double>>(std::move(qs));
    Potential pot;
    pot.q = [xsp, qsp](double x) {
        const auto& X = *xsp;
        const auto& Q = *qsp;
        if (x <= X.front()) return Q.front();
        if (x >= X.back()) return Q.back();
        auto it = std::upper_bound(X.begin(), X.end(), x);
        std::size_t i = (std::size_t)(it - X.begin());
        double t = (x - X[i - 1]) / (X[i] - X[i - 1]);
        return (1.0 - t) * Q[i - 1] + t * Q[i];
    };
    pot.a = 0.0;
    pot.q1 = 0.0;
    pot.q0 = pot.q(0.0);
    pot.validate();
    return pot;
}

// ---------------------------------------------------------------------------
// Endpoint diagnostics.

struct KneserReport {
    bool satisfied = false;
    double C = 0.0;
    double weighted_remainder = 0.0;  // integral of (x-a) * Q(x) over (a,c)
};

// Fits the largest C with min(q,0) >= -C/(x-a)^2 - Q(x) near a and checks
// that (x-a) Q(x) stays integrable; C < 1/4 keeps the operator bounded
// below near the endpoint (C = 1/4 is borderline, accepted).
inline KneserReport check_kneser(const Potential& pot, double c) {
    pot.validate();
    if (!(c > pot.a && c < pot.b)) throw precondition_error("check_kneser: c outside (a,b)");
    KneserReport rep;
    // C from the scaled negative part on a logarithmic grid hugging a.
    double C = 0.0;
    for (double s = 1e-7; s <= 0.05; s *= std::pow(10.0, 0.125)) {
        double v = pot.q(pot.a + s);
        if (v < 0.0) C = std::max(C, -v * s * s);
    }
    rep.C = C;
    auto Qpart = [&](double x) {
        double s = x - pot.a;
        double v = pot.q(x);
        double excess = -v - C / (s * s);
        return s * std::max(0.0, excess);
    };
    double integral = 0.0;
    double lo = pot.a + 1e-7;
    integral += integrate_adaptive<double>(Qpart, lo, pot.a + std::min(0.1, c - pot.a), 1e-8);
    if (c > pot.a + 0.1) integral += integrate_adaptive<double>(Qpart, pot.a + 0.1, c, 1e-8);
    rep.weighted_remainder = integral;
    rep.satisfied = (C <= 0.25 + 1e-9) && std::isfinite(integral);
    return rep;
}

// Weighted integrability of the reduced potential near a: returns the
// integral of w(x)|q(x) - l(l+1)/(x-a)^2| over (a, a+1) with w = (x-a),
// or (x-a)(1 - ln(x-a)) in the borderline case l = -1/2. Finite values
// certify a valid singular endpoint of the given strength.
inline double singularity_weight_integral(const Potential& pot) {
    pot.validate();
    const bool log_weight = std::abs(pot.l + 0.5) < 1e-12;
    auto f = [&](double x) {
        double s = x - pot.a;
        double w = log_weight ? s * (1.0 - std::log(s)) : s;
        return w * std::abs(pot.q_reduced(x));
    };
    double hi = std::min(pot.a + 1.0, 0.5 * (pot.a + pot.b));
    // march toward the endpoint on dyadic shells so the integrable blowup
    // is resolved without the adaptive splitter stalling at a
    double total = 0.0;
    double left = hi;
    for (int k = 0; k < 48 && left - pot.a > 1e-14; ++k) {
        double next = pot.a + 0.5 * (left - pot.a);
        total += integrate_adaptive<double>(f, next, left, 1e-10);
        left = next;
    }
    return total;
}

}  // namespace singweyl
