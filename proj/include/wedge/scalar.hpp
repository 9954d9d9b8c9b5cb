#pragma once

// Scalar computer-algebra kernel.
//
// A ScalarExpr is kept in a canonical normal form at all times: a sorted sum
// of terms, each term being
//
//     rational * prod(atom_i ^ e_i) * exp(argument)
//
// where an atom is a coordinate variable, a profile-function application
// f^{(k)}(arg), or an abstract partial-derivative symbol D[name,i1,...].
// Exponential factors of one term are merged into a single exp() whose
// argument is itself a canonical ScalarExpr, so exp(t)*exp(-t) reduces to 1.
// Equal expressions compare structurally equal; there is no division except
// by nonzero rational constants.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wedge/error.hpp"

namespace wedge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_pow(const Rational& base, int k) {
    if (k == 0) return Rational(1);
    if (k < 0) {
        if (base == 0) throw Error("division by zero in rational power");
        return rational_pow(Rational(denominator(base), numerator(base)), -k);
    }
    Integer n = numerator(base), d = denominator(base);
    return Rational(pow(n, static_cast<unsigned>(k)), pow(d, static_cast<unsigned>(k)));
}

inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

class ScalarExpr;
int compare(const ScalarExpr& a, const ScalarExpr& b);

struct Atom {
    enum class Kind { Variable, Profile, Partial };
    Kind kind = Kind::Variable;
    std::string name;
    int order = 0;                            // profile derivative order
    std::shared_ptr<const ScalarExpr> arg;    // profile argument
    std::vector<std::string> index;           // partial multi-index, sorted
    std::vector<std::string> deps;            // partial dependency set, sorted
};

int compare(const Atom& a, const Atom& b);

struct Monomial {
    std::vector<std::pair<Atom, int>> factors;   // sorted, exponents >= 1
    std::shared_ptr<const ScalarExpr> exp_arg;   // null: no exponential factor

    bool trivial() const { return factors.empty() && !exp_arg; }
};

int compare(const Monomial& a, const Monomial& b);

// Numeric evaluation context. `profile` yields the k-th derivative of a
// realized profile function at a point of its 1-d domain; `partial` yields
// a realized abstract function's partial derivative at the chart point.
struct EvalContext {
    const std::map<std::string, double>* point = nullptr;
    std::function<double(const std::string&, int, double)> profile;
    std::function<double(const std::string&, const std::vector<std::string>&,
                         const std::map<std::string, double>&)> partial;
};

// Key for binding a profile jet value symbolically: f^{(order)}(arg) -> value.
struct ProfileValue {
    std::string name;
    int order;
    Rational arg;
    Rational value;
};

class ScalarExpr {
public:
    using Term = std::pair<Monomial, Rational>;

    ScalarExpr() : terms_(std::make_shared<const std::vector<Term>>()) {}

    static ScalarExpr rational(Rational r) {
        if (r == 0) return ScalarExpr();
        return from_terms({{Monomial{}, std::move(r)}});
    }
    static ScalarExpr integer(long v) { return rational(Rational(v)); }
    static ScalarExpr variable(const std::string& name) {
        Atom a;
        a.kind = Atom::Kind::Variable;
        a.name = name;
        return from_atom(std::move(a));
    }
    static ScalarExpr profile(const std::string& name, int order, const ScalarExpr& arg) {
        if (order < 0) throw Error("negative derivative order");
        Atom a;
        a.kind = Atom::Kind::Profile;
        a.name = name;
        a.order = order;
        a.arg = std::make_shared<const ScalarExpr>(arg);
        return from_atom(std::move(a));
    }
    static ScalarExpr partial(const std::string& name, std::vector<std::string> index,
                              std::vector<std::string> deps) {
        std::sort(index.begin(), index.end());
        std::sort(deps.begin(), deps.end());
        Atom a;
        a.kind = Atom::Kind::Partial;
        a.name = name;
        a.index = std::move(index);
        a.deps = std::move(deps);
        return from_atom(std::move(a));
    }
    static ScalarExpr exp_of(const ScalarExpr& arg) {
        if (arg.is_zero()) return integer(1);
        Monomial m;
        m.exp_arg = std::make_shared<const ScalarExpr>(arg);
        return from_terms({{std::move(m), Rational(1)}});
    }

    bool is_zero() const { return terms_->empty(); }
    bool is_rational() const {
        return terms_->empty() || (terms_->size() == 1 && (*terms_)[0].first.trivial());
    }
    Rational as_rational() const {
        if (terms_->empty()) return Rational(0);
        if (!is_rational()) throw Error("expression is not a rational constant");
        return (*terms_)[0].second;
    }
    const std::vector<Term>& terms() const { return *terms_; }

    ScalarExpr operator+(const ScalarExpr& o) const {
        std::vector<Term> t(*terms_);
        t.insert(t.end(), o.terms_->begin(), o.terms_->end());
        return from_terms(std::move(t));
    }
    ScalarExpr operator-() const {
        std::vector<Term> t(*terms_);
        for (auto& [m, c] : t) c = -c;
        return from_terms(std::move(t));
    }
    ScalarExpr operator-(const ScalarExpr& o) const { return *this + (-o); }

    ScalarExpr operator*(const ScalarExpr& o) const {
        std::vector<Term> out;
        out.reserve(terms_->size() * o.terms_->size());
        for (const auto& [ma, ca] : *terms_)
            for (const auto& [mb, cb] : *o.terms_)
                out.emplace_back(mul_monomials(ma, mb), ca * cb);
        return from_terms(std::move(out));
    }
    ScalarExpr operator*(const Rational& r) const {
        std::vector<Term> t(*terms_);
        for (auto& [m, c] : t) c = c * r;
        return from_terms(std::move(t));
    }
    ScalarExpr divided_by(const Rational& r) const {
        if (r == 0) throw Error("division by zero");
        return *this * Rational(denominator(r), numerator(r));
    }
    ScalarExpr pow(int k) const {
        if (k < 0) throw Error("negative exponents are not supported");
        if (k == 0) return integer(1);
        if (terms_->size() == 1) {  // single term: exponentiate directly
            auto [m, c] = (*terms_)[0];
            Monomial out;
            for (auto& [a, e] : m.factors) out.factors.emplace_back(a, e * k);
            if (m.exp_arg)
                out.exp_arg = std::make_shared<const ScalarExpr>(
                    *m.exp_arg * Rational(k));
            return from_terms({{std::move(out), rational_pow(c, k)}});
        }
        ScalarExpr acc = integer(1), base = *this;
        int e = k;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = (e >>= 1) ? base * base : base;
        }
        return acc;
    }

    ScalarExpr diff(const std::string& var) const {
        std::vector<Term> out;
        for (const auto& [m, c] : *terms_) {
            // product rule over the explicit factors
            for (std::size_t i = 0; i < m.factors.size(); ++i) {
                const auto& [a, e] = m.factors[i];
                ScalarExpr da = diff_atom(a, var);
                if (da.is_zero()) continue;
                Monomial rest;
                rest.factors = m.factors;
                if (e == 1)
                    rest.factors.erase(rest.factors.begin() + i);
                else
                    rest.factors[i].second = e - 1;
                rest.exp_arg = m.exp_arg;
                ScalarExpr piece =
                    from_terms({{std::move(rest), c * Rational(e)}}) * da;
                append(out, piece);
            }
            // exponential factor: d exp(A) = exp(A) dA
            if (m.exp_arg) {
                ScalarExpr dA = m.exp_arg->diff(var);
                if (!dA.is_zero())
                    append(out, from_terms({{m, c}}) * dA);
            }
        }
        return from_terms(std::move(out));
    }

    ScalarExpr substitute(const std::map<std::string, ScalarExpr>& bindings) const {
        if (bindings.empty()) return *this;
        std::vector<Term> out;
        for (const auto& [m, c] : *terms_) {
            ScalarExpr piece = rational(c);
            for (const auto& [a, e] : m.factors)
                piece = piece * subst_atom(a, bindings).pow(e);
            if (m.exp_arg)
                piece = piece * exp_of(m.exp_arg->substitute(bindings));
            append(out, piece);
        }
        return from_terms(std::move(out));
    }

    // Replace profile atoms by a polynomial local model (defined after the
    // class; each model is an expression in a formal variable, and the k-th
    // derivative atom becomes the model's k-th formal derivative at the
    // atom's argument).
    ScalarExpr substitute_profiles(
        const std::map<std::string, struct LocalModel>& models) const;

    ScalarExpr bind_profile_values(const std::vector<ProfileValue>& values) const {
        std::vector<Term> out;
        for (const auto& [m, c] : *terms_) {
            ScalarExpr piece = rational(c);
            for (const auto& [a, e] : m.factors) {
                ScalarExpr sub = from_atom_copy(a);
                if (a.kind == Atom::Kind::Profile && a.arg->is_rational()) {
                    Rational argv = a.arg->as_rational();
                    for (const auto& pv : values)
                        if (pv.name == a.name && pv.order == a.order && pv.arg == argv) {
                            sub = rational(pv.value);
                            break;
                        }
                }
                piece = piece * sub.pow(e);
            }
            if (m.exp_arg)
                piece = piece * exp_of(m.exp_arg->bind_profile_values(values));
            append(out, piece);
        }
        return from_terms(std::move(out));
    }

    double eval(const EvalContext& ctx) const {
        double total = 0;
        for (const auto& [m, c] : *terms_) {
            double v = c.convert_to<double>();
            for (const auto& [a, e] : m.factors)
                v *= std::pow(eval_atom(a, ctx), e);
            if (m.exp_arg) v *= std::exp(m.exp_arg->eval(ctx));
            total += v;
        }
        return total;
    }

    void collect_profiles(std::vector<std::pair<std::string, int>>& out) const {
        for (const auto& [m, c] : *terms_) {
            for (const auto& [a, e] : m.factors) {
                if (a.kind == Atom::Kind::Profile) {
                    out.emplace_back(a.name, a.order);
                    a.arg->collect_profiles(out);
                }
            }
            if (m.exp_arg) m.exp_arg->collect_profiles(out);
        }
    }
    void collect_variables(std::vector<std::string>& out) const {
        for (const auto& [m, c] : *terms_) {
            for (const auto& [a, e] : m.factors) {
                if (a.kind == Atom::Kind::Variable) out.push_back(a.name);
                if (a.arg) a.arg->collect_variables(out);
            }
            if (m.exp_arg) m.exp_arg->collect_variables(out);
        }
    }

    bool operator==(const ScalarExpr& o) const { return compare(*this, o) == 0; }
    bool operator!=(const ScalarExpr& o) const { return compare(*this, o) != 0; }

    std::string str() const;

private:
    std::shared_ptr<const std::vector<Term>> terms_;

    static ScalarExpr from_atom(Atom a) {
        Monomial m;
        m.factors.emplace_back(std::move(a), 1);
        return from_terms({{std::move(m), Rational(1)}});
    }
    static ScalarExpr from_atom_copy(const Atom& a) { return from_atom(Atom(a)); }

    static void append(std::vector<Term>& out, const ScalarExpr& e) {
        out.insert(out.end(), e.terms_->begin(), e.terms_->end());
    }

    static Monomial mul_monomials(const Monomial& a, const Monomial& b) {
        Monomial out;
        std::size_t i = 0, j = 0;
        while (i < a.factors.size() && j < b.factors.size()) {
            int c = compare(a.factors[i].first, b.factors[j].first);
            if (c < 0)
                out.factors.push_back(a.factors[i++]);
            else if (c > 0)
                out.factors.push_back(b.factors[j++]);
            else {
                out.factors.emplace_back(a.factors[i].first,
                                         a.factors[i].second + b.factors[j].second);
                ++i, ++j;
            }
        }
        for (; i < a.factors.size(); ++i) out.factors.push_back(a.factors[i]);
        for (; j < b.factors.size(); ++j) out.factors.push_back(b.factors[j]);
        if (a.exp_arg && b.exp_arg) {
            ScalarExpr sum = *a.exp_arg + *b.exp_arg;
            if (!sum.is_zero())
                out.exp_arg = std::make_shared<const ScalarExpr>(std::move(sum));
        } else if (a.exp_arg) {
            out.exp_arg = a.exp_arg;
        } else if (b.exp_arg) {
            out.exp_arg = b.exp_arg;
        }
        return out;
    }

    static ScalarExpr from_terms(std::vector<Term> t) {
        std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) {
            return compare(x.first, y.first) < 0;
        });
        std::vector<Term> merged;
        for (auto& term : t) {
            if (!merged.empty() && compare(merged.back().first, term.first) == 0)
                merged.back().second += term.second;
            else
                merged.push_back(std::move(term));
        }
        std::erase_if(merged, [](const Term& x) { return x.second == 0; });
        ScalarExpr e;
        e.terms_ = std::make_shared<const std::vector<Term>>(std::move(merged));
        return e;
    }

    static ScalarExpr diff_atom(const Atom& a, const std::string& var) {
        switch (a.kind) {
            case Atom::Kind::Variable:
                return a.name == var ? integer(1) : ScalarExpr();
            case Atom::Kind::Profile:
                return profile(a.name, a.order + 1, *a.arg) * a.arg->diff(var);
            case Atom::Kind::Partial: {
                if (!std::binary_search(a.deps.begin(), a.deps.end(), var))
                    return ScalarExpr();
                auto idx = a.index;
                idx.push_back(var);
                return partial(a.name, std::move(idx), a.deps);
            }
        }
        return ScalarExpr();
    }

    static ScalarExpr subst_atom(const Atom& a,
                                 const std::map<std::string, ScalarExpr>& bindings) {
        switch (a.kind) {
            case Atom::Kind::Variable: {
                auto it = bindings.find(a.name);
                return it == bindings.end() ? variable(a.name) : it->second;
            }
            case Atom::Kind::Profile:
                return profile(a.name, a.order, a.arg->substitute(bindings));
            case Atom::Kind::Partial:
                for (const auto& dep : a.deps)
                    if (bindings.count(dep))
                        throw Error("cannot substitute coordinate '" + dep +
                                    "' under abstract function '" + a.name + "'");
                return partial(a.name, a.index, a.deps);
        }
        return ScalarExpr();
    }

    static double eval_atom(const Atom& a, const EvalContext& ctx) {
        switch (a.kind) {
            case Atom::Kind::Variable: {
                if (!ctx.point) throw EvalError("no point supplied");
                auto it = ctx.point->find(a.name);
                if (it == ctx.point->end())
                    throw EvalError("point does not assign coordinate '" + a.name + "'");
                return it->second;
            }
            case Atom::Kind::Profile: {
                if (!ctx.profile)
                    throw EvalError("missing realization for profile '" + a.name + "'");
                return ctx.profile(a.name, a.order, a.arg->eval(ctx));
            }
            case Atom::Kind::Partial: {
                if (!ctx.partial)
                    throw EvalError("missing realization for symbol '" + a.name + "'");
                if (!ctx.point) throw EvalError("no point supplied");
                return ctx.partial(a.name, a.index, *ctx.point);
            }
        }
        return 0;
    }

    friend int compare(const ScalarExpr& a, const ScalarExpr& b);
};

inline int compare(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.name != b.name) return a.name < b.name ? -1 : 1;
    if (a.order != b.order) return a.order < b.order ? -1 : 1;
    if (a.index != b.index) return a.index < b.index ? -1 : 1;
    if (a.deps != b.deps) return a.deps < b.deps ? -1 : 1;
    if (!a.arg && !b.arg) return 0;
    if (!a.arg) return -1;
    if (!b.arg) return 1;
    return compare(*a.arg, *b.arg);
}

inline int compare(const Monomial& a, const Monomial& b) {
    std::size_t n = std::min(a.factors.size(), b.factors.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a.factors[i].first, b.factors[i].first);
        if (c != 0) return c;
        if (a.factors[i].second != b.factors[i].second)
            return a.factors[i].second < b.factors[i].second ? -1 : 1;
    }
    if (a.factors.size() != b.factors.size())
        return a.factors.size() < b.factors.size() ? -1 : 1;
    if (!a.exp_arg && !b.exp_arg) return 0;
    if (!a.exp_arg) return -1;
    if (!b.exp_arg) return 1;
    return compare(*a.exp_arg, *b.exp_arg);
}

inline int compare(const ScalarExpr& a, const ScalarExpr& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t n = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(ta[i].first, tb[i].first);
        if (c != 0) return c;
        if (ta[i].second != tb[i].second) return ta[i].second < tb[i].second ? -1 : 1;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    return 0;
}

// simplify is a no-op entry point: every constructor already canonicalizes.
inline ScalarExpr simplify(const ScalarExpr& e) { return e; }

// Polynomial local model of a profile function, e.g. h1 ~ 2 - s^2.
struct LocalModel {
    std::string var;
    ScalarExpr expr;
};

inline ScalarExpr ScalarExpr::substitute_profiles(
    const std::map<std::string, LocalModel>& models) const {
    std::vector<Term> out;
    for (const auto& [m, c] : *terms_) {
        ScalarExpr piece = rational(c);
        for (const auto& [a, e] : m.factors) {
            ScalarExpr sub = from_atom_copy(a);
            if (a.kind == Atom::Kind::Profile && models.count(a.name)) {
                const auto& mod = models.at(a.name);
                ScalarExpr body = mod.expr;
                for (int k = 0; k < a.order; ++k) body = body.diff(mod.var);
                ScalarExpr argv = a.arg->substitute_profiles(models);
                sub = body.substitute({{mod.var, argv}});
            } else if (a.kind == Atom::Kind::Profile) {
                sub = profile(a.name, a.order, a.arg->substitute_profiles(models));
            }
            piece = piece * sub.pow(e);
        }
        if (m.exp_arg)
            piece = piece * exp_of(m.exp_arg->substitute_profiles(models));
        append(out, piece);
    }
    return from_terms(std::move(out));
}

namespace detail {

inline std::string atom_str(const Atom& a);

inline std::string monomial_str(const Monomial& m, const Rational& coeff) {
    std::vector<std::string> parts;
    Rational c = coeff < 0 ? -coeff : coeff;
    if (c != 1 || m.trivial()) parts.push_back(rational_str(c));
    for (const auto& [a, e] : m.factors) {
        std::string s = atom_str(a);
        if (e != 1) s += "^" + std::to_string(e);
        parts.push_back(std::move(s));
    }
    if (m.exp_arg) parts.push_back("exp(" + m.exp_arg->str() + ")");
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
    return out;
}

inline std::string atom_str(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::Variable:
            return a.name;
        case Atom::Kind::Profile: {
            std::string s = a.name;
            for (int i = 0; i < a.order; ++i) s += '\'';
            return s + "(" + a.arg->str() + ")";
        }
        case Atom::Kind::Partial: {
            if (a.index.empty()) return a.name;
            std::string s = "D[" + a.name;
            for (const auto& i : a.index) s += "," + i;
            return s + "]";
        }
    }
    return {};
}

}  // namespace detail

inline std::string ScalarExpr::str() const {
    if (terms_->empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : *terms_) {
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        out += detail::monomial_str(m, c);
    }
    return out;
}

}  // namespace wedge
