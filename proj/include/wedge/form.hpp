#pragma once

// Exterior algebra of differential forms on a chart: wedge, exterior
// derivative, wedge powers, interior product, Hodge star for the orthonormal
// coordinate frame, pullback substitution and coefficient restriction.
//
// Forms are strictly homogeneous; terms map a strictly ascending coordinate
// index set to a ScalarExpr coefficient, with zero coefficients pruned.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wedge/chart.hpp"
#include "wedge/scalar.hpp"

namespace wedge {

namespace detail {

// Sign of the permutation sorting `idx`; 0 if an index repeats.
inline int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        int v = idx[i];
        std::size_t j = i;
        while (j > 0 && idx[j - 1] > v) {
            idx[j] = idx[j - 1];
            --j;
            sign = -sign;
        }
        idx[j] = v;
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

}  // namespace detail

class VectorField;

class DifferentialForm {
public:
    using Terms = std::map<std::vector<int>, ScalarExpr>;

    DifferentialForm() = default;
    DifferentialForm(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
        if (degree_ < 0 || degree_ > static_cast<int>(chart_->dim()))
            throw DegreeError("form degree out of range");
    }

    static DifferentialForm scalar(ChartPtr chart, const ScalarExpr& e) {
        DifferentialForm f(std::move(chart), 0);
        f.add_term({}, e);
        return f;
    }
    static DifferentialForm basis(ChartPtr chart, const std::string& coord) {
        DifferentialForm f(chart, 1);
        f.add_term({chart->index(coord)}, ScalarExpr::integer(1));
        return f;
    }

    const Chart& chart() const { return *chart_; }
    ChartPtr chart_ptr() const { return chart_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ScalarExpr coefficient(std::vector<int> idx) const {
        int s = detail::sort_sign(idx);
        if (s == 0) return ScalarExpr();
        auto it = terms_.find(idx);
        if (it == terms_.end()) return ScalarExpr();
        return s > 0 ? it->second : -it->second;
    }
    ScalarExpr coefficient(const std::vector<std::string>& coords) const {
        std::vector<int> idx;
        for (const auto& c : coords) idx.push_back(chart_->index(c));
        return coefficient(std::move(idx));
    }

    // Adds coeff * dx_{idx}, resolving antisymmetry signs.
    void add_term(std::vector<int> idx, const ScalarExpr& coeff) {
        if (static_cast<int>(idx.size()) != degree_)
            throw DegreeError("term degree does not match form degree");
        if (coeff.is_zero()) return;
        int s = detail::sort_sign(idx);
        if (s == 0) return;
        ScalarExpr c = s > 0 ? coeff : -coeff;
        auto [it, inserted] = terms_.emplace(std::move(idx), c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DifferentialForm operator+(const DifferentialForm& o) const {
        require_same_chart(o);
        if (degree_ != o.degree_) {
            if (is_zero()) return o;
            if (o.is_zero()) return *this;
            throw DegreeError("cannot add forms of different degrees");
        }
        DifferentialForm r(chart_, degree_);
        r.terms_ = terms_;
        for (const auto& [k, v] : o.terms_) {
            auto [it, inserted] = r.terms_.emplace(k, v);
            if (!inserted) {
                it->second = it->second + v;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }
    DifferentialForm operator-() const {
        DifferentialForm r(chart_, degree_);
        for (const auto& [k, v] : terms_) r.terms_.emplace(k, -v);
        return r;
    }
    DifferentialForm operator-(const DifferentialForm& o) const { return *this + (-o); }

    DifferentialForm scaled(const ScalarExpr& c) const {
        DifferentialForm r(chart_, degree_);
        for (const auto& [k, v] : terms_) {
            ScalarExpr w = v * c;
            if (!w.is_zero()) r.terms_.emplace(k, std::move(w));
        }
        return r;
    }

    bool operator==(const DifferentialForm& o) const {
        if (*chart_ != *o.chart_) return false;
        if (terms_.empty() && o.terms_.empty()) return true;
        if (degree_ != o.degree_) return false;
        if (terms_.size() != o.terms_.size()) return false;
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        for (; a != terms_.end(); ++a, ++b)
            if (a->first != b->first || a->second != b->second) return false;
        return true;
    }
    bool operator!=(const DifferentialForm& o) const { return !(*this == o); }

    std::string str() const;

    void require_same_chart(const DifferentialForm& o) const {
        if (*chart_ != *o.chart_) throw ChartMismatch("forms live on different charts");
    }

private:
    ChartPtr chart_;
    int degree_ = 0;
    Terms terms_;
};

class VectorField {
public:
    VectorField(ChartPtr chart, std::map<std::string, ScalarExpr> components)
        : chart_(std::move(chart)), components_(std::move(components)) {
        for (const auto& [n, c] : components_) chart_->index(n);
    }
    const Chart& chart() const { return *chart_; }
    const std::map<std::string, ScalarExpr>& components() const { return components_; }

private:
    ChartPtr chart_;
    std::map<std::string, ScalarExpr> components_;
};

inline DifferentialForm wedge_product(const DifferentialForm& a, const DifferentialForm& b) {
    a.require_same_chart(b);
    int deg = a.degree() + b.degree();
    if (deg > static_cast<int>(a.chart().dim()))
        throw DegreeError("wedge degree exceeds chart dimension");
    DifferentialForm r(a.chart_ptr(), deg);
    for (const auto& [ka, va] : a.terms())
        for (const auto& [kb, vb] : b.terms()) {
            std::vector<int> idx = ka;
            idx.insert(idx.end(), kb.begin(), kb.end());
            r.add_term(std::move(idx), va * vb);
        }
    return r;
}

inline DifferentialForm wedge_power(const DifferentialForm& f, int n) {
    if (n < 0) throw DegreeError("negative wedge power");
    DifferentialForm r = DifferentialForm::scalar(f.chart_ptr(), ScalarExpr::integer(1));
    for (int i = 0; i < n; ++i) r = wedge_product(r, f);
    return r;
}

inline DifferentialForm exterior_derivative(const DifferentialForm& f) {
    DifferentialForm r(f.chart_ptr(), f.degree() + 1);
    const auto& chart = f.chart();
    for (const auto& [k, v] : f.terms()) {
        for (std::size_t i = 0; i < chart.dim(); ++i) {
            ScalarExpr dv = v.diff(chart.name(static_cast<int>(i)));
            if (dv.is_zero()) continue;
            std::vector<int> idx;
            idx.reserve(k.size() + 1);
            idx.push_back(static_cast<int>(i));
            idx.insert(idx.end(), k.begin(), k.end());
            r.add_term(std::move(idx), dv);
        }
    }
    return r;
}

// Hodge star for the orthonormal frame; the positive volume form is
// orientation * dx_1^...^dx_n in chart coordinate order.
inline DifferentialForm hodge_star(const DifferentialForm& f) {
    const auto& chart = f.chart();
    int n = static_cast<int>(chart.dim());
    DifferentialForm r(f.chart_ptr(), n - f.degree());
    for (const auto& [k, v] : f.terms()) {
        std::vector<int> comp;
        comp.reserve(n - k.size());
        std::size_t ki = 0;
        for (int i = 0; i < n; ++i) {
            if (ki < k.size() && k[ki] == i)
                ++ki;
            else
                comp.push_back(i);
        }
        std::vector<int> perm = k;
        perm.insert(perm.end(), comp.begin(), comp.end());
        int sign = detail::sort_sign(perm) * chart.orientation();
        r.add_term(std::move(comp), sign > 0 ? v : -v);
    }
    return r;
}

inline DifferentialForm interior_product(const VectorField& v, const DifferentialForm& f) {
    if (v.chart() != f.chart()) throw ChartMismatch("vector field on a different chart");
    if (f.degree() == 0) return DifferentialForm(f.chart_ptr(), 0);
    DifferentialForm r(f.chart_ptr(), f.degree() - 1);
    for (const auto& [k, coeff] : f.terms()) {
        for (std::size_t pos = 0; pos < k.size(); ++pos) {
            const std::string& name = f.chart().name(k[pos]);
            auto it = v.components().find(name);
            if (it == v.components().end() || it->second.is_zero()) continue;
            std::vector<int> rest;
            rest.reserve(k.size() - 1);
            for (std::size_t j = 0; j < k.size(); ++j)
                if (j != pos) rest.push_back(k[j]);
            ScalarExpr c = it->second * coeff;
            r.add_term(std::move(rest), (pos % 2 == 0) ? c : -c);
        }
    }
    return r;
}

// The unique coefficient against the oriented volume form.
inline ScalarExpr top_coefficient(const DifferentialForm& f) {
    int n = static_cast<int>(f.chart().dim());
    if (f.degree() != n) throw DegreeError("top_coefficient requires a top-degree form");
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = i;
    ScalarExpr c = f.coefficient(std::move(full));
    return f.chart().orientation() > 0 ? c : -c;
}

// Pullback along the map that sends the bound coordinates to the given
// expressions of the remaining coordinates. Constant bindings restrict to a
// slice: the differential of a constant-bound coordinate is dropped.
inline DifferentialForm substitute(const DifferentialForm& f,
                                   const std::map<std::string, ScalarExpr>& bindings) {
    const auto& chart = f.chart();
    std::vector<std::string> kept;
    for (const auto& nm : chart.names())
        if (!bindings.count(nm)) kept.push_back(nm);
    for (const auto& [nm, expr] : bindings) {
        chart.index(nm);
        std::vector<std::string> vars;
        expr.collect_variables(vars);
        for (const auto& v : vars)
            if (bindings.count(v))
                throw Error("cyclic binding: '" + v + "' appears in the image of '" +
                            nm + "'");
    }
    auto sub = std::make_shared<const Chart>(kept, chart.orientation());
    // images of the coordinate differentials on the reduced chart
    std::vector<DifferentialForm> image;
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        const std::string& nm = chart.name(static_cast<int>(i));
        auto it = bindings.find(nm);
        if (it == bindings.end()) {
            image.push_back(DifferentialForm::basis(sub, nm));
        } else {
            DifferentialForm df(sub, 1);
            for (const auto& kn : kept) {
                ScalarExpr dc = it->second.diff(kn);
                if (!dc.is_zero()) df.add_term({sub->index(kn)}, dc);
            }
            image.push_back(std::move(df));
        }
    }
    std::map<std::string, ScalarExpr> scalar_bindings;
    for (const auto& [nm, expr] : bindings) scalar_bindings.emplace(nm, expr);
    DifferentialForm out(sub, 0);
    bool first = true;
    for (const auto& [k, v] : f.terms()) {
        DifferentialForm piece =
            DifferentialForm::scalar(sub, v.substitute(scalar_bindings));
        for (int i : k) piece = wedge_product(piece, image[i]);
        if (first) {
            out = piece;
            first = false;
        } else {
            out = out + piece;
        }
    }
    return out;
}

// Restriction of the coefficient functions to a slice while keeping the full
// coframe: evaluates each coefficient along the slice, so d of bound
// coordinates survives. This is how a form is inspected "along" a
// submanifold as a section of the ambient bundle.
inline DifferentialForm substitute_coefficients(
    const DifferentialForm& f, const std::map<std::string, ScalarExpr>& bindings) {
    DifferentialForm r(f.chart_ptr(), f.degree());
    for (const auto& [k, v] : f.terms()) r.add_term(k, v.substitute(bindings));
    return r;
}

inline DifferentialForm bind_profile_values(const DifferentialForm& f,
                                            const std::vector<ProfileValue>& values) {
    DifferentialForm r(f.chart_ptr(), f.degree());
    for (const auto& [k, v] : f.terms()) r.add_term(k, v.bind_profile_values(values));
    return r;
}

inline DifferentialForm substitute_profiles(
    const DifferentialForm& f, const std::map<std::string, LocalModel>& models) {
    DifferentialForm r(f.chart_ptr(), f.degree());
    for (const auto& [k, v] : f.terms()) r.add_term(k, v.substitute_profiles(models));
    return r;
}

inline std::string DifferentialForm::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, v] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i) mono += "^";
            mono += "d[" + chart_->name(k[i]) + "]";
        }
        // render "coeff mono" with sign pulled out when the coefficient is a
        // single term
        std::string cs = v.str();
        bool negative = false;
        if (v.terms().size() == 1 && cs.size() && cs[0] == '-') {
            negative = true;
            cs = cs.substr(1);
        }
        bool is_one = (cs == "1");
        std::string body;
        if (mono.empty())
            body = cs;
        else if (is_one)
            body = mono;
        else if (v.terms().size() > 1)
            body = "(" + cs + ") " + mono;
        else
            body = cs + " " + mono;
        if (first) {
            out += negative ? "-" + body : body;
            first = false;
        } else {
            out += negative ? " - " + body : " + " + body;
        }
    }
    return out;
}

}  // namespace wedge
