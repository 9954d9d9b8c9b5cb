#pragma once

// Builders for the explicit contact/confoliation forms: the fold-circle form
// f*lambda + g*dphi, open-book forms beta + u(phi)*dpsi + l*dphi, the binding
// extension h1*nu + l*h2*dphi, the product fold form h1*nu + f*lambda +
// h2*g*dphi, its asymmetric k(t) rescaling, exact-bundle forms, the Thurston
// partition-of-unity sum, and the concave-collar piecewise forms.
//
// All builders work on flattened product charts with concrete Darboux models;
// disk profiles are composed with s = x^2 + y^2 so every coefficient stays in
// the radical-free expression language (h2(r) dphi enters as w2(s)(x dy - y dx)
// with w2(s) = h2(s)/s). Monodromy potentials stay abstract: only d(psi) ever
// appears. Each chart's coordinate order and orientation sign are recorded
// here, since defect signs and Hodge stars depend on them.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wedge/chart.hpp"
#include "wedge/form.hpp"
#include "wedge/parse.hpp"
#include "wedge/profile.hpp"

namespace wedge {

// A named Darboux chart model dz + x dy with its opposite-coorientation
// partner dz - x dy and designated Reeb direction.
struct ContactModel {
    std::vector<std::string> coords;  // {x, y, z} names
    std::string form_text;
    std::string hat_text;
    std::string reeb;

    DifferentialForm on(const ChartPtr& chart) const { return parse_form(form_text, chart); }
    DifferentialForm hat_on(const ChartPtr& chart) const { return parse_form(hat_text, chart); }
};

inline ContactModel darboux_model(const std::string& x, const std::string& y,
                                  const std::string& z) {
    ContactModel m;
    m.coords = {x, y, z};
    m.form_text = "d[" + z + "]+" + x + " d[" + y + "]";
    m.hat_text = "d[" + z + "]-" + x + " d[" + y + "]";
    m.reeb = z;
    return m;
}

struct BuiltForm {
    ChartPtr chart;
    DifferentialForm form;
    std::string note;
};

namespace detail {

inline ChartPtr finish_chart(Chart&& c) {
    return std::make_shared<const Chart>(std::move(c));
}

inline void set_box(Chart& c, const std::string& n, double lo, double hi,
                    bool periodic = false) {
    c.set_domain(n, CoordinateDomain{lo, hi, periodic});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// f*lambda + g*dphi on N x [-1,1] x S^1, chart order (t, N, phi) so that the
// defect is the positive multiple 2 f (f'g - f g') of the volume form.
inline BuiltForm fold_circle_form(const ContactModel& lambda, const ProfileFunction& f,
                                  const ProfileFunction& g) {
    if (!all_pass(validate_fold_pair(f, g)))
        throw Error("fold_circle_form: (f,g) pair fails validation");
    Chart c({"t", lambda.coords[0], lambda.coords[1], lambda.coords[2], "phi"});
    detail::set_box(c, "t", -1, 1);
    detail::set_box(c, "phi", 0, 2 * M_PI, true);
    ChartPtr chart = detail::finish_chart(std::move(c));
    DifferentialForm lam = lambda.on(chart);
    DifferentialForm eta =
        lam.scaled(parse_scalar(f.name + "(t)")) +
        DifferentialForm::basis(chart, "phi").scaled(parse_scalar(g.name + "(t)"));
    return {chart, eta, ""};
}

// ---------------------------------------------------------------------------
// open-book family beta + u(phi) dpsi + l dphi on P x [0, 2 pi R]; the page is
// the 2-dim exact chart (x1, y1) with beta = x1 dy1 and an abstract monodromy
// potential psi(x1, y1).
inline BuiltForm open_book_form(const ProfileFunction& u, const Rational& l, double R) {
    Chart c({"x1", "y1", "phi"});
    detail::set_box(c, "x1", -1, 1);
    detail::set_box(c, "y1", -1, 1);
    detail::set_box(c, "phi", 0, 2 * M_PI * R, true);
    c.declare_function("psi", {"x1", "y1"});
    ChartPtr chart = detail::finish_chart(std::move(c));
    DifferentialForm beta = parse_form("x1 d[y1]", chart);
    DifferentialForm dpsi = exterior_derivative(parse_form("psi", chart));
    DifferentialForm eta = beta + dpsi.scaled(parse_scalar(u.name + "(phi)")) +
                           DifferentialForm::basis(chart, "phi")
                               .scaled(ScalarExpr::rational(l));
    BuiltForm out{chart, eta, ""};
    if (l == 0) out.note = "l = 0: confoliation only, no contactness claim";
    return out;
}

// ---------------------------------------------------------------------------
// binding extension h1(r) nu + l h2(r) dphi over B x D^2, written on the
// Cartesian disk chart: h1(s) nu + l w2(s) (x dy - y dx), s = x^2+y^2.
inline BuiltForm binding_extension(const ContactModel& nu, const ProfileFunction& h1,
                                   const ProfileFunction& h2, const Rational& l) {
    if (!all_pass(validate_binding_pair(h1, h2)))
        throw Error("binding_extension: (h1,h2) pair fails validation");
    Chart c({nu.coords[0], nu.coords[1], nu.coords[2], "x", "y"});
    detail::set_box(c, "x", -1.2, 1.2);
    detail::set_box(c, "y", -1.2, 1.2);
    ChartPtr chart = detail::finish_chart(std::move(c));
    ScalarExpr s = parse_scalar("x^2+y^2");
    DifferentialForm eta =
        nu.on(chart).scaled(ScalarExpr::profile(h1.name, 0, s)) +
        parse_form("x d[y]-y d[x]", chart)
            .scaled(ScalarExpr::profile("w2", 0, s) * ScalarExpr::rational(l));
    return {chart, eta, "w2(s) = h2(s)/s"};
}

// ---------------------------------------------------------------------------
// product fold form h1 nu + f lambda + h2 g dphi on B x D^2 x N x [-1,1];
// chart order
// (x1,y1,z1, x2,y2,z2, x,y, t) with orientation -1 (the recorded orientation
// making the confoliation defect nonnegative).
inline BuiltForm product_fold_form(const ContactModel& nu, const ContactModel& lambda,
                                   const ProfileFunction& f, const ProfileFunction& g,
                                   const ProfileFunction& h1, const ProfileFunction& h2) {
    if (!all_pass(validate_fold_pair(f, g)))
        throw Error("product_fold_form: (f,g) pair fails validation");
    if (!all_pass(validate_binding_pair(h1, h2)))
        throw Error("product_fold_form: (h1,h2) pair fails validation");
    Chart c({nu.coords[0], nu.coords[1], nu.coords[2], lambda.coords[0],
             lambda.coords[1], lambda.coords[2], "x", "y", "t"},
            -1);
    detail::set_box(c, "x", -1.2, 1.2);
    detail::set_box(c, "y", -1.2, 1.2);
    detail::set_box(c, "t", -1.1, 1.1);
    ChartPtr chart = detail::finish_chart(std::move(c));
    ScalarExpr s = parse_scalar("x^2+y^2");
    DifferentialForm eta =
        nu.on(chart).scaled(ScalarExpr::profile(h1.name, 0, s)) +
        lambda.on(chart).scaled(parse_scalar(f.name + "(t)")) +
        parse_form("x d[y]-y d[x]", chart)
            .scaled(ScalarExpr::profile("w2", 0, s) * parse_scalar(g.name + "(t)"));
    return {chart, eta, "w2(s) = h2(s)/s"};
}

// ---------------------------------------------------------------------------
// piecewise forms

struct Region {
    std::string name;
    DifferentialForm form;
    std::map<std::string, std::pair<double, double>> bounds;
};

struct Seam {
    std::string left, right;  // region names
    std::string coord;
    double at;
    // profile -> exact local expression valid on a collar around the seam
    std::map<std::string, LocalModel> segment_models;
    // expected left - right difference at the seam (empty: exact match)
    std::optional<DifferentialForm> jump;
    // for periodic seams the right region is evaluated at its own slice value
    std::optional<double> right_at;
};

struct BoundaryCheck {
    std::string region;
    std::string coord;
    double at;
    std::map<std::string, LocalModel> segment_models;
    std::string expected_text;  // parsed on the piecewise form's chart
    // compare after restricting coefficients to the slice (otherwise the
    // expected text is the whole collar normal form, still depending on the
    // collar coordinate)
    bool restrict_at = false;
};

struct SeamReport {
    std::string name;
    bool pass = false;
    std::string detail;
};

class PiecewiseForm {
public:
    ChartPtr chart;
    std::vector<Region> regions;
    std::vector<Seam> seams;
    std::vector<BoundaryCheck> boundary_checks;

    const Region& region(const std::string& name) const {
        for (const auto& r : regions)
            if (r.name == name) return r;
        throw Error("no region named '" + name + "'");
    }

    // smooth-gluing checks: on every declared collar the two adjacent forms
    // agree symbolically after the exact profile segments are substituted
    std::vector<SeamReport> check_seams() const {
        std::vector<SeamReport> out;
        for (const auto& s : seams) {
            SeamReport rep;
            rep.name = "seam " + s.left + "|" + s.right + " at " + s.coord + "=" +
                       std::to_string(s.at);
            DifferentialForm L = substitute_profiles(region(s.left).form, s.segment_models);
            DifferentialForm Rf =
                substitute_profiles(region(s.right).form, s.segment_models);
            if (!s.jump) {
                // exact overlap: the substituted forms agree on the whole
                // collar as functions of the collar coordinate
                rep.pass = (L == Rf);
                if (!rep.pass) rep.detail = "difference: " + (L - Rf).str();
            } else {
                // seam positions used with jumps are rational by construction
                DifferentialForm diff =
                    substitute_coefficients(L, {{s.coord, slice_value(s.at)}}) -
                    substitute_coefficients(
                        Rf, {{s.coord, slice_value(s.right_at.value_or(s.at))}});
                rep.pass = (diff == *s.jump);
                if (!rep.pass)
                    rep.detail = "difference: " + diff.str() + " expected " + s.jump->str();
            }
            out.push_back(rep);
        }
        return out;
    }

    // boundary normal forms: each declared region restriction equals the
    // stated expression symbolically
    std::vector<SeamReport> check_boundaries() const {
        std::vector<SeamReport> out;
        for (const auto& b : boundary_checks) {
            SeamReport rep;
            rep.name = "boundary " + b.region + " at " + b.coord + "=" +
                       std::to_string(b.at);
            DifferentialForm f = substitute_profiles(region(b.region).form, b.segment_models);
            if (b.restrict_at)
                f = substitute_coefficients(f, {{b.coord, slice_value(b.at)}});
            DifferentialForm expected = parse_form(b.expected_text, chart);
            rep.pass = (f == expected);
            if (!rep.pass)
                rep.detail = "got " + f.str() + " expected " + b.expected_text;
            out.push_back(rep);
        }
        return out;
    }

    static ScalarExpr slice_value(double v) {
        return ScalarExpr::rational(Rational(v));
    }
};

namespace detail {

inline std::map<std::string, LocalModel> seg(std::initializer_list<
                                             std::pair<std::string, std::string>> items) {
    std::map<std::string, LocalModel> out;
    for (const auto& [name, expr] : items)
        out.emplace(name, LocalModel{"t", parse_scalar(expr)});
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// asymmetric rescaling: three regions; the middle is k(t) * eta~, the
// outer pieces are the e^{-1} / e scaled product collars they glue to.
inline PiecewiseForm asymmetric_scale(const BuiltForm& tilde,
                                      const ProfileFunction& k) {
    PiecewiseForm pw;
    pw.chart = tilde.chart;
    const double eps = k.params.epsilon;

    DifferentialForm left = parse_form(
        "exp(-1)*(h1(x^2+y^2)*(d[z1]+x1 d[y1]) + exp(t)*(d[z2]+x2 d[y2]) "
        "+ w2(x^2+y^2)*(x d[y]-y d[x]))",
        pw.chart, false);
    DifferentialForm right = parse_form(
        "exp(1)*(h1(x^2+y^2)*(d[z1]+x1 d[y1]) + exp(-t)*(d[z2]+x2 d[y2]) "
        "- w2(x^2+y^2)*(x d[y]-y d[x]))",
        pw.chart, false);
    DifferentialForm middle = tilde.form.scaled(parse_scalar(k.name + "(t)"));

    pw.regions.push_back({"w1_collar", left, {{"t", {-1 - eps, -1}}}});
    pw.regions.push_back({"fold", middle, {{"t", {-1, 1}}}});
    pw.regions.push_back({"w2_collar", right, {{"t", {1, 1 + eps}}}});

    pw.seams.push_back({"w1_collar", "fold", "t", -1,
                        detail::seg({{"k", "exp(-1)"}, {"f", "exp(t)"}, {"g", "1"}}),
                        std::nullopt, std::nullopt});
    pw.seams.push_back({"fold", "w2_collar", "t", 1,
                        detail::seg({{"k", "exp(1)"}, {"f", "exp(-t)"}, {"g", "-1"}}),
                        std::nullopt, std::nullopt});
    return pw;
}

// ---------------------------------------------------------------------------
// exact-bundle forms (R enters as the formal symbol "R"; numeric runs bind it
// through the evaluation point)

enum class BundleVariant { ProductBase11, ProductBase21, LongCollar21 };

inline BuiltForm exact_bundle_form(BundleVariant variant, const ProfileFunction& u) {
    switch (variant) {
        case BundleVariant::ProductBase11: {
            Chart c({"v", "x1", "y1"});
            detail::set_box(c, "v", -1, 0);
            detail::set_box(c, "x1", -1, 1);
            detail::set_box(c, "y1", -1, 1);
            c.declare_function("psi", {"x1", "y1"});
            ChartPtr chart = detail::finish_chart(std::move(c));
            DifferentialForm dpsi = exterior_derivative(parse_form("psi", chart));
            DifferentialForm eta =
                parse_form("R d[v] + x1 d[y1]", chart, false) +
                dpsi.scaled(ScalarExpr::profile(u.name, 0, ScalarExpr::variable("v")));
            return {chart, eta, "(m,n) = (1,1)"};
        }
        case BundleVariant::ProductBase21: {
            Chart c({"p", "q", "v", "x1", "y1"});
            detail::set_box(c, "p", -1, 1);
            detail::set_box(c, "q", -1, 1);
            detail::set_box(c, "v", -1, 0);
            detail::set_box(c, "x1", -1, 1);
            detail::set_box(c, "y1", -1, 1);
            c.declare_function("psi", {"p", "q", "x1", "y1"});
            ChartPtr chart = detail::finish_chart(std::move(c));
            DifferentialForm dpsi = exterior_derivative(parse_form("psi", chart));
            DifferentialForm eta =
                parse_form("R*(d[v] + p d[q]) + x1 d[y1]", chart, false) +
                dpsi.scaled(ScalarExpr::profile(u.name, 0, ScalarExpr::variable("v")));
            return {chart, eta, "(m,n) = (2,1)"};
        }
        case BundleVariant::LongCollar21: {
            // fiber replaced by its symplectization collar e^s mu_X
            Chart c({"a", "s", "p", "q", "v"}, -1);
            detail::set_box(c, "a", -1, 1);
            detail::set_box(c, "s", -1, 3);
            detail::set_box(c, "p", -1, 1);
            detail::set_box(c, "q", -1, 1);
            detail::set_box(c, "v", -1, 0);
            c.declare_function("psi", {"a", "p", "q"});
            ChartPtr chart = detail::finish_chart(std::move(c));
            DifferentialForm dpsi = exterior_derivative(parse_form("psi", chart));
            DifferentialForm eta =
                parse_form("R*(d[v] + p d[q]) + exp(s) d[a]", chart, false) +
                dpsi.scaled(ScalarExpr::profile(u.name, 0, ScalarExpr::variable("v")));
            return {chart, eta, "long-collar variant, defect carries e^{ns}"};
        }
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Thurston-style sum K beta + sum_i w_i eta_i over an annulus base; weights
// must be a partition of unity (checked symbolically).
inline BuiltForm bundle_sum_form(const std::vector<std::pair<ScalarExpr, std::string>>&
                                     weighted_fibers) {
    Chart c({"rho", "thc", "x", "y", "z"});
    detail::set_box(c, "rho", 0.5, 1.5);
    detail::set_box(c, "thc", 0, 2 * M_PI, true);
    detail::set_box(c, "x", -1, 1);
    detail::set_box(c, "y", -1, 1);
    detail::set_box(c, "z", -1, 1);
    ChartPtr chart = detail::finish_chart(std::move(c));
    ScalarExpr total;
    for (const auto& [w, text] : weighted_fibers) total = total + w;
    if (total != ScalarExpr::integer(1))
        throw Error("bundle_sum_form: weights are not a partition of unity: sum = " +
                    total.str());
    DifferentialForm theta =
        parse_form("K rho d[thc]", chart, false);
    for (const auto& [w, text] : weighted_fibers)
        theta = theta + parse_form(text, chart, false).scaled(w);
    return {chart, theta, "base beta = rho d[thc], K symbolic"};
}

// ---------------------------------------------------------------------------
// concave collars

enum class CollarVariant { Swap, FourPart };

inline PiecewiseForm concave_collar_forms(CollarVariant variant) {
    PiecewiseForm pw;
    if (variant == CollarVariant::Swap) {
        // X = (x1,y1,z1) with alpha = dz1 + x1 dy1; the N factor enters
        // through its open-book page chart (x2, y2, p2) with lambda = x2 dy2
        // + dp2 and hat obtained by flipping the dp2 slot.
        Chart c({"x1", "y1", "z1", "x2", "y2", "p2", "t"});
        detail::set_box(c, "x1", -1, 1);
        detail::set_box(c, "y1", -1, 1);
        detail::set_box(c, "z1", -1, 1);
        detail::set_box(c, "x2", -1, 1);
        detail::set_box(c, "y2", -1, 1);
        detail::set_box(c, "p2", 0, 2 * M_PI, true);
        detail::set_box(c, "t", -1, 1);
        pw.chart = detail::finish_chart(std::move(c));
        DifferentialForm r1 = parse_form(
            "g1(t)*(d[z1]+x1 d[y1] + exp(-t)*(x2 d[y2]+d[p2]))", pw.chart, false);
        DifferentialForm r2 = parse_form(
            "f(t)*(d[z1]+x1 d[y1]) + x2 d[y2] + g(2*t) d[p2]", pw.chart, false);
        DifferentialForm r3 = parse_form(
            "g2(t)*(d[z1]+x1 d[y1] + exp(t)*(x2 d[y2]-d[p2]))", pw.chart, false);
        pw.regions.push_back({"left", r1, {{"t", {-1, -0.45}}}});
        pw.regions.push_back({"middle", r2, {{"t", {-0.5, 0.5}}}});
        pw.regions.push_back({"right", r3, {{"t", {0.45, 1}}}});
        // overlap collars [-0.5,-0.45] and [0.45,0.5]: both sides reduce to
        // e^t alpha + lambda resp. e^{-t} alpha + lambda-hat
        pw.seams.push_back({"left", "middle", "t", -0.5,
                            detail::seg({{"g1", "exp(t)"}, {"f", "exp(t)"}, {"g", "1"}}),
                            std::nullopt, std::nullopt});
        pw.seams.push_back({"middle", "right", "t", 0.5,
                            detail::seg({{"g2", "exp(-t)"}, {"f", "exp(-t)"}, {"g", "-1"}}),
                            std::nullopt, std::nullopt});
        pw.boundary_checks.push_back(
            {"left", "t", -1, detail::seg({{"g1", "1"}}),
             "d[z1]+x1 d[y1] + exp(-t)*(x2 d[y2]+d[p2])"});
        pw.boundary_checks.push_back(
            {"right", "t", 1, detail::seg({{"g2", "1"}}),
             "d[z1]+x1 d[y1] + exp(t)*(x2 d[y2]-d[p2])"});
        pw.boundary_checks.push_back(
            {"left", "t", -0.5, detail::seg({{"g1", "exp(t)"}}),
             "exp(t)*(d[z1]+x1 d[y1]) + x2 d[y2]+d[p2]"});
        return pw;
    }

    // FourPart: the circle-bundle pattern e^t l'+l, e^{-t+1/2} l'+l^,
    // e^{t-1/2} l'^+l^, e^{-t+1} l'^+l on four quarters of N x S^1.
    Chart c({"x3", "y3", "z3", "x2", "y2", "z2", "t"});
    for (const char* n : {"x3", "y3", "z3", "x2", "y2", "z2"})
        detail::set_box(c, n, -1, 1);
    detail::set_box(c, "t", 0, 1, true);
    pw.chart = detail::finish_chart(std::move(c));
    auto F = [&](const std::string& text) { return parse_form(text, pw.chart); };
    const std::string lp = "(d[z3]+x3 d[y3])", lph = "(d[z3]-x3 d[y3])";
    const std::string la = "(d[z2]+x2 d[y2])", lah = "(d[z2]-x2 d[y2])";
    pw.regions.push_back({"q1", F("exp(t)*" + lp + "+" + la), {{"t", {0, 0.25}}}});
    pw.regions.push_back(
        {"q2", F("exp(-t+1/2)*" + lp + "+" + lah), {{"t", {0.25, 0.5}}}});
    pw.regions.push_back(
        {"q3", F("exp(t-1/2)*" + lph + "+" + lah), {{"t", {0.5, 0.75}}}});
    pw.regions.push_back({"q4", F("exp(-t+1)*" + lph + "+" + la), {{"t", {0.75, 1}}}});
    // convex folds flip the contact-factor slot, concave folds flip the
    // fold-locus slot; the symplectization data itself matches exactly
    pw.seams.push_back({"q1", "q2", "t", 0.25, {}, F("2*x2 d[y2]"), std::nullopt});
    pw.seams.push_back({"q2", "q3", "t", 0.5, {}, F("2*x3 d[y3]"), std::nullopt});
    pw.seams.push_back({"q3", "q4", "t", 0.75, {}, F("-2*x2 d[y2]"), std::nullopt});
    pw.seams.push_back({"q4", "q1", "t", 1.0, {}, F("-2*x3 d[y3]"), 0.0});
    pw.boundary_checks.push_back({"q1", "t", 0, {}, lp + "+" + la, true});
    pw.boundary_checks.push_back(
        {"q2", "t", 0.25, {}, "exp(1/4)*" + lp + "+" + lah, true});
    pw.boundary_checks.push_back({"q3", "t", 0.5, {}, lph + "+" + lah, true});
    pw.boundary_checks.push_back({"q4", "t", 1, {}, lph + "+" + la, true});
    return pw;
}

}  // namespace wedge
