#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "wedge/builders.hpp"
#include "wedge/verify.hpp"

using namespace wedge;

namespace {

const ContactModel kNu = darboux_model("x1", "y1", "z1");
const ContactModel kLambda = darboux_model("x2", "y2", "z2");

Realizations default_reals() {
    auto r = Realizations::defaults();
    r.add_partial("psi", [](const std::vector<std::string>& index, const Point& pt) {
        // psi = (3 p x1 + 2 q + y1^2) / 10 on whichever coordinates exist;
        // a smooth concrete monodromy potential for numeric runs
        auto get = [&](const char* n) {
            auto it = pt.find(n);
            return it == pt.end() ? 0.0 : it->second;
        };
        if (index.empty())
            return (3 * get("p") * get("x1") + 2 * get("q") + get("y1") * get("y1") +
                    get("a")) /
                   10;
        if (index.size() == 1) {
            if (index[0] == "p") return 0.3 * get("x1");
            if (index[0] == "q") return 0.2;
            if (index[0] == "x1") return 0.3 * get("p");
            if (index[0] == "y1") return 0.2 * get("y1");
            if (index[0] == "a") return 0.1;
        }
        if (index.size() == 2) {
            if ((index[0] == "p" && index[1] == "x1") ||
                (index[0] == "x1" && index[1] == "p"))
                return 0.3;
            if (index[0] == "y1" && index[1] == "y1") return 0.2;
        }
        return 0.0;
    });
    return r;
}

}  // namespace

TEST_CASE("contact models are contact with constant defect") {
    auto chart = make_chart({"x1", "y1", "z1"});
    CHECK(contact_defect(kNu.on(chart)) == ScalarExpr::integer(1));
    CHECK(contact_defect(kNu.hat_on(chart)) == ScalarExpr::integer(-1));
}

TEST_CASE("fold-circle form: symbolic defect identity and oracle") {
    auto f = make_profile("f");
    auto g = make_profile("g");
    BuiltForm built = fold_circle_form(kLambda, f, g);
    ScalarExpr defect = contact_defect(built.form);
    CHECK(defect == parse_scalar("2*f(t)*(f'(t)*g(t)-f(t)*g'(t))"));

    // independent numeric oracle: plain-double formula against engine eval
    auto reals = default_reals();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ts(-1, 1);
    for (int i = 0; i < 50; ++i) {
        double t = ts(rng);
        Point p{{"t", t}, {"x2", ts(rng)}, {"y2", ts(rng)}, {"z2", ts(rng)},
                {"phi", 1.0}};
        double expect = 2 * f.value(t) * (f.deriv(t, 1) * g.value(t) -
                                          f.value(t) * g.deriv(t, 1));
        EvalContext ctx = reals.context(p);
        CHECK(defect.eval(ctx) == Catch::Approx(expect).epsilon(1e-12));
    }

    // at t=0 the anchors force the positive value 2 f(0)^2 (-g'(0)) = 2
    ScalarExpr at0 = defect.substitute({{"t", parse_scalar("0")}});
    auto anchors = f.anchor_values();
    auto ga = g.anchor_values();
    anchors.insert(anchors.end(), ga.begin(), ga.end());
    CHECK(at0.bind_profile_values(anchors) == ScalarExpr::integer(2));

    // a constant g breaks the pair condition and is rejected
    auto bad = g;
    bad.jets = [](double) { return Jet2::constant(1.0); };
    CHECK_THROWS_AS(fold_circle_form(kLambda, f, bad), Error);
}

TEST_CASE("open-book family: defect expansion and l-dependence") {
    ProfileParams pp;
    pp.R = 5;
    auto u = make_profile("u", pp);
    BuiltForm built = open_book_form(u, Rational(1), 5);
    const auto& chart = built.chart;

    DifferentialForm beta = parse_form("x1 d[y1]", chart);
    DifferentialForm dpsi = exterior_derivative(parse_form("psi", chart));
    DifferentialForm dphi = DifferentialForm::basis(chart, "phi");
    ScalarExpr up = parse_scalar("u'(phi)");

    // eta ^ d eta = dphi ^ (l dbeta - u' beta ^ dpsi); the middle dimensional
    // term beta ^ dbeta ^ ... is absent on the 2-dim page
    DifferentialForm lhs =
        wedge_product(built.form, exterior_derivative(built.form));
    DifferentialForm rhs = wedge_product(
        dphi, exterior_derivative(beta) - wedge_product(beta, dpsi).scaled(up));
    CHECK(lhs == rhs);

    // defect(l) + defect(-l) = 2 * correction: the leading term flips with l
    BuiltForm minus = open_book_form(u, Rational(-1), 5);
    BuiltForm zero = open_book_form(u, Rational(0), 5);
    CHECK(zero.note.find("confoliation") != std::string::npos);
    CHECK(contact_defect(built.form) + contact_defect(minus.form) ==
          contact_defect(zero.form) * Rational(2));

    // trivial monodromy: u == 0 kills the correction exactly
    std::map<std::string, LocalModel> umodel{{"u", {"t", parse_scalar("0")}}};
    CHECK(contact_defect(built.form).substitute_profiles(umodel) ==
          ScalarExpr::integer(1));
}

TEST_CASE("page-region collar form: expansion with the u dpsi correction") {
    // beta-bar + g(t) dphi + f(t) lambda on page x S^1 x N x I, (m,n) = (1,2):
    // the main term is -6 f (f'g - g'f), the u' correction is the kappa term,
    // and the middle (dbeta)^m dpsi term vanishes for dimension reasons
    Chart c({"x1", "y1", "phi", "x2", "y2", "z2", "t"});
    c.declare_function("psi", {"x1", "y1"});
    ChartPtr chart = std::make_shared<const Chart>(std::move(c));
    DifferentialForm beta = parse_form("x1 d[y1]", chart);
    DifferentialForm dpsi = exterior_derivative(parse_form("psi", chart));
    DifferentialForm eta = beta + dpsi.scaled(parse_scalar("u(phi)")) +
                           parse_form("g(t) d[phi] + f(t)*(d[z2]+x2 d[y2])", chart, false);
    ScalarExpr defect = contact_defect(eta);
    ScalarExpr expected = parse_scalar(
        "-6*f(t)*(f'(t)*g(t)-g'(t)*f(t)) - 6*u'(phi)*x1*D[psi,x1]*f(t)*f'(t)",
        chart);
    CHECK(defect == expected);
    // (dbeta)^m ^ dpsi lives on the 2-dim page: identically zero
    CHECK(wedge_product(exterior_derivative(beta), dpsi).is_zero());
}

TEST_CASE("binding extension: defect identity, axis value, hat duality") {
    auto h1 = make_profile("h1");
    auto h2 = make_profile("h2");
    BuiltForm built = binding_extension(kNu, h1, h2, Rational(1));
    ScalarExpr defect = contact_defect(built.form);
    ScalarExpr expected = parse_scalar(
        "4*h1(x^2+y^2)*(h1(x^2+y^2)*(w2(x^2+y^2)+(x^2+y^2)*w2'(x^2+y^2))"
        "-(x^2+y^2)*h1'(x^2+y^2)*w2(x^2+y^2))");
    CHECK(defect == expected);

    // hat duality: flipping l negates the defect exactly
    BuiltForm hat = binding_extension(kNu, h1, h2, Rational(-1));
    CHECK(contact_defect(hat.form) == -defect);

    // on the axis the defect reduces to 4 h1(0)^2 w2(0) = 16 > 0
    ScalarExpr axis = defect.substitute({{"x", parse_scalar("0")}, {"y", parse_scalar("0")}});
    std::vector<ProfileValue> anchors = h1.anchor_values();
    auto w2 = make_profile("w2");
    auto wa = w2.anchor_values();
    anchors.insert(anchors.end(), wa.begin(), wa.end());
    CHECK(axis.bind_profile_values(anchors) == ScalarExpr::integer(16));

    // grid positivity for r in [0,1], both realizations
    for (bool model : {false, true}) {
        ProfileParams pp;
        pp.use_local_model = model;
        auto reals = Realizations::defaults(pp);
        GridSpec grid;
        grid.axes = {{"x", -0.7, 0.7, 15}, {"y", -0.7, 0.7, 15}};
        grid.fixed = {{"x1", 0.3}, {"y1", -0.2}, {"z1", 0.1}};
        auto rep = check_contact(built.form, grid, 1e-9, reals);
        INFO("min defect " << rep.values.at("min_defect"));
        CHECK(rep.pass);
    }
}

TEST_CASE("product fold form: defect identity with c1 = 48") {
    auto f = make_profile("f");
    auto g = make_profile("g");
    auto h1 = make_profile("h1");
    auto h2 = make_profile("h2");
    BuiltForm built = product_fold_form(kNu, kLambda, f, g, h1, h2);
    REQUIRE(built.chart->orientation() == -1);

    ScalarExpr defect = contact_defect(built.form);
    // c1 * f^{n-1} h1^{m-1} * (f'g (h1 h2' - h1' h2) + f g' h1' h2), written
    // through s = r^2: h2 = s w2, d/dr = 2r d/ds, dr dphi = dx dy / r
    ScalarExpr bracket = parse_scalar(
        "f'(t)*g(t)*(h1(x^2+y^2)*(w2(x^2+y^2)+(x^2+y^2)*w2'(x^2+y^2))"
        "-(x^2+y^2)*h1'(x^2+y^2)*w2(x^2+y^2))"
        "+f(t)*g'(t)*(x^2+y^2)*h1'(x^2+y^2)*w2(x^2+y^2)");
    ScalarExpr rhs =
        parse_scalar("48*f(t)*h1(x^2+y^2)") * bracket;
    CHECK(defect - rhs == ScalarExpr());

    // the defect vanishes at (r,t) = (0,0): both summands die there
    ScalarExpr at00 = defect.substitute(
        {{"x", parse_scalar("0")}, {"y", parse_scalar("0")}, {"t", parse_scalar("0")}});
    std::vector<ProfileValue> anchors;
    for (const auto* p : {&f, &g, &h1}) {
        auto a = p->anchor_values();
        anchors.insert(anchors.end(), a.begin(), a.end());
    }
    auto w2 = make_profile("w2");
    auto wa = w2.anchor_values();
    anchors.insert(anchors.end(), wa.begin(), wa.end());
    CHECK(at00.bind_profile_values(anchors).is_zero());

    // restriction to Sigma: eta|_(t=r=0) = 2 nu + lambda
    DifferentialForm at_sigma = substitute_coefficients(
        built.form,
        {{"x", parse_scalar("0")}, {"y", parse_scalar("0")}, {"t", parse_scalar("0")}});
    CHECK(bind_profile_values(at_sigma, anchors) ==
          parse_form("2*(d[z1]+x1 d[y1]) + d[z2]+x2 d[y2]", built.chart));
}

TEST_CASE("asymmetric scale: collar gluing, derivative split, k^5 scaling") {
    auto f = make_profile("f");
    auto g = make_profile("g");
    auto h1 = make_profile("h1");
    auto h2 = make_profile("h2");
    auto k = make_profile("k");
    BuiltForm tilde = product_fold_form(kNu, kLambda, f, g, h1, h2);
    PiecewiseForm pw = asymmetric_scale(tilde, k);

    for (const auto& rep : pw.check_seams()) {
        INFO(rep.name << ": " << rep.detail);
        CHECK(rep.pass);
    }

    // on the middle region with k = e^t the exterior derivative splits as
    // d(e^t eta~) = e^t dt ^ eta~ + e^t d eta~, exactly
    std::map<std::string, LocalModel> kexp{{"k", {"t", parse_scalar("exp(t)")}}};
    DifferentialForm middle = substitute_profiles(pw.region("fold").form, kexp);
    DifferentialForm dt = DifferentialForm::basis(pw.chart, "t");
    ScalarExpr et = parse_scalar("exp(t)");
    CHECK(exterior_derivative(middle) ==
          wedge_product(dt, tilde.form).scaled(et) +
              exterior_derivative(tilde.form).scaled(et));

    // scaling: defect(k eta~) = k^5 defect(eta~); the dk terms cancel
    CHECK(contact_defect(pw.region("fold").form) ==
          parse_scalar("k(t)^5") * contact_defect(tilde.form));

    // jets on Sigma: eta = 2nu + lambda,
    // d eta = 2 dnu + dlambda + dt ^ (2nu + lambda)
    std::vector<ProfileValue> anchors;
    for (const auto* p : {&f, &g, &h1, &k}) {
        auto a = p->anchor_values();
        anchors.insert(anchors.end(), a.begin(), a.end());
    }
    auto w2 = make_profile("w2");
    auto wa = w2.anchor_values();
    anchors.insert(anchors.end(), wa.begin(), wa.end());
    std::map<std::string, ScalarExpr> sigma{
        {"x", parse_scalar("0")}, {"y", parse_scalar("0")}, {"t", parse_scalar("0")}};
    DifferentialForm eta_sigma =
        bind_profile_values(substitute_coefficients(pw.region("fold").form, sigma), anchors);
    CHECK(eta_sigma == parse_form("2*(d[z1]+x1 d[y1]) + d[z2]+x2 d[y2]", pw.chart));
    DifferentialForm deta_sigma = bind_profile_values(
        substitute_coefficients(exterior_derivative(pw.region("fold").form), sigma),
        anchors);
    CHECK(deta_sigma ==
          parse_form("2 d[x1]^d[y1] + d[x2]^d[y2] + d[t]^(2*(d[z1]+x1 d[y1]) + "
                     "d[z2]+x2 d[y2])",
                     pw.chart));
}

TEST_CASE("exact bundle forms: four-term expansions") {
    ProfileParams pp;
    auto u = make_profile("u_collar", pp);

    SECTION("(m,n) = (1,1): constants (1,1), remaining shapes vanish") {
        BuiltForm b = exact_bundle_form(BundleVariant::ProductBase11, u);
        const auto& c = b.chart;
        DifferentialForm mu = parse_form("d[v]", c);
        DifferentialForm beta = parse_form("x1 d[y1]", c);
        DifferentialForm dpsi = exterior_derivative(parse_form("psi", c));
        DifferentialForm dv = parse_form("d[v]", c);
        ScalarExpr up = parse_scalar("u'(v)");
        ScalarExpr R = parse_scalar("R");

        DifferentialForm lhs = wedge_product(b.form, exterior_derivative(b.form));
        DifferentialForm T1 = wedge_product(mu, exterior_derivative(beta));
        DifferentialForm T3 = wedge_product(wedge_product(beta, dv), dpsi).scaled(up);
        CHECK(lhs == T1.scaled(R) + T3);
        // u-dependent closing shape vanishes for dimension reasons
        CHECK(wedge_product(exterior_derivative(beta), dpsi).is_zero());
    }

    SECTION("(m,n) = (2,1): constants (2,2,2), fourth shape vanishes") {
        BuiltForm b = exact_bundle_form(BundleVariant::ProductBase21, u);
        const auto& c = b.chart;
        DifferentialForm mu = parse_form("d[v]+p d[q]", c);
        DifferentialForm beta = parse_form("x1 d[y1]", c);
        DifferentialForm dpsi = exterior_derivative(parse_form("psi", c));
        DifferentialForm dv = parse_form("d[v]", c);
        ScalarExpr up = parse_scalar("u'(v)");
        ScalarExpr u0 = parse_scalar("u(v)");
        ScalarExpr R = parse_scalar("R");
        DifferentialForm dmu = exterior_derivative(mu);
        DifferentialForm dbeta = exterior_derivative(beta);

        DifferentialForm lhs =
            wedge_product(b.form, wedge_power(exterior_derivative(b.form), 2));
        DifferentialForm T1 = wedge_product(wedge_product(mu, dmu), dbeta);
        DifferentialForm T2 =
            wedge_product(wedge_product(wedge_product(mu, dbeta), dv), dpsi).scaled(up);
        DifferentialForm T3 =
            wedge_product(wedge_product(wedge_product(beta, dmu), dv), dpsi).scaled(up);
        DifferentialForm T4 = wedge_product(wedge_product(dmu, dbeta), dpsi).scaled(u0);
        CHECK(T4.is_zero());
        CHECK(lhs == T1.scaled(R * R * Rational(2)) + T2.scaled(R * Rational(2)) +
                         T3.scaled(R * Rational(2)));

        // trivial gluing: u == 0 leaves the dominant positive term alone
        std::map<std::string, LocalModel> umodel{{"u", {"t", parse_scalar("0")}}};
        CHECK(contact_defect(b.form).substitute_profiles(umodel) == parse_scalar("2*R^2"));
    }

    SECTION("long collar: defect factors through e^{ns}") {
        BuiltForm b = exact_bundle_form(BundleVariant::LongCollar21, u);
        const auto& c = b.chart;
        DifferentialForm muX = parse_form("d[a]", c);
        DifferentialForm muY = parse_form("d[v]+p d[q]", c);
        DifferentialForm dpsi = exterior_derivative(parse_form("psi", c));
        DifferentialForm ds = parse_form("d[s]", c);
        DifferentialForm dv = parse_form("d[v]", c);
        ScalarExpr up = parse_scalar("u'(v)");
        ScalarExpr es = parse_scalar("exp(s)");
        ScalarExpr R = parse_scalar("R");

        DifferentialForm lhs =
            wedge_product(b.form, wedge_power(exterior_derivative(b.form), 2));
        DifferentialForm S1 =
            wedge_product(wedge_product(wedge_product(muX, muY), exterior_derivative(muY)),
                          ds);
        DifferentialForm S2 = wedge_product(
            wedge_product(wedge_product(wedge_product(muX, muY), ds), dv), dpsi)
                                  .scaled(up);
        CHECK(lhs == S1.scaled(es * R * R * Rational(2)) +
                         S2.scaled(es * R * Rational(2)));
        // so the R threshold cannot depend on the collar length: e^{ns} > 0
        // multiplies the whole bracket
    }
}

TEST_CASE("bundle sum: partition of unity enforced, contact for large K") {
    ScalarExpr w1 = parse_scalar("pw(rho)");
    ScalarExpr w2 = ScalarExpr::integer(1) - w1;
    std::vector<std::pair<ScalarExpr, std::string>> bad{
        {w1, "d[z]+x d[y]"}, {w1, "d[z]+x d[y]"}};
    CHECK_THROWS_AS(bundle_sum_form(bad), Error);

    std::vector<std::pair<ScalarExpr, std::string>> fibers{
        {w1, "d[z]+x d[y]"}, {w2, "d[z]+(x+1/5) d[y]"}};
    BuiltForm theta = bundle_sum_form(fibers);

    auto reals = default_reals();
    ProfileFunction pwp;
    pwp.name = "pw";
    pwp.kind = "pw";
    pwp.formal_var = "rho";
    pwp.lo = 0.5;
    pwp.hi = 1.5;
    pwp.jets = [](double rho) {
        return jstep((Jet2::var(rho) - Jet2::constant(0.9)) * Jet2::constant(5.0));
    };
    reals.add(pwp);

    GridSpec grid;
    grid.axes = {{"rho", 0.6, 1.4, 9}, {"thc", 0, 6.28, 9}, {"x", -1, 1, 5},
                 {"y", -1, 1, 5}, {"z", -1, 1, 3}};
    grid.fixed = {{"K", 50}};
    auto rep = check_contact(theta.form, grid, 1e-9, reals);
    INFO("min defect " << rep.values.at("min_defect"));
    CHECK(rep.pass);

    // single-chart degenerate case: constant weights with equal fiber forms
    std::vector<std::pair<ScalarExpr, std::string>> single{
        {parse_scalar("1/2"), "d[z]+x d[y]"}, {parse_scalar("1/2"), "d[z]+x d[y]"}};
    BuiltForm collapsed = bundle_sum_form(single);
    std::vector<std::pair<ScalarExpr, std::string>> one{
        {parse_scalar("1"), "d[z]+x d[y]"}};
    CHECK(collapsed.form == bundle_sum_form(one).form);
}

TEST_CASE("concave collars: swap variant") {
    PiecewiseForm pw = concave_collar_forms(CollarVariant::Swap);
    for (const auto& rep : pw.check_seams()) {
        INFO(rep.name << ": " << rep.detail);
        CHECK(rep.pass);
    }
    for (const auto& rep : pw.check_boundaries()) {
        INFO(rep.name << ": " << rep.detail);
        CHECK(rep.pass);
    }
    // region defects: 6 g1^4 e^{-2t}, 6 f (f'G - f G') with G = g(2t),
    // 6 g2^4 e^{2t}
    CHECK(contact_defect(pw.region("left").form) ==
          parse_scalar("6*g1(t)^4*exp(-2*t)"));
    CHECK(contact_defect(pw.region("middle").form) ==
          parse_scalar("6*f(t)*(f'(t)*g(2*t)-2*f(t)*g'(2*t))"));
    CHECK(contact_defect(pw.region("right").form) ==
          parse_scalar("6*g2(t)^4*exp(2*t)"));
}

TEST_CASE("concave collars: four-part variant") {
    PiecewiseForm pw = concave_collar_forms(CollarVariant::FourPart);
    for (const auto& rep : pw.check_seams()) {
        INFO(rep.name << ": " << rep.detail);
        CHECK(rep.pass);
    }
    for (const auto& rep : pw.check_boundaries()) {
        INFO(rep.name << ": " << rep.detail);
        CHECK(rep.pass);
    }
    CHECK(contact_defect(pw.region("q1").form) == parse_scalar("6*exp(2*t)"));
    CHECK(contact_defect(pw.region("q2").form) == parse_scalar("6*exp(-2*t+1)"));
    CHECK(contact_defect(pw.region("q3").form) == parse_scalar("6*exp(2*t-1)"));
    CHECK(contact_defect(pw.region("q4").form) == parse_scalar("6*exp(-2*t+2)"));

    // hatted-model duality: flipping the contact-factor slot negates the defect
    DifferentialForm q1 = pw.region("q1").form;
    DifferentialForm q1hat =
        parse_form("exp(t)*(d[z3]+x3 d[y3])+(d[z2]-x2 d[y2])", pw.chart);
    CHECK(contact_defect(q1hat) == -contact_defect(q1));
}
