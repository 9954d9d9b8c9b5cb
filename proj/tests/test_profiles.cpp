#include <catch_amalgamated.hpp>

#include <cmath>

#include "wedge/profile.hpp"

using namespace wedge;

TEST_CASE("profile boundary segments hold exactly") {
    auto f = make_profile("f");
    CHECK(f.value(0) == 1.0);
    CHECK(f.value(1.0) == std::exp(-1.0));
    CHECK(f.value(-1.0) == std::exp(-1.0));
    CHECK(f.value(0.5) == std::exp(-0.5));

    auto g = make_profile("g");
    CHECK(g.value(0.2) == -0.2);
    CHECK(g.value(1.0) == -1.0);
    CHECK(g.value(-1.0) == 1.0);

    auto h2 = make_profile("h2");
    CHECK(h2.value(0.09) == 0.09);  // h2(r) = r^2 for small r, stored in s = r^2
    CHECK(h2.value(1.0) == 1.0);

    auto k = make_profile("k");
    CHECK(k.value(-1.05) == std::exp(-1.0));
    CHECK(k.value(0) == 1.0);
    CHECK(k.value(1.02) == std::exp(1.0));

    ProfileParams pp;
    pp.R = 10;
    auto u = make_profile("u", pp);
    CHECK(u.value(0.05) == 0.0);
    CHECK(u.value(2 * M_PI * 10 - 0.05) == 1.0);
}

TEST_CASE("profile validators pass for the default realizations") {
    for (const char* kind : {"f", "g", "h1", "h2", "w2", "u", "k", "g1", "g2"}) {
        auto p = make_profile(kind);
        auto rs = validate_profile(p, 300);
        for (const auto& r : rs) {
            INFO(r.name << " margin=" << r.margin << " at " << r.worst_arg);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("paired constraints") {
    auto f = make_profile("f");
    auto g = make_profile("g");
    auto rs = validate_fold_pair(f, g);
    REQUIRE(rs.size() == 1);
    INFO("min f'g-g'f = " << rs[0].margin << " at t=" << rs[0].worst_arg);
    CHECK(rs[0].pass);
    CHECK(rs[0].margin > 0.05);

    auto h1 = make_profile("h1");
    auto h2 = make_profile("h2");
    for (const auto& r : validate_binding_pair(h1, h2)) {
        INFO(r.name << " margin=" << r.margin);
        CHECK(r.pass);
    }
    // also with the polynomial local models
    ProfileParams pm;
    pm.use_local_model = true;
    for (const auto& r :
         validate_binding_pair(make_profile("h1", pm), make_profile("h2", pm))) {
        CHECK(r.pass);
    }
}

TEST_CASE("a broken profile is reported, not silently accepted") {
    auto g = make_profile("g");
    auto base = g.jets;
    g.jets = [base](double t) { return base(t) + Jet2::constant(0.05); };  // not odd
    auto rs = validate_profile(g, 100);
    bool odd_failed = false;
    for (const auto& r : rs)
        if (r.name.find("odd") != std::string::npos && !r.pass) odd_failed = true;
    CHECK(odd_failed);
}

TEST_CASE("infeasible parameters are rejected") {
    ProfileParams bad;
    bad.epsilon = 0.3;
    CHECK_THROWS_AS(make_profile("f", bad), Error);
    ProfileParams small_r;
    small_r.R = 0.5;
    CHECK_THROWS_AS(make_profile("u", small_r), Error);
    CHECK_THROWS_AS(make_profile("nope"), Error);
}

TEST_CASE("u' vanishes exactly on the end plateaus") {
    ProfileParams pp;
    pp.R = 10;
    auto u = make_profile("u", pp);
    CHECK(u.deriv(0.0, 1) == 0.0);
    CHECK(u.deriv(0.05, 1) == 0.0);
    CHECK(u.deriv(2 * M_PI * 10 - 0.05, 1) == 0.0);
    CHECK(u.deriv(2 * M_PI * 10, 1) == 0.0);
    CHECK(u.deriv(M_PI * 10, 1) > 0.0);
}

TEST_CASE("u derivative bound scales like 1/R") {
    for (double R : {5.0, 10.0, 20.0}) {
        ProfileParams pp;
        pp.R = R;
        auto u = make_profile("u", pp);
        double sup = 0;
        for (int i = 0; i <= 2000; ++i) {
            double phi = u.lo + (u.hi - u.lo) * i / 2000.0;
            sup = std::max(sup, std::abs(u.deriv(phi, 1)));
        }
        CHECK(sup <= 0.5 / R);
        CHECK(sup > 0.1 / R);
    }
}

TEST_CASE("realizations feed numeric evaluation of symbolic trees") {
    auto reals = Realizations::defaults();
    Point pt{{"t", 0.5}, {"x", 0.3}, {"y", 0.1}};
    EvalContext ctx = reals.context(pt);
    ScalarExpr e = parse_scalar("f(t)*h1(x^2+y^2)");
    double expected = reals.get("f").value(0.5) * reals.get("h1").value(0.1);
    CHECK(e.eval(ctx) == Catch::Approx(expected));

    ScalarExpr de = e.diff("t");
    CHECK(de.eval(ctx) ==
          Catch::Approx(reals.get("f").deriv(0.5, 1) * reals.get("h1").value(0.1)));
}

TEST_CASE("anchor values bind symbolically") {
    auto f = make_profile("f");
    ScalarExpr e = parse_scalar("f(0)*x + f'(0)");
    CHECK(e.bind_profile_values(f.anchor_values()) == parse_scalar("x"));
}
