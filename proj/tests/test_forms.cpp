#include <catch_amalgamated.hpp>

#include <random>

#include "wedge/form.hpp"
#include "wedge/parse.hpp"

using namespace wedge;

namespace {

ChartPtr xyz() { return make_chart({"x", "y", "z"}); }

ScalarExpr S(const std::string& t) { return parse_scalar(t); }

// random form of the given degree with small polynomial coefficients
DifferentialForm random_form(ChartPtr chart, int degree, std::mt19937& rng) {
    DifferentialForm f(chart, degree);
    int n = static_cast<int>(chart->dim());
    std::uniform_int_distribution<int> cf(-3, 3);
    for (int reps = 0; reps < 4; ++reps) {
        std::vector<int> idx;
        while (static_cast<int>(idx.size()) < degree) {
            int c = static_cast<int>(rng() % n);
            bool dup = false;
            for (int v : idx) dup |= (v == c);
            if (!dup) idx.push_back(c);
        }
        ScalarExpr coeff = ScalarExpr::integer(cf(rng));
        for (int k = 0; k < 2; ++k)
            if (rng() % 2)
                coeff = coeff * ScalarExpr::variable(chart->name(static_cast<int>(rng() % n)));
        if (rng() % 4 == 0)
            coeff = coeff * ScalarExpr::exp_of(ScalarExpr::variable(chart->name(0)));
        f.add_term(idx, coeff);
    }
    return f;
}

}  // namespace

TEST_CASE("form parsing") {
    auto b3 = make_chart({"x1", "y1", "z1"});
    DifferentialForm beta = parse_form("d[z1]+x1 d[y1]", b3);
    CHECK(beta.degree() == 1);
    CHECK(beta.coefficient({"z1"}) == S("1"));
    CHECK(beta.coefficient({"y1"}) == S("x1"));

    auto c = xyz();
    CHECK(parse_form("d[y]^d[x]", c) == parse_form("-d[x]^d[y]", c));
    CHECK(parse_form("d[x]^d[x]", c).is_zero());
    CHECK_THROWS_AS(parse_form("d[w]", c), ParseError);
    CHECK_THROWS_AS(parse_form("d[x] + d[x]^d[y]", c), DegreeError);
}

TEST_CASE("wedge products") {
    auto c = xyz();
    auto dx = parse_form("d[x]", c), dy = parse_form("d[y]", c);
    CHECK(wedge_product(dx, dy) == -wedge_product(dy, dx));

    DifferentialForm w = parse_form("(d[z]+x d[y])^d[x]^d[y]", c);
    CHECK(top_coefficient(w) == S("1"));

    auto c4 = make_chart({"x1", "y1", "x2", "y2"});
    DifferentialForm omega = parse_form("d[x1]^d[y1] + d[x2]^d[y2]", c4);
    CHECK(wedge_power(omega, 2) == parse_form("2 d[x1]^d[y1]^d[x2]^d[y2]", c4));
    CHECK(wedge_power(parse_form("d[x1]^d[y1]", c4), 2).is_zero());

    CHECK_THROWS_AS(wedge_product(parse_form("d[x1]^d[y1]^d[x2]", c4),
                                  parse_form("d[x2]^d[y2]", c4)),
                    DegreeError);
    CHECK_THROWS_AS(wedge_product(dx, parse_form("d[x1]", c4)), ChartMismatch);
}

TEST_CASE("exterior derivative") {
    auto b3 = make_chart({"x1", "y1", "z1"});
    CHECK(exterior_derivative(parse_form("x1 d[y1]", b3)) ==
          parse_form("d[x1]^d[y1]", b3));
    // d of an abstract-function 0-form produces partial symbols
    auto c = make_chart({"x", "y", "z"});
    auto cc = std::make_shared<Chart>(*c);
    cc->declare_function("psi", {"x", "y"});
    ChartPtr cp = cc;
    DifferentialForm dpsi = exterior_derivative(parse_form("psi", cp));
    CHECK(dpsi.coefficient({"x"}) == parse_scalar("D[psi,x]", cp));
    CHECK(exterior_derivative(dpsi).is_zero());
}

TEST_CASE("d o d = 0 on random forms") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 200; ++i) {
        int dim = 3 + static_cast<int>(rng() % 7);
        std::vector<std::string> names;
        for (int k = 0; k < dim; ++k) names.push_back("c" + std::to_string(k));
        auto chart = make_chart(names);
        int deg = static_cast<int>(rng() % (dim - 1));
        DifferentialForm f = random_form(chart, deg, rng);
        REQUIRE(exterior_derivative(exterior_derivative(f)).is_zero());
    }
}

TEST_CASE("graded Leibniz and graded commutativity") {
    std::mt19937 rng(515);
    for (int i = 0; i < 200; ++i) {
        int dim = 3 + static_cast<int>(rng() % 7);
        std::vector<std::string> names;
        for (int k = 0; k < dim; ++k) names.push_back("c" + std::to_string(k));
        auto chart = make_chart(names);
        int p = static_cast<int>(rng() % 3);
        int q = static_cast<int>(rng() % std::max(1, dim - p - 1));
        DifferentialForm a = random_form(chart, p, rng);
        DifferentialForm b = random_form(chart, q, rng);

        DifferentialForm lhs = exterior_derivative(wedge_product(a, b));
        DifferentialForm rhs = wedge_product(exterior_derivative(a), b);
        DifferentialForm s = wedge_product(a, exterior_derivative(b));
        rhs = (p % 2 == 0) ? rhs + s : rhs - s;
        REQUIRE(lhs == rhs);

        DifferentialForm ab = wedge_product(a, b);
        DifferentialForm ba = wedge_product(b, a);
        REQUIRE(ab == ((p * q) % 2 == 0 ? ba : -ba));
    }
}

TEST_CASE("hodge star") {
    auto c = xyz();
    CHECK(hodge_star(parse_form("d[x]", c)) == parse_form("d[y]^d[z]", c));
    // orientation reversal flips the sign
    auto cneg = make_chart({"x", "y", "z"}, -1);
    CHECK(hodge_star(parse_form("d[x]", cneg)) == parse_form("-d[y]^d[z]", cneg));

    // star o star = (-1)^{k(n-k)} on every basis monomial, dims 3..9
    for (int dim = 3; dim <= 9; ++dim) {
        std::vector<std::string> names;
        for (int k = 0; k < dim; ++k) names.push_back("c" + std::to_string(k));
        auto chart = make_chart(names);
        for (int deg = 0; deg <= dim; ++deg) {
            std::vector<int> idx(deg);
            for (int k = 0; k < deg; ++k) idx[k] = k;
            // iterate over ascending index sets
            for (;;) {
                DifferentialForm f(chart, deg);
                f.add_term(idx, ScalarExpr::integer(1));
                DifferentialForm ss = hodge_star(hodge_star(f));
                int sign = (deg * (dim - deg)) % 2 == 0 ? 1 : -1;
                REQUIRE(ss == (sign > 0 ? f : -f));
                int i = deg - 1;
                while (i >= 0 && idx[i] == dim - deg + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < deg; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

TEST_CASE("interior product") {
    auto c = xyz();
    VectorField dz(c, {{"z", S("1")}});
    CHECK(interior_product(dz, parse_form("d[z]+x d[y]", c)) == parse_form("1", c));
    VectorField dxv(c, {{"x", S("1")}});
    CHECK(interior_product(dxv, parse_form("d[x]^d[y]", c)) == parse_form("d[y]", c));
    CHECK(interior_product(dxv, parse_form("x", c)).is_zero());

    std::mt19937 rng(99);
    for (int i = 0; i < 200; ++i) {
        int dim = 3 + static_cast<int>(rng() % 7);
        std::vector<std::string> names;
        for (int k = 0; k < dim; ++k) names.push_back("c" + std::to_string(k));
        auto chart = make_chart(names);
        int p = 1 + static_cast<int>(rng() % 2);
        int q = 1 + static_cast<int>(rng() % 2);
        if (p + q > dim) continue;
        DifferentialForm a = random_form(chart, p, rng);
        DifferentialForm b = random_form(chart, q, rng);
        std::map<std::string, ScalarExpr> comps;
        for (int k = 0; k < dim; ++k)
            if (rng() % 2) comps.emplace(names[k], ScalarExpr::variable(names[rng() % dim]));
        VectorField v(chart, comps);
        DifferentialForm lhs = interior_product(v, wedge_product(a, b));
        DifferentialForm rhs = wedge_product(interior_product(v, a), b);
        DifferentialForm s = wedge_product(a, interior_product(v, b));
        rhs = (p % 2 == 0) ? rhs + s : rhs - s;
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("substitution as pullback") {
    auto c = make_chart({"x", "y"});
    DifferentialForm dx = parse_form("d[x]", c);
    DifferentialForm pulled = substitute(dx, {{"x", S("y^2")}});
    auto cy = make_chart({"y"});
    CHECK(pulled == parse_form("2*y d[y]", cy));

    // slice restriction drops the bound differential
    auto c3 = xyz();
    DifferentialForm eta = parse_form("f(z)*d[x] + g(z)*d[z]", c3, false);
    DifferentialForm sliced = substitute(eta, {{"z", S("0")}});
    auto cxy = make_chart({"x", "y"});
    CHECK(sliced == parse_form("f(0)*d[x]", cxy, false));

    CHECK_THROWS_AS(substitute(dx, {{"x", S("y")}, {"y", S("x")}}), Error);
}

TEST_CASE("slice pullback of the fold form at t=0") {
    // f(t) lambda + g(t) dphi pulled back to t=0: parity kills the dphi slot
    auto c = make_chart({"t", "x", "y", "z", "phi"});
    DifferentialForm eta =
        parse_form("f(t)*(d[z]+x d[y]) + g(t) d[phi]", c, false);
    DifferentialForm sliced = substitute(eta, {{"t", S("0")}});
    std::vector<ProfileValue> jets{{"f", 0, Rational(0), Rational(1)},
                                   {"g", 0, Rational(0), Rational(0)}};
    auto cr = make_chart({"x", "y", "z", "phi"});
    CHECK(bind_profile_values(sliced, jets) == parse_form("d[z]+x d[y]", cr));
}

TEST_CASE("coefficient restriction keeps the coframe") {
    auto c3 = xyz();
    DifferentialForm eta = parse_form("f(z)*d[x] + g(z)*d[z]", c3, false);
    DifferentialForm at0 = substitute_coefficients(eta, {{"z", S("0")}});
    CHECK(at0 == parse_form("f(0)*d[x] + g(0)*d[z]", c3, false));
}

TEST_CASE("top coefficient") {
    auto c = xyz();
    CHECK(top_coefficient(parse_form("d[x]^d[y]^d[z]", c)) == S("1"));
    CHECK(top_coefficient(parse_form("d[z]^d[x]^d[y]", c)) == S("1"));
    DifferentialForm std_contact = parse_form("d[z]+x d[y]", c);
    CHECK(top_coefficient(wedge_product(std_contact, exterior_derivative(std_contact))) ==
          S("1"));
    CHECK_THROWS_AS(top_coefficient(std_contact), DegreeError);
}

TEST_CASE("wedge_power equals iterated wedge") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 60; ++i) {
        int dim = 4 + static_cast<int>(rng() % 6);
        std::vector<std::string> names;
        for (int k = 0; k < dim; ++k) names.push_back("c" + std::to_string(k));
        auto chart = make_chart(names);
        DifferentialForm f = random_form(chart, 1 + static_cast<int>(rng() % 2), rng);
        int n = static_cast<int>(rng() % 4);
        if (n * f.degree() > dim) continue;
        DifferentialForm it = DifferentialForm::scalar(chart, S("1"));
        for (int k = 0; k < n; ++k) it = wedge_product(it, f);
        REQUIRE(wedge_power(f, n) == it);
    }
}

TEST_CASE("form print/parse round trip") {
    auto c = make_chart({"x1", "y1", "z1", "t1"});
    for (const char* text :
         {"d[z1]+x1 d[y1]", "-4*x1^3 d[x1]^d[z1] + (2-x1^4) d[t1]^d[z1]",
          "exp(t1)*x1 d[y1]^d[z1]", "x1^2*y1"}) {
        DifferentialForm f = parse_form(text, c);
        CHECK(parse_form(f.str(), c) == f);
    }
}
