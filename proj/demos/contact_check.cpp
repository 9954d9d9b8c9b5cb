// Minimal tour: parse a contact form, differentiate, star, and verify
// contactness symbolically and on a grid.

#include <cstdio>

#include "wedge/wedge.hpp"

int main() {
    using namespace wedge;

    auto chart = make_chart({"x", "y", "z"});
    DifferentialForm eta = parse_form("d[z]+x d[y]", chart);

    std::printf("eta      = %s\n", eta.str().c_str());
    std::printf("d eta    = %s\n", exterior_derivative(eta).str().c_str());
    std::printf("star eta = %s\n", hodge_star(eta).str().c_str());
    std::printf("defect   = %s\n", contact_defect(eta).str().c_str());
    std::printf("tau      = %s\n", tau_form(eta).str().c_str());

    // the fold form f lambda + g dphi with the shipped profiles
    auto f = make_profile("f");
    auto g = make_profile("g");
    BuiltForm fold = fold_circle_form(darboux_model("x2", "y2", "z2"), f, g);
    std::printf("\nfold form    = %s\n", fold.form.str().c_str());
    std::printf("fold defect  = %s\n", contact_defect(fold.form).str().c_str());

    auto reals = Realizations::defaults();
    GridSpec grid;
    grid.axes = {{"t", -1, 1, 21}, {"phi", 0, 6.28, 9}};
    grid.fixed = {{"x2", 0.3}, {"y2", -0.2}, {"z2", 0.1}};
    auto report = check_contact(fold.form, grid, 1e-9, reals);
    std::printf("grid check   = %s (min defect %.4f)\n",
                report.pass ? "contact" : "not contact",
                report.values.at("min_defect"));
    return report.pass ? 0 : 1;
}
