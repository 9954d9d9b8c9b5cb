// Command-line driver: parse forms, run single exterior-calculus operations,
// verify contactness on grids, and execute scenario files.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 input error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "wedge/wedge.hpp"

namespace {

struct CommonArgs {
    std::string chart_spec;
    int orientation = 1;
    std::vector<std::string> forms;
    bool json = false;
};

wedge::ChartPtr build_chart(const CommonArgs& args) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : args.chart_spec) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) names.push_back(cur);
    if (names.empty()) throw wedge::Error("empty chart");
    return wedge::make_chart(names, args.orientation);
}

void print_form(const wedge::DifferentialForm& f, bool as_json) {
    if (as_json) {
        nlohmann::ordered_json j;
        j["degree"] = f.degree();
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto& [idx, coeff] : f.terms()) {
            nlohmann::ordered_json t;
            nlohmann::ordered_json mono = nlohmann::ordered_json::array();
            for (int i : idx) mono.push_back(f.chart().name(i));
            t["wedge"] = mono;
            t["coefficient"] = coeff.str();
            terms.push_back(t);
        }
        j["terms"] = terms;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << f.str() << "\n";
    }
}

wedge::Point parse_point(const std::string& spec) {
    wedge::Point p;
    std::string item;
    std::istringstream is(spec);
    while (std::getline(is, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw wedge::Error("point item needs '='");
        p[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return p;
}

double env_tol() {
    if (const char* env = std::getenv("WEDGE_TOL")) return std::atof(env);
    return 1e-9;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exterior-calculus toolkit for explicit contact forms"};
    app.require_subcommand(1);

    CommonArgs args;
    double tol = env_tol();
    std::string point_spec, sweep_spec, fix_spec, scenario_path, json_path;
    int grid = 11;
    int power = 1;

    auto add_common = [&](CLI::App* sub, bool multi_forms = false) {
        sub->add_option("--chart", args.chart_spec, "comma-separated coordinates")
            ->required();
        sub->add_option("--orientation", args.orientation,
                        "orientation sign of the coordinate order (+1/-1)");
        if (multi_forms)
            sub->add_option("--forms", args.forms, "form expressions")->required();
        else
            sub->add_option("--form", args.forms, "form expression")->required();
        sub->add_flag("--json", args.json, "JSON output");
    };

    auto* parse_cmd = app.add_subcommand("parse", "parse and reprint a form");
    add_common(parse_cmd);

    auto* d_cmd = app.add_subcommand("d", "exterior derivative");
    add_common(d_cmd);

    auto* wedge_cmd = app.add_subcommand("wedge", "wedge product of the given forms");
    add_common(wedge_cmd, true);
    wedge_cmd->add_option("--power", power, "wedge power applied to the product");

    auto* star_cmd = app.add_subcommand("star", "Hodge star");
    add_common(star_cmd);

    auto* defect_cmd = app.add_subcommand("defect", "contact defect eta ^ (d eta)^k");
    add_common(defect_cmd);
    defect_cmd->add_option("--point", point_spec,
                           "evaluate numerically at coord=value,... (uses the "
                           "default profile realizations)");

    auto* tau_cmd = app.add_subcommand("tau", "tau = star(eta ^ (d eta)^{k-1})");
    add_common(tau_cmd);

    auto* check_cmd = app.add_subcommand("check", "grid contactness check");
    add_common(check_cmd);
    check_cmd->add_option("--tol", tol, "positivity tolerance");
    check_cmd->add_option("--grid", grid, "points per swept axis");
    check_cmd->add_option("--sweep", sweep_spec, "axes coord:lo:hi[,coord:lo:hi...]");
    check_cmd->add_option("--fix", fix_spec, "fixed coordinates coord=value,...");

    auto* run_cmd = app.add_subcommand("run", "run a scenario file");
    run_cmd->add_option("scenario", scenario_path, "scenario file")->required();
    run_cmd->add_option("--json", json_path, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return wedge::run_scenario_file(scenario_path, json_path);

        wedge::ChartPtr chart = build_chart(args);
        auto parse1 = [&](const std::string& text) {
            return wedge::parse_form(text, chart, /*strict=*/false);
        };

        if (parse_cmd->parsed()) {
            print_form(parse1(args.forms.at(0)), args.json);
        } else if (d_cmd->parsed()) {
            print_form(wedge::exterior_derivative(parse1(args.forms.at(0))), args.json);
        } else if (wedge_cmd->parsed()) {
            wedge::DifferentialForm acc = parse1(args.forms.at(0));
            for (std::size_t i = 1; i < args.forms.size(); ++i)
                acc = wedge::wedge_product(acc, parse1(args.forms[i]));
            if (power != 1) acc = wedge::wedge_power(acc, power);
            print_form(acc, args.json);
        } else if (star_cmd->parsed()) {
            print_form(wedge::hodge_star(parse1(args.forms.at(0))), args.json);
        } else if (defect_cmd->parsed()) {
            wedge::ScalarExpr defect = wedge::contact_defect(parse1(args.forms.at(0)));
            if (point_spec.empty()) {
                std::cout << defect.str() << "\n";
            } else {
                auto reals = wedge::Realizations::defaults();
                std::cout << wedge::eval_scalar_at(defect, *chart, parse_point(point_spec),
                                                   reals)
                          << "\n";
            }
        } else if (tau_cmd->parsed()) {
            print_form(wedge::tau_form(parse1(args.forms.at(0))), args.json);
        } else if (check_cmd->parsed()) {
            wedge::GridSpec gs;
            if (!sweep_spec.empty()) {
                std::istringstream is(sweep_spec);
                std::string axis;
                while (std::getline(is, axis, ',')) {
                    std::vector<std::string> parts;
                    std::istringstream as(axis);
                    std::string p;
                    while (std::getline(as, p, ':')) parts.push_back(p);
                    if (parts.size() < 3) throw wedge::Error("sweep needs coord:lo:hi");
                    gs.axes.push_back({parts[0], std::stod(parts[1]),
                                       std::stod(parts[2]),
                                       parts.size() > 3 ? std::stoi(parts[3]) : grid});
                }
            }
            if (!fix_spec.empty()) gs.fixed = parse_point(fix_spec);
            auto reals = wedge::Realizations::defaults();
            auto rep = wedge::check_contact(parse1(args.forms.at(0)), gs, tol, reals);
            std::cout << rep.to_json().dump(2) << "\n";
            return rep.pass ? 0 : 1;
        }
        return 0;
    } catch (const wedge::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
