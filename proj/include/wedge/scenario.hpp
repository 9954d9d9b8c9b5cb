#pragma once

// Line-oriented scenario files: a chart, profile declarations, form
// declarations (parsed text, small operation pipelines, or builder
// invocations) and a check list. Reports serialize to JSON; exit codes are
// 0 (all checks pass), 1 (a check failed), 2 (input error). The format is
// documented in docs/scenario_format.md.

#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wedge/builders.hpp"
#include "wedge/verify.hpp"

namespace wedge {

struct CheckOutcome {
    std::string name;
    std::string kind;
    bool pass = false;
    std::map<std::string, double> values;
    std::vector<std::string> notes;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["kind"] = kind;
        j["status"] = pass ? "pass" : "fail";
        if (!values.empty()) {
            nlohmann::ordered_json v;
            for (const auto& [k, x] : values) v[k] = x;
            j["values"] = v;
        }
        if (!notes.empty()) j["notes"] = notes;
        return j;
    }
};

struct ScenarioResult {
    std::string name;
    std::vector<CheckOutcome> checks;
    bool pass = true;

    nlohmann::ordered_json to_json(bool timestamp = true) const {
        nlohmann::ordered_json j;
        j["scenario"] = name;
        j["schema_version"] = 1;
        if (timestamp) {
            auto now = std::chrono::system_clock::now().time_since_epoch();
            j["timestamp"] =
                std::chrono::duration_cast<std::chrono::seconds>(now).count();
        }
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : checks) arr.push_back(c.to_json());
        j["checks"] = arr;
        j["pass"] = pass;
        return j;
    }
};

class Scenario {
public:
    static Scenario parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open scenario file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_text(ss.str());
    }

    static Scenario parse_text(const std::string& text) {
        Scenario sc;
        std::istringstream in(text);
        std::string raw, line;
        int lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            // strip comments, join continuation lines ending in '\'
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' ||
                                    raw.back() == '\r'))
                raw.pop_back();
            if (!raw.empty() && raw.back() == '\\') {
                raw.pop_back();
                line += raw;
                continue;
            }
            line += raw;
            std::string stmt = line;
            line.clear();
            // trim
            std::size_t b = stmt.find_first_not_of(" \t");
            if (b == std::string::npos) continue;
            stmt = stmt.substr(b);
            sc.statements_.push_back({lineno, stmt});
        }
        return sc;
    }

    ScenarioResult run() {
        ScenarioResult result;
        for (const auto& [lineno, stmt] : statements_) {
            try {
                execute(stmt, result);
            } catch (const Error& e) {
                throw Error("line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        for (const auto& c : result.checks) result.pass = result.pass && c.pass;
        if (result.name.empty()) result.name = "scenario";
        return result;
    }

private:
    std::vector<std::pair<int, std::string>> statements_;

    // runtime state
    ChartPtr chart_;
    std::map<std::string, DifferentialForm> forms_;
    std::map<std::string, PiecewiseForm> pieces_;
    std::map<std::string, ScalarExpr> scalars_;
    Realizations reals_;
    std::map<std::string, ProfileFunction> profiles_;
    Point params_;
    std::vector<ProfileValue> anchors_;

    // ------------------------------------------------------------------ util
    static std::vector<std::string> words(const std::string& s) {
        std::istringstream is(s);
        std::vector<std::string> out;
        std::string w;
        while (is >> w) out.push_back(w);
        return out;
    }
    static std::map<std::string, std::string> keyvals(
        const std::vector<std::string>& ws, std::size_t from) {
        std::map<std::string, std::string> out;
        for (std::size_t i = from; i < ws.size(); ++i) {
            auto eq = ws[i].find('=');
            if (eq == std::string::npos)
                out[ws[i]] = "";
            else
                out[ws[i].substr(0, eq)] = ws[i].substr(eq + 1);
        }
        return out;
    }
    static std::vector<std::string> split(const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string cur;
        int depth = 0;
        for (char c : s) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == sep && depth == 0) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    }
    const DifferentialForm& form(const std::string& name) const {
        auto it = forms_.find(name);
        if (it == forms_.end()) throw Error("unknown form '" + name + "'");
        return it->second;
    }
    ScalarExpr scalar(const std::string& name) const {
        auto it = scalars_.find(name);
        if (it == scalars_.end()) throw Error("unknown scalar '" + name + "'");
        return it->second;
    }
    GridSpec grid_from(const std::map<std::string, std::string>& kv) const {
        GridSpec g;
        auto sweep = kv.find("sweep");
        if (sweep != kv.end()) {
            for (const auto& axis : split(sweep->second, ',')) {
                auto parts = split(axis, ':');
                if (parts.size() != 4) throw Error("sweep axis needs coord:lo:hi:n");
                g.axes.push_back({parts[0], std::stod(parts[1]), std::stod(parts[2]),
                                  std::stoi(parts[3])});
            }
        }
        auto fix = kv.find("fix");
        if (fix != kv.end()) {
            for (const auto& item : split(fix->second, ',')) {
                auto parts = split(item, ':');
                if (parts.size() != 2) throw Error("fix item needs coord:value");
                g.fixed[parts[0]] = std::stod(parts[1]);
            }
        }
        for (const auto& [k, v] : params_) g.fixed.emplace(k, v);
        return g;
    }

    // ------------------------------------------------------------- execution
    void execute(const std::string& stmt, ScenarioResult& result) {
        auto ws = words(stmt);
        const std::string& head = ws[0];
        if (head == "scenario") {
            result.name = ws.at(1);
        } else if (head == "chart") {
            declare_chart(ws);
        } else if (head == "domain") {
            require_chart();
            auto c = std::make_shared<Chart>(*chart_);
            bool periodic = ws.size() > 4 && ws[4] == "periodic";
            c->set_domain(ws.at(1),
                          {std::stod(ws.at(2)), std::stod(ws.at(3)), periodic});
            rebind_chart(c);
        } else if (head == "symbol") {
            require_chart();
            auto c = std::make_shared<Chart>(*chart_);
            std::vector<std::string> deps(ws.begin() + 3, ws.end());
            if (ws.at(2) != "on") throw Error("expected: symbol NAME on COORDS...");
            c->declare_function(ws.at(1), deps);
            rebind_chart(c);
        } else if (head == "profile") {
            declare_profile(ws);
        } else if (head == "partial") {
            declare_partial(ws);
        } else if (head == "param") {
            params_[ws.at(1)] = std::stod(ws.at(2));
        } else if (head == "form" || head == "scalar" || head == "build" ||
                   head == "piecewise") {
            auto eq = stmt.find('=');
            if (eq == std::string::npos) throw Error("expected '=' in declaration");
            std::string name = ws.at(1);
            std::string rhs = stmt.substr(eq + 1);
            if (head == "form")
                forms_.emplace(name, eval_form_rhs(rhs));
            else if (head == "scalar")
                scalars_.emplace(name, eval_scalar_rhs(rhs));
            else
                eval_build_rhs(head, name, rhs);
        } else if (head == "check") {
            result.checks.push_back(run_check(ws, stmt));
        } else {
            throw Error("unknown statement '" + head + "'");
        }
    }

    void require_chart() const {
        if (!chart_) throw Error("no chart declared");
    }
    void declare_chart(const std::vector<std::string>& ws) {
        std::vector<std::string> names;
        int orientation = 1;
        for (std::size_t i = 1; i < ws.size(); ++i) {
            if (ws[i].rfind("orientation=", 0) == 0)
                orientation = std::stoi(ws[i].substr(12));
            else
                names.push_back(ws[i]);
        }
        chart_ = make_chart(names, orientation);
    }
    void rebind_chart(const std::shared_ptr<Chart>& c) {
        chart_ = c;
        if (!forms_.empty())
            throw Error("chart must be fully declared before forms");
    }

    void declare_profile(const std::vector<std::string>& ws) {
        std::string name = ws.at(1);
        auto kv = keyvals(ws, 2);
        ProfileParams pp;
        std::string kind = kv.count("kind") ? kv["kind"] : name;
        if (kv.count("epsilon")) pp.epsilon = std::stod(kv["epsilon"]);
        if (kv.count("R")) pp.R = std::stod(kv["R"]);
        if (kv.count("model")) pp.use_local_model = true;
        ProfileFunction p = make_profile(kind, pp);
        p.name = name;
        if (kv.count("skew")) {
            // fault injection for negative controls: offset the realization
            double skew = std::stod(kv["skew"]);
            auto base = p.jets;
            p.jets = [base, skew](double x) { return base(x) + Jet2::constant(skew); };
        }
        profiles_[name] = p;
        reals_.add(p);
        auto av = p.anchor_values();
        anchors_.insert(anchors_.end(), av.begin(), av.end());
        // the disk pair brings its quotient profile along
        if (kind == "h2") {
            ProfileFunction w2 = make_profile("w2", pp);
            profiles_["w2"] = w2;
            reals_.add(w2);
            auto wv = w2.anchor_values();
            anchors_.insert(anchors_.end(), wv.begin(), wv.end());
        }
    }

    void declare_partial(const std::vector<std::string>& ws) {
        // partial NAME linear coord=coef coord=coef ...
        std::string name = ws.at(1);
        if (ws.at(2) != "linear") throw Error("only 'partial NAME linear ...' supported");
        std::map<std::string, double> coefs;
        for (auto& [k, v] : keyvals(ws, 3)) coefs[k] = std::stod(v);
        reals_.add_partial(name, [coefs](const std::vector<std::string>& index,
                                         const Point& pt) {
            if (index.empty()) {
                double s = 0;
                for (const auto& [c, w] : coefs) s += w * pt.at(c);
                return s;
            }
            if (index.size() == 1) {
                auto it = coefs.find(index[0]);
                return it == coefs.end() ? 0.0 : it->second;
            }
            return 0.0;
        });
    }

    // form RHS: TEXT | d(N) | star(N) | tau(N) | wedge(A,B,...) |
    //           at(N, bindings) | pullback(N, bindings) | region(PW, NAME)
    DifferentialForm eval_form_rhs(const std::string& rhs) {
        std::string s = trim(rhs);
        auto call = parse_call(s);
        if (call) {
            const auto& [fn, args] = *call;
            if (fn == "d") return exterior_derivative(form(trim(args.at(0))));
            if (fn == "star") return hodge_star(form(trim(args.at(0))));
            if (fn == "tau") return tau_form(form(trim(args.at(0))));
            if (fn == "wedge") {
                DifferentialForm acc = form(trim(args.at(0)));
                for (std::size_t i = 1; i < args.size(); ++i)
                    acc = wedge_product(acc, form(trim(args[i])));
                return acc;
            }
            if (fn == "at" || fn == "pullback") {
                const DifferentialForm& base = form(trim(args.at(0)));
                std::map<std::string, ScalarExpr> coords;
                std::vector<ProfileValue> jets;
                parse_bindings(args, 1, coords, jets);
                DifferentialForm out = fn == "at" ? substitute_coefficients(base, coords)
                                                  : substitute(base, coords);
                return bind_profile_values(out, jets);
            }
            if (fn == "region") {
                return piece(trim(args.at(0))).region(trim(args.at(1))).form;
            }
        }
        require_chart();
        return parse_form(s, chart_, /*strict=*/false);
    }

    ScalarExpr eval_scalar_rhs(const std::string& rhs) {
        std::string s = trim(rhs);
        auto call = parse_call(s);
        if (call) {
            const auto& [fn, args] = *call;
            if (fn == "defect") return contact_defect(form(trim(args.at(0))));
            if (fn == "top") return top_coefficient(form(trim(args.at(0))));
            if (fn == "coeff") {
                std::vector<std::string> coords;
                for (std::size_t i = 1; i < args.size(); ++i)
                    coords.push_back(trim(args[i]));
                return form(trim(args.at(0))).coefficient(coords);
            }
            if (fn == "at") {
                ScalarExpr base = scalar(trim(args.at(0)));
                std::map<std::string, ScalarExpr> coords;
                std::vector<ProfileValue> jets;
                parse_bindings(args, 1, coords, jets);
                return base.substitute(coords).bind_profile_values(jets);
            }
        }
        return parse_scalar(s, chart_, /*strict=*/false);
    }

    void eval_build_rhs(const std::string& head, const std::string& name,
                        const std::string& rhs) {
        auto call = parse_call(trim(rhs));
        if (!call) throw Error("builder invocation expected");
        const auto& [fn, args] = *call;
        auto kv = call_kv(args);
        auto need = [&](const char* p) -> const ProfileFunction& {
            auto it = profiles_.find(p);
            if (it == profiles_.end())
                throw Error(std::string("builder needs profile '") + p + "'");
            return it->second;
        };
        ContactModel nu = darboux_model("x1", "y1", "z1");
        ContactModel lam = darboux_model("x2", "y2", "z2");
        if (head == "build") {
            BuiltForm b;
            if (fn == "fold_circle")
                b = fold_circle_form(lam, need("f"), need("g"));
            else if (fn == "product_fold")
                b = product_fold_form(nu, lam, need("f"), need("g"), need("h1"),
                                      need("h2"));
            else if (fn == "binding_extension")
                b = binding_extension(nu, need("h1"), need("h2"),
                                      kv.count("l") ? Rational(std::stol(kv["l"]))
                                                    : Rational(1));
            else if (fn == "open_book")
                b = open_book_form(need("u"),
                                   kv.count("l") ? Rational(std::stol(kv["l"]))
                                                 : Rational(1),
                                   kv.count("R") ? std::stod(kv["R"]) : 10);
            else if (fn == "exact_bundle") {
                std::string variant = kv.count("variant") ? kv["variant"] : "21";
                BundleVariant v = variant == "11"   ? BundleVariant::ProductBase11
                                  : variant == "collar" ? BundleVariant::LongCollar21
                                                        : BundleVariant::ProductBase21;
                b = exact_bundle_form(v, need("u"));
            } else {
                throw Error("unknown builder '" + fn + "'");
            }
            if (!chart_) chart_ = b.chart;
            forms_.emplace(name, b.form);
        } else {  // piecewise
            if (fn == "swap_collar")
                pieces_.emplace(name, concave_collar_forms(CollarVariant::Swap));
            else if (fn == "four_part_collar")
                pieces_.emplace(name, concave_collar_forms(CollarVariant::FourPart));
            else if (fn == "asymmetric_scale") {
                BuiltForm tilde = product_fold_form(nu, lam, need("f"), need("g"),
                                                    need("h1"), need("h2"));
                pieces_.emplace(name, asymmetric_scale(tilde, need("k")));
            } else {
                throw Error("unknown piecewise builder '" + fn + "'");
            }
            if (!chart_) chart_ = pieces_.at(name).chart;
        }
    }

    const PiecewiseForm& piece(const std::string& name) const {
        auto it = pieces_.find(name);
        if (it == pieces_.end()) throw Error("unknown piecewise form '" + name + "'");
        return it->second;
    }

    // ---------------------------------------------------------------- checks
    CheckOutcome run_check(const std::vector<std::string>& ws, const std::string& stmt) {
        CheckOutcome out;
        const std::string& kind = ws.at(1);
        out.kind = kind;
        out.name = stmt.substr(stmt.find(kind));
        if (kind == "equal_forms") {
            out.pass = form(ws.at(2)) == form(ws.at(3));
            if (!out.pass)
                out.notes.push_back("difference: " +
                                    (form(ws.at(2)) - form(ws.at(3))).str());
        } else if (kind == "equal_scalars") {
            out.pass = scalar(ws.at(2)) == scalar(ws.at(3));
            if (!out.pass)
                out.notes.push_back("difference: " +
                                    (scalar(ws.at(2)) - scalar(ws.at(3))).str());
        } else if (kind == "zero_scalar") {
            out.pass = scalar(ws.at(2)).is_zero();
            if (!out.pass) out.notes.push_back("value: " + scalar(ws.at(2)).str());
        } else if (kind == "contact" || kind == "confoliation") {
            auto kv = keyvals(ws, 3);
            GridSpec grid = grid_from(kv);
            double tol = kv.count("tol") ? std::stod(kv["tol"]) : default_tol();
            auto rep = check_contact(form(ws.at(2)), grid, tol, reals_,
                                     kind == "contact" ? PositivityMode::Contact
                                                       : PositivityMode::Confoliation);
            out.pass = rep.pass;
            out.values = rep.values;
        } else if (kind == "singular") {
            std::string name = out.name;
            out = check_singular(ws);
            out.name = name;
        } else if (kind == "nullity") {
            std::string name = out.name;
            out = check_nullity(ws);
            out.name = name;
        } else if (kind == "rank") {
            std::string name = out.name;
            out = check_rank(ws);
            out.name = name;
        } else if (kind == "profile") {
            auto it = profiles_.find(ws.at(2));
            if (it == profiles_.end()) throw Error("unknown profile '" + ws.at(2) + "'");
            auto kv = keyvals(ws, 3);
            int grid = kv.count("grid") ? std::stoi(kv["grid"]) : 200;
            auto rs = validate_profile(it->second, grid);
            out.pass = all_pass(rs);
            for (const auto& r : rs)
                if (!r.pass) out.notes.push_back("failed: " + r.name);
            out.values["constraints"] = static_cast<double>(rs.size());
        } else if (kind == "pair") {
            auto kv = keyvals(ws, 4);
            std::string pk = kv.count("kind") ? kv["kind"] : "fold";
            auto rs = pk == "fold"
                          ? validate_fold_pair(profiles_.at(ws.at(2)),
                                               profiles_.at(ws.at(3)))
                          : validate_binding_pair(profiles_.at(ws.at(2)),
                                                  profiles_.at(ws.at(3)));
            out.pass = all_pass(rs);
            if (!rs.empty()) out.values["margin"] = rs[0].margin;
        } else if (kind == "piecewise") {
            const PiecewiseForm& pw = piece(ws.at(2));
            out.pass = true;
            for (const auto& r : pw.check_seams()) {
                out.pass = out.pass && r.pass;
                if (!r.pass) out.notes.push_back(r.name + ": " + r.detail);
            }
            for (const auto& r : pw.check_boundaries()) {
                out.pass = out.pass && r.pass;
                if (!r.pass) out.notes.push_back(r.name + ": " + r.detail);
            }
        } else if (kind == "region_contact") {
            // check region_contact PW REGION sweep=... fix=... tol=...
            const PiecewiseForm& pw = piece(ws.at(2));
            const Region& region = pw.region(ws.at(3));
            auto kv = keyvals(ws, 4);
            GridSpec grid = grid_from(kv);
            // clip declared bound coordinates into the region
            for (const auto& [coord, range] : region.bounds) {
                bool swept = false;
                for (auto& a : grid.axes)
                    if (a.coord == coord) {
                        a.lo = std::max(a.lo, range.first);
                        a.hi = std::min(a.hi, range.second);
                        swept = true;
                    }
                if (!swept && !grid.fixed.count(coord))
                    grid.fixed[coord] = (range.first + range.second) / 2;
            }
            double tol = kv.count("tol") ? std::stod(kv["tol"]) : default_tol();
            auto rep = check_contact(region.form, grid, tol, reals_);
            out.pass = rep.pass;
            out.values = rep.values;
        } else {
            throw Error("unknown check kind '" + kind + "'");
        }
        return out;
    }

    CheckOutcome check_singular(const std::vector<std::string>& ws) {
        CheckOutcome out;
        out.kind = "singular";
        auto kv = keyvals(ws, 3);
        GridSpec grid = grid_from(kv);
        double tol = kv.count("tol") ? std::stod(kv["tol"]) : default_tol();
        std::vector<std::pair<std::string, std::string>> radial;
        if (kv.count("radial")) {
            auto parts = split(kv["radial"], ',');
            radial.emplace_back(parts.at(0), parts.at(1));
        }
        SingularLocus loc = singular_locus(form(ws.at(2)), grid, tol, reals_, radial);
        out.values["samples"] = static_cast<double>(loc.samples.size());
        out.pass = true;
        if (kv.count("expect_nonempty")) out.pass = out.pass && !loc.samples.empty();
        if (kv.count("expect_empty")) out.pass = out.pass && loc.samples.empty();
        for (const auto& [key, mx] : loc.pinned) out.values["max_" + key] = mx;
        if (kv.count("expect_pinned")) {
            for (const auto& item : split(kv["expect_pinned"], ',')) {
                auto pos = item.rfind(':');
                std::string coord = item.substr(0, pos);
                double bound = std::stod(item.substr(pos + 1));
                out.pass = out.pass && loc.pinned.count(coord) &&
                           loc.pinned.at(coord) < bound && !loc.samples.empty();
            }
        }
        if (kv.count("expect_unpinned")) {
            for (const auto& item : split(kv["expect_unpinned"], ',')) {
                auto pos = item.rfind(':');
                std::string coord = item.substr(0, pos);
                double bound = std::stod(item.substr(pos + 1));
                out.pass = out.pass && loc.pinned.count(coord) &&
                           loc.pinned.at(coord) > bound;
            }
        }
        return out;
    }

    CheckOutcome check_nullity(const std::vector<std::string>& ws) {
        // check nullity FORM samples=100 tol=1e-8 radial=x,y range=0.01:1
        //      span=z1,z2,y1,y2 fix=t1:0 seed=7
        CheckOutcome out;
        out.kind = "nullity";
        const DifferentialForm& eta = form(ws.at(2));
        auto kv = keyvals(ws, 3);
        int samples = kv.count("samples") ? std::stoi(kv["samples"]) : 100;
        double tol = kv.count("tol") ? std::stod(kv["tol"]) : 1e-8;
        auto radial = split(kv.at("radial"), ',');
        auto range = split(kv.count("range") ? kv["range"] : "0.01:1", ':');
        double rlo = std::stod(range.at(0)), rhi = std::stod(range.at(1));
        std::vector<std::string> span;
        if (kv.count("span")) span = split(kv["span"], ',');
        Point fixed;
        if (kv.count("fix"))
            for (const auto& item : split(kv["fix"], ',')) {
                auto parts = split(item, ':');
                fixed[parts.at(0)] = std::stod(parts.at(1));
            }
        unsigned seed = kv.count("seed") ? std::stoul(kv["seed"]) : 7;
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> unit(-1, 1);
        std::uniform_real_distribution<double> angle(0, 2 * M_PI);
        const Chart& chart = eta.chart();
        auto path = [&](double s) {
            PathSample ps;
            double r = rlo + (rhi - rlo) * s;
            double phi = angle(rng);
            for (const auto& nm : chart.names()) ps.point[nm] = unit(rng);
            ps.point[radial.at(0)] = r * std::cos(phi);
            ps.point[radial.at(1)] = r * std::sin(phi);
            for (const auto& [k, v] : fixed) ps.point[k] = v;
            ps.tangent = {{radial.at(0), std::cos(phi)}, {radial.at(1), std::sin(phi)}};
            return ps;
        };
        auto rep = accessibility_check(eta, path, samples, tol, reals_, span);
        out.pass = rep.pass;
        out.values = rep.values;
        return out;
    }

    CheckOutcome check_rank(const std::vector<std::string>& ws) {
        // check rank FORM at=x:0,y:0,... expect=4
        CheckOutcome out;
        out.kind = "rank";
        auto kv = keyvals(ws, 3);
        Point p = params_;
        for (const auto& item : split(kv.at("at"), ',')) {
            auto parts = split(item, ':');
            p[parts.at(0)] = std::stod(parts.at(1));
        }
        int rank = rank_on_kernel(form(ws.at(2)), p, reals_);
        out.values["rank"] = rank;
        out.pass = !kv.count("expect") || rank == std::stoi(kv["expect"]);
        return out;
    }

    static double default_tol() {
        if (const char* env = std::getenv("WEDGE_TOL")) return std::atof(env);
        return 1e-9;
    }

    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        if (b == std::string::npos) return "";
        return s.substr(b, e - b + 1);
    }

    // NAME(arg, arg, ...) with the whole string consumed
    static std::optional<std::pair<std::string, std::vector<std::string>>> parse_call(
        const std::string& s) {
        auto open = s.find('(');
        if (open == std::string::npos || s.empty() || s.back() != ')') return {};
        std::string fn = trim(s.substr(0, open));
        for (char c : fn)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return {};
        static const char* known[] = {"d",      "star", "tau",     "wedge",
                                      "at",     "pullback", "region",  "defect",
                                      "top",    "coeff", "fold_circle",
                                      "product_fold", "binding_extension",
                                      "open_book", "exact_bundle", "swap_collar",
                                      "four_part_collar", "asymmetric_scale"};
        bool ok = false;
        for (const char* k : known) ok |= (fn == k);
        if (!ok) return {};
        std::string inner = s.substr(open + 1, s.size() - open - 2);
        return std::make_pair(fn, split(inner, ','));
    }
    static std::map<std::string, std::string> call_kv(
        const std::vector<std::string>& args) {
        std::map<std::string, std::string> out;
        for (const auto& a : args) {
            auto eq = a.find('=');
            if (eq != std::string::npos)
                out[trim(a.substr(0, eq))] = trim(a.substr(eq + 1));
        }
        return out;
    }

    // binding items: coord=EXPR or name'(rat)=rat
    void parse_bindings(const std::vector<std::string>& args, std::size_t from,
                        std::map<std::string, ScalarExpr>& coords,
                        std::vector<ProfileValue>& jets) {
        for (std::size_t i = from; i < args.size(); ++i) {
            std::string item = trim(args[i]);
            auto eq = item.find('=');
            if (eq == std::string::npos) throw Error("binding needs '='");
            std::string lhs = trim(item.substr(0, eq));
            std::string rhs = trim(item.substr(eq + 1));
            auto paren = lhs.find('(');
            if (paren == std::string::npos) {
                coords.emplace(lhs, parse_scalar(rhs));
            } else {
                std::string head = lhs.substr(0, paren);
                int order = 0;
                while (!head.empty() && head.back() == '\'') {
                    ++order;
                    head.pop_back();
                }
                std::string argtext = lhs.substr(paren + 1, lhs.rfind(')') - paren - 1);
                jets.push_back({head, order, parse_scalar(argtext).as_rational(),
                                parse_scalar(rhs).as_rational()});
            }
        }
    }
};

inline int run_scenario_file(const std::string& path, const std::string& json_out = "",
                             bool quiet = false) {
    ScenarioResult result;
    try {
        Scenario sc = Scenario::parse_file(path);
        result = sc.run();
    } catch (const Error& e) {
        if (!quiet) std::fprintf(stderr, "scenario error: %s\n", e.what());
        return 2;
    }
    if (!quiet) {
        for (const auto& c : result.checks)
            std::printf("[%s] %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str());
        std::printf("%s: %zu checks, %s\n", result.name.c_str(), result.checks.size(),
                    result.pass ? "all passed" : "FAILURES");
    }
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << result.to_json().dump(2) << "\n";
    }
    return result.pass ? 0 : 1;
}

}  // namespace wedge
