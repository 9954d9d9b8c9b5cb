#pragma once

// Concrete smooth realizations of the interpolation profiles f, g, h1, h2
// (with w2 = h2(s)/s), u, k, g1, g2, plus machine-checkable constraint
// validators. Symbolic occurrences of a profile stay abstract; realizations
// enter only through numeric evaluation.
//
// Blends use the standard exp(-1/x) smooth step with a width parameter, so
// the exactly-prescribed boundary segments hold exactly (not approximately)
// on their declared sub-intervals. Disk profiles (h1, h2, w2) are stored as
// smooth functions of s = r^2 and composed with x^2+y^2 on Cartesian charts.

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wedge/error.hpp"
#include "wedge/parse.hpp"
#include "wedge/scalar.hpp"

namespace wedge {

// value with first and second derivative; enough for every numeric check
struct Jet2 {
    double v = 0, d1 = 0, d2 = 0;

    static Jet2 constant(double c) { return {c, 0, 0}; }
    static Jet2 var(double x) { return {x, 1, 0}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2 * a.d1 * b.d1 + a.v * b.d2};
}
inline Jet2 operator*(double c, const Jet2& a) { return Jet2::constant(c) * a; }
inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    double iv = 1.0 / b.v;
    Jet2 inv{iv, -b.d1 * iv * iv, (2 * b.d1 * b.d1 - b.v * b.d2) * iv * iv * iv};
    return a * inv;
}
inline Jet2 jexp(const Jet2& a) {
    double e = std::exp(a.v);
    return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}
inline Jet2 jsqrt(const Jet2& a) {
    double s = std::sqrt(a.v);
    return {s, a.d1 / (2 * s), a.d2 / (2 * s) - a.d1 * a.d1 / (4 * s * s * s)};
}

// exp(-1/x) for x > 0, identically 0 for x <= 0
inline Jet2 jflat(const Jet2& x) {
    if (x.v <= 0 || 1.0 / x.v > 700) return {0, 0, 0};
    Jet2 minv{-1.0 / x.v, x.d1 / (x.v * x.v),
              x.d2 / (x.v * x.v) - 2 * x.d1 * x.d1 / (x.v * x.v * x.v)};
    return jexp(minv);
}

// smooth step: 0 for x <= 0, 1 for x >= 1, strictly increasing between
inline Jet2 jstep(const Jet2& x) {
    if (x.v <= 0) return {0, 0, 0};
    if (x.v >= 1) return {1, 0, 0};
    Jet2 a = jflat(x);
    Jet2 b = jflat(Jet2::constant(1) - x);
    return a / (a + b);
}

// a + (b-a) * step((x-x0)/w): equals a for x <= x0, b for x >= x0+w
inline Jet2 jblend(const Jet2& a, const Jet2& b, double x0, double w, const Jet2& x) {
    Jet2 s = jstep((x - Jet2::constant(x0)) * Jet2::constant(1.0 / w));
    return a + s * (b - a);
}

struct ExactSegment {
    double lo, hi;
    std::optional<ScalarExpr> sym;      // in the profile's formal variable
    std::function<double(double)> ref;  // numeric reference for validation
};

struct JetAnchor {
    Rational arg;
    int order;
    Rational value;
};

struct ConstraintResult {
    std::string name;
    bool pass = false;
    double margin = 0;     // strict-inequality clearance, or max violation
    double worst_arg = 0;  // sample where the margin is attained
    std::string note;
};

struct ProfileParams {
    double epsilon = 0.1;
    double R = 10;
    double width = 0.1;
    bool use_local_model = false;  // realize by the polynomial local model
};

class ProfileFunction {
public:
    std::string name;        // symbol used in expressions
    std::string kind;        // f, g, h1, h2, w2, u, k, g1, g2
    std::string formal_var;  // t, s or phi
    double lo = 0, hi = 0;
    std::function<Jet2(double)> jets;
    std::vector<ExactSegment> segments;
    std::vector<JetAnchor> anchors;
    std::vector<double> seams;  // blend boundaries for smoothness checks
    std::optional<LocalModel> local_model;
    ProfileParams params;

    double value(double x) const { return jets(x).v; }
    double deriv(double x, int order) const {
        Jet2 j = jets(x);
        switch (order) {
            case 0: return j.v;
            case 1: return j.d1;
            case 2: return j.d2;
            default:
                throw EvalError("profile '" + name + "': derivative order " +
                                std::to_string(order) + " not realized");
        }
    }

    // symbolic jet bindings at declared anchors, e.g. f(0)->1, f'(0)->0
    std::vector<ProfileValue> anchor_values() const {
        std::vector<ProfileValue> out;
        for (const auto& a : anchors) out.push_back({name, a.order, a.arg, a.value});
        return out;
    }
};

namespace detail {

inline std::function<Jet2(double)> model_jets(const LocalModel& model) {
    ScalarExpr e0 = model.expr;
    ScalarExpr e1 = e0.diff(model.var);
    ScalarExpr e2 = e1.diff(model.var);
    std::string var = model.var;
    return [e0, e1, e2, var](double x) {
        std::map<std::string, double> pt{{var, x}};
        EvalContext ctx;
        ctx.point = &pt;
        return Jet2{e0.eval(ctx), e1.eval(ctx), e2.eval(ctx)};
    };
}

}  // namespace detail

// ---------------------------------------------------------------------------
// builders for the individual kinds

inline ProfileFunction make_profile(const std::string& kind, ProfileParams params = {});

namespace detail {

inline ProfileFunction make_f(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "f";
    p.kind = "f";
    p.formal_var = "t";
    p.lo = -1.5;
    p.hi = 1.5;
    p.params = params;
    const double delta = 0.3;
    // f = exp(-s), s(t) = |t| * step(|t|/delta): even, flat at 0, exactly
    // e^{-|t|} for |t| >= delta, increasing on [-1,0]
    p.jets = [delta](double t) {
        if (t == 0) return Jet2{1, 0, 0};
        double a = std::abs(t);
        Jet2 aj = Jet2::var(a);
        Jet2 s = aj * jstep(aj * Jet2::constant(1.0 / delta));
        Jet2 f = jexp(Jet2::constant(0) - s);
        if (t < 0) return Jet2{f.v, -f.d1, f.d2};
        return f;
    };
    p.segments.push_back({delta, 100.0, parse_scalar("exp(-t)"),
                          [](double t) { return std::exp(-t); }});
    p.segments.push_back({-100.0, -delta, parse_scalar("exp(t)"),
                          [](double t) { return std::exp(t); }});
    p.anchors = {{Rational(0), 0, Rational(1)}, {Rational(0), 1, Rational(0)}};
    p.seams = {-delta, 0.0, delta};
    return p;
}

inline ProfileFunction make_g(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "g";
    p.kind = "g";
    p.formal_var = "t";
    p.lo = -1.5;
    p.hi = 1.5;
    p.params = params;
    const double a = 0.5, w = 0.4;  // -t on [0,a], plateau -1 beyond a+w
    p.jets = [a, w](double t) {
        double x = std::abs(t);
        Jet2 xj = Jet2::var(x);
        Jet2 q = jblend(Jet2{-x, -1, 0}, Jet2::constant(-1), a, w, xj);
        if (t < 0) return Jet2{-q.v, q.d1, -q.d2};
        return q;
    };
    p.segments.push_back({-a, a, parse_scalar("-t"), [](double t) { return -t; }});
    p.segments.push_back({a + w, 100.0, parse_scalar("-1"), [](double) { return -1.0; }});
    p.segments.push_back({-100.0, -(a + w), parse_scalar("1"), [](double) { return 1.0; }});
    p.anchors = {{Rational(0), 0, Rational(0)}, {Rational(0), 1, Rational(-1)}};
    p.seams = {-(a + w), -a, a, a + w};
    return p;
}

inline ProfileFunction make_h1(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "h1";
    p.kind = "h1";
    p.formal_var = "s";  // s = r^2
    p.lo = 0;
    p.hi = std::max(4.0, params.R * params.R);
    p.params = params;
    p.local_model = LocalModel{"s", parse_scalar("2-s^2")};
    if (params.use_local_model) {
        p.jets = model_jets(*p.local_model);
    } else {
        // 2 - exp(-1/s) blended into e^{1-sqrt(s)}; strictly decreasing, all
        // derivatives vanish at s=0, exactly e^{1-r} for r >= 0.9
        p.jets = [](double s) {
            if (s <= 0) return Jet2{2, 0, 0};
            Jet2 sj = Jet2::var(s);
            Jet2 left = Jet2::constant(2) - jflat(sj);
            Jet2 right = jexp(Jet2::constant(1) - jsqrt(sj));
            return jblend(left, right, 0.5, 0.31, sj);
        };
        p.segments.push_back({0.81, 1e9, std::nullopt,
                              [](double s) { return std::exp(1 - std::sqrt(s)); }});
    }
    p.anchors = {{Rational(0), 0, Rational(2)}, {Rational(0), 1, Rational(0)}};
    p.seams = {0.5, 0.81};
    return p;
}

inline ProfileFunction make_h2(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "h2";
    p.kind = "h2";
    p.formal_var = "s";
    p.lo = 0;
    p.hi = std::max(4.0, params.R * params.R);
    p.params = params;
    p.local_model = LocalModel{"s", parse_scalar("s")};
    if (params.use_local_model) {
        p.jets = model_jets(*p.local_model);
    } else {
        p.jets = [](double s) {
            Jet2 sj = Jet2::var(s);
            return jblend(sj, Jet2::constant(1), 0.3, 0.4, sj);
        };
        p.segments.push_back({0.0, 0.3, parse_scalar("s"), [](double s) { return s; }});
        p.segments.push_back({0.7, 1e9, parse_scalar("1"), [](double) { return 1.0; }});
    }
    p.anchors = {{Rational(0), 0, Rational(0)}, {Rational(0), 1, Rational(1)}};
    p.seams = {0.3, 0.7};
    return p;
}

// w2(s) = h2(s)/s, smooth through s=0 (h2 = s exactly near 0)
inline ProfileFunction make_w2(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "w2";
    p.kind = "w2";
    p.formal_var = "s";
    p.lo = 0;
    p.hi = std::max(4.0, params.R * params.R);
    p.params = params;
    p.local_model = LocalModel{"s", parse_scalar("1")};
    if (params.use_local_model) {
        p.jets = model_jets(*p.local_model);
    } else {
        ProfileFunction h2 = make_h2(params);
        auto h2j = h2.jets;
        p.jets = [h2j](double s) {
            if (s <= 0.25) return Jet2{1, 0, 0};
            return h2j(s) / Jet2::var(s);
        };
    }
    p.anchors = {{Rational(0), 0, Rational(1)}, {Rational(0), 1, Rational(0)}};
    p.seams = {0.25, 0.3, 0.7};
    return p;
}

inline ProfileFunction make_u(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "u";
    p.kind = "u";
    p.formal_var = "phi";
    p.lo = 0;
    const double eps = params.epsilon;
    const double len = 2 * M_PI * params.R;
    if (len <= 4 * eps) throw Error("u profile: circle too short for epsilon");
    p.hi = len;
    p.params = params;
    p.jets = [eps, len](double phi) {
        Jet2 x = (Jet2::var(phi) - Jet2::constant(eps)) *
                 Jet2::constant(1.0 / (len - 2 * eps));
        return jstep(x);
    };
    p.segments.push_back({0, eps, parse_scalar("0"), [](double) { return 0.0; }});
    p.segments.push_back({len - eps, len, parse_scalar("1"), [](double) { return 1.0; }});
    p.seams = {eps, len - eps};
    return p;
}

// collar variant of u on [-1, 0]: 0 near -1, 1 near 0
inline ProfileFunction make_u_collar(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "u";
    p.kind = "u_collar";
    p.formal_var = "v";
    p.lo = -1;
    p.hi = 0;
    p.params = params;
    const double eps = params.epsilon;
    p.jets = [eps](double v) {
        Jet2 x = (Jet2::var(v) + Jet2::constant(1 - eps)) *
                 Jet2::constant(1.0 / (1 - 2 * eps));
        return jstep(x);
    };
    p.segments.push_back({-1, -1 + eps, parse_scalar("0"), [](double) { return 0.0; }});
    p.segments.push_back({-eps, 0, parse_scalar("1"), [](double) { return 1.0; }});
    p.seams = {-1 + eps, -eps};
    return p;
}

inline ProfileFunction make_k(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "k";
    p.kind = "k";
    p.formal_var = "t";
    const double eps = params.epsilon;
    p.lo = -1 - eps;
    p.hi = 1 + eps;
    p.params = params;
    p.jets = [eps](double t) {
        Jet2 tj = Jet2::var(t);
        Jet2 inner = jblend(Jet2::constant(std::exp(-1.0)), jexp(tj), -1, eps, tj);
        return jblend(inner, Jet2::constant(std::exp(1.0)), 1 - eps, eps, tj);
    };
    p.segments.push_back({-2, -1, parse_scalar("exp(-1)"),
                          [](double) { return std::exp(-1.0); }});
    p.segments.push_back({-1 + eps, 1 - eps, parse_scalar("exp(t)"),
                          [](double t) { return std::exp(t); }});
    p.segments.push_back({1, 2, parse_scalar("exp(1)"),
                          [](double) { return std::exp(1.0); }});
    p.anchors = {{Rational(0), 0, Rational(1)}, {Rational(0), 1, Rational(1)}};
    p.seams = {-1, -1 + eps, 1 - eps, 1};
    return p;
}

inline ProfileFunction make_g1(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "g1";
    p.kind = "g1";
    p.formal_var = "t";
    p.lo = -1;
    p.hi = -0.45;
    p.params = params;
    p.jets = [](double t) {
        Jet2 tj = Jet2::var(t);
        return jblend(Jet2::constant(1), jexp(tj), -0.8, 0.25, tj);
    };
    p.segments.push_back({-1, -0.8, parse_scalar("1"), [](double) { return 1.0; }});
    p.segments.push_back({-0.55, -0.45, parse_scalar("exp(t)"),
                          [](double t) { return std::exp(t); }});
    p.seams = {-0.8, -0.55};
    return p;
}

inline ProfileFunction make_g2(const ProfileParams& params) {
    ProfileFunction p;
    p.name = "g2";
    p.kind = "g2";
    p.formal_var = "t";
    p.lo = 0.45;
    p.hi = 1;
    p.params = params;
    p.jets = [](double t) {
        Jet2 tj = Jet2::var(t);
        return jblend(jexp(Jet2::constant(0) - tj), Jet2::constant(1), 0.55, 0.25, tj);
    };
    p.segments.push_back({0.45, 0.55, parse_scalar("exp(-t)"),
                          [](double t) { return std::exp(-t); }});
    p.segments.push_back({0.8, 1, parse_scalar("1"), [](double) { return 1.0; }});
    p.seams = {0.55, 0.8};
    return p;
}

}  // namespace detail

inline ProfileFunction make_profile(const std::string& kind, ProfileParams params) {
    if (params.epsilon <= 0 || params.epsilon >= 0.25)
        throw Error("profile params: need 0 < epsilon < 1/4");
    if (params.R < 1) throw Error("profile params: need R >= 1");
    if (kind == "f") return detail::make_f(params);
    if (kind == "g") return detail::make_g(params);
    if (kind == "h1") return detail::make_h1(params);
    if (kind == "h2") return detail::make_h2(params);
    if (kind == "w2") return detail::make_w2(params);
    if (kind == "u") return detail::make_u(params);
    if (kind == "u_collar") return detail::make_u_collar(params);
    if (kind == "k") return detail::make_k(params);
    if (kind == "g1") return detail::make_g1(params);
    if (kind == "g2") return detail::make_g2(params);
    throw Error("unknown profile kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// validation

namespace detail {

inline void sample_grid(double lo, double hi, int grid, std::vector<double>& out) {
    out.clear();
    for (int i = 0; i <= grid; ++i) out.push_back(lo + (hi - lo) * i / grid);
}

}  // namespace detail

inline std::vector<ConstraintResult> validate_profile(const ProfileFunction& p,
                                                      int grid = 200) {
    if (grid < 2) throw Error("validation grid must have at least 2 points");
    std::vector<ConstraintResult> out;
    std::vector<double> xs;
    detail::sample_grid(p.lo, p.hi, grid, xs);

    // declared exact segments hold exactly (to double round-off)
    for (const auto& seg : p.segments) {
        ConstraintResult r;
        r.name = p.name + ": exact segment [" + std::to_string(seg.lo) + "," +
                 std::to_string(seg.hi) + "]";
        double worst = 0, wx = seg.lo;
        double lo = std::max(seg.lo, p.lo), hi = std::min(seg.hi, p.hi);
        for (int i = 0; i <= grid; ++i) {
            double x = lo + (hi - lo) * i / grid;
            double err = std::abs(p.value(x) - seg.ref(x));
            if (err > worst) {
                worst = err;
                wx = x;
            }
        }
        r.margin = worst;
        r.worst_arg = wx;
        r.pass = worst < 1e-12;
        out.push_back(r);
    }

    // jet anchors
    for (const auto& a : p.anchors) {
        ConstraintResult r;
        r.name = p.name + ": anchor order " + std::to_string(a.order) + " at " +
                 rational_str(a.arg);
        double x = static_cast<double>(a.arg.convert_to<double>());
        double err = std::abs(p.deriv(x, a.order) - a.value.convert_to<double>());
        r.margin = err;
        r.worst_arg = x;
        r.pass = err < 1e-12;
        out.push_back(r);
    }

    // second derivative continuous across blend seams (jets are analytic, so
    // a tiny straddle isolates a genuine jump from smooth variation)
    {
        ConstraintResult r;
        r.name = p.name + ": d2 continuity at seams";
        double worst = 0, wx = p.lo;
        const double h = 1e-7;
        for (double s : p.seams) {
            if (s - h < p.lo || s + h > p.hi) continue;
            double jump = std::abs(p.jets(s + h).d2 - p.jets(s - h).d2);
            double scale = 1 + std::abs(p.jets(s).d2);
            if (jump / scale > worst) {
                worst = jump / scale;
                wx = s;
            }
        }
        r.margin = worst;
        r.worst_arg = wx;
        r.pass = worst < 1e-6;
        out.push_back(r);
    }

    auto scan = [&](const std::string& label, auto&& fn, bool strict) {
        ConstraintResult r;
        r.name = p.name + ": " + label;
        double worst = std::numeric_limits<double>::infinity(), wx = p.lo;
        for (double x : xs) {
            double v = fn(x);
            if (v < worst) {
                worst = v;
                wx = x;
            }
        }
        r.margin = worst;
        r.worst_arg = wx;
        r.pass = strict ? worst > 0 : worst >= -1e-12;
        out.push_back(r);
    };

    if (p.kind == "f") {
        scan("positive", [&](double x) { return p.value(x); }, true);
        scan("even to 1e-12",
             [&](double x) { return 1e-12 - std::abs(p.value(x) - p.value(-x)); }, false);
        scan("increasing on [-1,0]",
             [&](double x) { return x <= 0 ? p.deriv(x, 1) : 1.0; }, false);
    } else if (p.kind == "g") {
        scan("odd to 1e-12",
             [&](double x) { return 1e-12 - std::abs(p.value(x) + p.value(-x)); }, false);
        scan("nonincreasing", [&](double x) { return -p.deriv(x, 1); }, false);
        scan("strictly decreasing at 0", [&](double) { return -p.deriv(0, 1); }, true);
    } else if (p.kind == "h1") {
        scan("strictly decreasing for s>0",
             [&](double x) { return x > 1e-3 ? -p.deriv(x, 1) : 1.0; }, true);
        scan("positive up to s=1", [&](double x) { return x <= 1 ? p.value(x) : 1.0; },
             true);
    } else if (p.kind == "h2") {
        scan("nondecreasing", [&](double x) { return p.deriv(x, 1); }, false);
        // h2(s)/s -> 1 (i.e. h2(r)/r^2 -> 1)
        ConstraintResult r;
        r.name = p.name + ": h2(s)/s -> 1 at 0";
        r.margin = std::abs(p.value(1e-6) / 1e-6 - 1);
        r.pass = r.margin < 1e-9;
        out.push_back(r);
    } else if (p.kind == "w2") {
        scan("positive", [&](double x) { return p.value(x); }, true);
    } else if (p.kind == "u" || p.kind == "u_collar") {
        scan("nondecreasing", [&](double x) { return p.deriv(x, 1); }, false);
        ConstraintResult r;
        r.name = p.name + ": sup|u'| <= C/R, C = 0.5";
        double worst = 0, wx = p.lo;
        for (double x : xs)
            if (std::abs(p.deriv(x, 1)) > worst) {
                worst = std::abs(p.deriv(x, 1));
                wx = x;
            }
        double bound = p.kind == "u" ? 0.5 / p.params.R : 5.0;
        r.margin = bound - worst;
        r.worst_arg = wx;
        r.pass = worst <= bound;
        r.note = "sup|u'| = " + std::to_string(worst);
        out.push_back(r);
    } else if (p.kind == "k") {
        scan("positive", [&](double x) { return p.value(x); }, true);
        scan("nondecreasing", [&](double x) { return p.deriv(x, 1); }, false);
    } else if (p.kind == "g1" || p.kind == "g2") {
        scan("positive", [&](double x) { return p.value(x); }, true);
    }
    return out;
}

// coupled constraints: (f,g) fold pair and (h1,h2) binding pair
inline std::vector<ConstraintResult> validate_fold_pair(const ProfileFunction& f,
                                                        const ProfileFunction& g,
                                                        int grid = 400) {
    std::vector<ConstraintResult> out;
    ConstraintResult r;
    r.name = "pair (f,g): f'g - g'f > 0 on [-1,1]";
    double worst = std::numeric_limits<double>::infinity(), wx = 0;
    for (int i = 0; i <= grid; ++i) {
        double t = -1 + 2.0 * i / grid;
        double v = f.deriv(t, 1) * g.value(t) - g.deriv(t, 1) * f.value(t);
        if (v < worst) {
            worst = v;
            wx = t;
        }
    }
    r.margin = worst;
    r.worst_arg = wx;
    r.pass = worst > 0;
    out.push_back(r);
    return out;
}

inline std::vector<ConstraintResult> validate_binding_pair(const ProfileFunction& h1,
                                                           const ProfileFunction& h2,
                                                           double rmax = 1.2,
                                                           int grid = 400) {
    std::vector<ConstraintResult> out;
    ConstraintResult r;
    r.name = "pair (h1,h2): h1 h2' - h1' h2 > 0 on (0,R]";
    double worst = std::numeric_limits<double>::infinity(), wx = 0;
    for (int i = 1; i <= grid; ++i) {
        double rr = rmax * i / grid;
        double s = rr * rr;
        // r-derivatives by the chain rule through s = r^2
        double w = h1.value(s) * (2 * rr * h2.deriv(s, 1)) -
                   (2 * rr * h1.deriv(s, 1)) * h2.value(s);
        if (w < worst) {
            worst = w;
            wx = rr;
        }
    }
    r.margin = worst;
    r.worst_arg = wx;
    r.pass = worst > 0;
    out.push_back(r);

    ConstraintResult n;
    n.name = "pair (h1,h2): normalized (h1 h2' - h1' h2)/(2r) limit positive";
    double v0 = h1.value(1e-8) * h2.deriv(1e-8, 1) - h1.deriv(1e-8, 1) * h2.value(1e-8);
    n.margin = v0;
    n.pass = v0 > 0.5;
    out.push_back(n);
    return out;
}

inline bool all_pass(const std::vector<ConstraintResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

// ---------------------------------------------------------------------------
// realization table feeding EvalContext

class Realizations {
public:
    void add(ProfileFunction p) {
        std::string name = p.name;
        table_[name] = std::make_shared<ProfileFunction>(std::move(p));
    }
    void add_as(const std::string& symbol, ProfileFunction p) {
        p.name = symbol;
        add(std::move(p));
    }
    bool has(const std::string& name) const { return table_.count(name) != 0; }
    const ProfileFunction& get(const std::string& name) const {
        auto it = table_.find(name);
        if (it == table_.end())
            throw EvalError("missing realization for profile '" + name + "'");
        return *it->second;
    }
    // abstract multivariate symbols (monodromy potentials): value of the
    // given partial derivative at a chart point
    void add_partial(const std::string& name,
                     std::function<double(const std::vector<std::string>&,
                                          const std::map<std::string, double>&)> fn) {
        partials_[name] = std::move(fn);
    }

    EvalContext context(const Point& p) const {
        EvalContext ctx;
        ctx.point = &p;
        ctx.profile = [this](const std::string& name, int order, double x) {
            return get(name).deriv(x, order);
        };
        if (!partials_.empty()) {
            ctx.partial = [this](const std::string& name,
                                 const std::vector<std::string>& index,
                                 const std::map<std::string, double>& pt) {
                auto it = partials_.find(name);
                if (it == partials_.end())
                    throw EvalError("missing realization for symbol '" + name + "'");
                return it->second(index, pt);
            };
        }
        return ctx;
    }

    // the standard table used by the builders' default scenarios
    static Realizations defaults(ProfileParams params = {}) {
        Realizations r;
        for (const char* k : {"f", "g", "h1", "h2", "w2", "u", "k", "g1", "g2"})
            r.add(make_profile(k, params));
        return r;
    }

private:
    std::map<std::string, std::shared_ptr<ProfileFunction>> table_;
    std::map<std::string,
             std::function<double(const std::vector<std::string>&,
                                  const std::map<std::string, double>&)>> partials_;
};

}  // namespace wedge
