#pragma once

// Contactness, confoliation, singular-locus, tau, nullity-direction, rank and
// accessibility verification. Symbolic where possible (the defect is an exact
// ScalarExpr), numeric grid-based otherwise. Grid positivity is evidence, not
// proof: reports carry the grid resolution and say "verified on grid".

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wedge/builders.hpp"
#include "wedge/chart.hpp"
#include "wedge/form.hpp"
#include "wedge/profile.hpp"

namespace wedge {

// singular values below this fraction of the largest count as zero
inline constexpr double kRankThreshold = 1e-10;

// numeric evaluation with chart-domain validation
inline double eval_scalar_at(const ScalarExpr& e, const Chart& chart, const Point& p,
                             const Realizations& reals) {
    check_point(chart, p);
    EvalContext ctx = reals.context(p);
    return e.eval(ctx);
}

inline ScalarExpr contact_defect(const DifferentialForm& eta) {
    std::size_t dim = eta.chart().dim();
    if (dim % 2 == 0) throw DegreeError("contact defect needs an odd-dimensional chart");
    if (eta.degree() != 1) throw DegreeError("contact defect is defined for 1-forms");
    int k = static_cast<int>((dim - 1) / 2);
    return top_coefficient(
        wedge_product(eta, wedge_power(exterior_derivative(eta), k)));
}

// tau = star(eta ^ (d eta)^{k-1}) on a (2k+1)-chart
inline DifferentialForm tau_form(const DifferentialForm& eta) {
    std::size_t dim = eta.chart().dim();
    if (dim % 2 == 0) throw DegreeError("tau needs an odd-dimensional chart");
    if (eta.degree() != 1) throw DegreeError("tau is defined for 1-forms");
    int k = static_cast<int>((dim - 1) / 2);
    return hodge_star(
        wedge_product(eta, wedge_power(exterior_derivative(eta), k - 1)));
}

// ---------------------------------------------------------------------------
// grids

struct GridAxis {
    std::string coord;
    double lo = 0, hi = 0;
    int points = 2;  // >= 2 sweeps inclusive endpoints; 1 pins to lo
};

struct GridSpec {
    std::vector<GridAxis> axes;
    Point fixed;

    long total() const {
        long n = 1;
        for (const auto& a : axes) n *= std::max(1, a.points);
        return n;
    }
    // deterministic row-major enumeration
    Point point_at(long index) const {
        Point p = fixed;
        for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
            int n = std::max(1, it->points);
            int i = static_cast<int>(index % n);
            index /= n;
            p[it->coord] = n == 1 ? it->lo : it->lo + (it->hi - it->lo) * i / (n - 1);
        }
        return p;
    }
};

struct VerificationReport {
    std::string check;
    std::string kind;
    bool pass = false;
    std::map<std::string, double> values;  // named numeric results
    std::optional<Point> witness;
    std::vector<Point> singular_samples;
    std::vector<std::string> notes;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["check"] = check;
        j["kind"] = kind;
        j["status"] = pass ? "pass" : "fail";
        nlohmann::ordered_json vals;
        for (const auto& [k, v] : values) vals[k] = v;
        j["values"] = vals;
        if (witness) {
            nlohmann::ordered_json w;
            for (const auto& [k, v] : *witness) w[k] = v;
            j["witness"] = w;
        }
        if (!singular_samples.empty()) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& s : singular_samples) {
                nlohmann::ordered_json w;
                for (const auto& [k, v] : s) w[k] = v;
                arr.push_back(w);
            }
            j["singular_samples"] = arr;
        }
        if (!notes.empty()) j["notes"] = notes;
        return j;
    }
};

enum class PositivityMode { Contact, Confoliation };

// evaluates the defect over the grid; contact passes when min > tol,
// confoliation when min >= -tol
inline VerificationReport check_contact(const DifferentialForm& eta, const GridSpec& grid,
                                        double tol, const Realizations& reals,
                                        PositivityMode mode = PositivityMode::Contact,
                                        std::size_t max_singular_samples = 4096) {
    VerificationReport rep;
    rep.check = "contact positivity";
    rep.kind = mode == PositivityMode::Contact ? "contact" : "confoliation";
    ScalarExpr defect = contact_defect(eta);
    double best = std::numeric_limits<double>::infinity();
    Point best_pt;
    long total = grid.total();
    for (long i = 0; i < total; ++i) {
        Point p = grid.point_at(i);
        check_point(eta.chart(), p);
        EvalContext ctx = reals.context(p);
        double v = defect.eval(ctx);
        if (v < best) {
            best = v;
            best_pt = p;
        }
        if (std::abs(v) < tol && rep.singular_samples.size() < max_singular_samples)
            rep.singular_samples.push_back(p);
    }
    rep.values["min_defect"] = best;
    rep.values["grid_points"] = static_cast<double>(total);
    rep.values["tolerance"] = tol;
    rep.witness = best_pt;
    rep.pass = mode == PositivityMode::Contact ? best > tol : best >= -tol;
    rep.notes.push_back("verified on grid");
    return rep;
}

struct SingularLocus {
    std::vector<Point> samples;
    // per-coordinate max |value| over the singular samples, plus declared
    // radial pairs reported as max radius
    std::map<std::string, double> pinned;
};

inline SingularLocus singular_locus(
    const DifferentialForm& eta, const GridSpec& grid, double tol,
    const Realizations& reals,
    const std::vector<std::pair<std::string, std::string>>& radial_pairs = {}) {
    SingularLocus loc;
    ScalarExpr defect = contact_defect(eta);
    long total = grid.total();
    for (long i = 0; i < total; ++i) {
        Point p = grid.point_at(i);
        check_point(eta.chart(), p);
        EvalContext ctx = reals.context(p);
        if (std::abs(defect.eval(ctx)) < tol) loc.samples.push_back(p);
    }
    for (const auto& a : grid.axes) {
        double mx = 0;
        for (const auto& s : loc.samples) mx = std::max(mx, std::abs(s.at(a.coord)));
        loc.pinned[a.coord] = mx;
    }
    for (const auto& [cx, cy] : radial_pairs) {
        double mx = 0;
        for (const auto& s : loc.samples)
            mx = std::max(mx, std::hypot(s.at(cx), s.at(cy)));
        loc.pinned["r(" + cx + "," + cy + ")"] = mx;
    }
    return loc;
}

// ---------------------------------------------------------------------------
// pointwise linear algebra

inline Eigen::MatrixXd two_form_matrix(const DifferentialForm& f, const EvalContext& ctx) {
    if (f.degree() != 2) throw DegreeError("expected a 2-form");
    int n = static_cast<int>(f.chart().dim());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [idx, coeff] : f.terms()) {
        double v = coeff.eval(ctx);
        M(idx[0], idx[1]) = v;
        M(idx[1], idx[0]) = -v;
    }
    return M;
}

inline Eigen::VectorXd one_form_components(const DifferentialForm& f,
                                           const EvalContext& ctx) {
    if (f.degree() != 1) throw DegreeError("expected a 1-form");
    int n = static_cast<int>(f.chart().dim());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (const auto& [idx, coeff] : f.terms()) w(idx[0]) = coeff.eval(ctx);
    return w;
}

// unit vector spanning the kernel of the antisymmetric coefficient matrix of
// a 2-form at a point; throws when the kernel is not 1-dimensional
inline Eigen::VectorXd null_direction(const DifferentialForm& tau, const Point& p,
                                      const Realizations& reals,
                                      double rank_tol = kRankThreshold) {
    EvalContext ctx = reals.context(p);
    Eigen::MatrixXd M = two_form_matrix(tau, ctx);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int n = static_cast<int>(M.rows());
    double scale = sv(0);
    if (scale <= 0) throw EvalError("tau vanishes at the point: kernel is everything");
    int kernel_dim = 0;
    for (int i = 0; i < n; ++i)
        if (sv(i) < rank_tol * scale) ++kernel_dim;
    if (kernel_dim != 1)
        throw EvalError("kernel of tau is " + std::to_string(kernel_dim) +
                        "-dimensional at the sample (expected 1)");
    Eigen::VectorXd v = svd.matrixV().col(n - 1);
    // deterministic sign: largest-magnitude component positive
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    if (v(imax) < 0) v = -v;
    return v;
}

// numeric rank of d(eta) restricted to ker(eta) at p
inline int rank_on_kernel(const DifferentialForm& eta, const Point& p,
                          const Realizations& reals, double rank_tol = kRankThreshold) {
    EvalContext ctx = reals.context(p);
    Eigen::VectorXd w = one_form_components(eta, ctx);
    if (w.norm() < 1e-14) throw EvalError("eta vanishes at the point");
    Eigen::MatrixXd M = two_form_matrix(exterior_derivative(eta), ctx);
    int n = static_cast<int>(w.size());
    // orthonormal basis of ker(w) from the SVD of the row vector
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w.transpose(), Eigen::ComputeFullV);
    Eigen::MatrixXd B = svd.matrixV().rightCols(n - 1);
    Eigen::MatrixXd Mk = B.transpose() * M * B;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd2(Mk);
    const auto& sv = svd2.singularValues();
    double scale = sv(0);
    if (scale <= 0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol * scale) ++rank;
    return rank;
}

// ---------------------------------------------------------------------------
// accessibility: along a parametrized path, Null(tau) must stay
// 1-dimensional and perpendicular to the path tangent (tangent in D)

struct PathSample {
    Point point;
    std::map<std::string, double> tangent;
};

inline VerificationReport accessibility_check(
    const DifferentialForm& eta, const std::function<PathSample(double)>& path,
    int samples, double tol, const Realizations& reals,
    const std::vector<std::string>& expected_span = {}) {
    VerificationReport rep;
    rep.check = "accessibility";
    rep.kind = "accessibility";
    DifferentialForm tau = tau_form(eta);
    const Chart& chart = eta.chart();
    int n = static_cast<int>(chart.dim());
    double max_perp = 0, max_span = 0;
    int kernel_failures = 0;
    for (int i = 1; i <= samples; ++i) {
        double s = static_cast<double>(i) / samples;
        PathSample ps = path(s);
        try {
            Eigen::VectorXd v = null_direction(tau, ps.point, reals);
            Eigen::VectorXd tg = Eigen::VectorXd::Zero(n);
            for (const auto& [nm, val] : ps.tangent) tg(chart.index(nm)) = val;
            tg.normalize();
            max_perp = std::max(max_perp, std::abs(v.dot(tg)));
            if (!expected_span.empty()) {
                double outside = 0;
                for (int j = 0; j < n; ++j) {
                    bool in_span = false;
                    for (const auto& nm : expected_span)
                        in_span |= (chart.index(nm) == j);
                    if (!in_span) outside += v(j) * v(j);
                }
                max_span = std::max(max_span, std::sqrt(outside));
            }
        } catch (const EvalError&) {
            ++kernel_failures;
        }
    }
    rep.values["samples"] = samples;
    rep.values["max_tangent_residual"] = max_perp;
    rep.values["kernel_dim_failures"] = kernel_failures;
    rep.values["tolerance"] = tol;
    if (!expected_span.empty()) rep.values["max_span_residual"] = max_span;
    rep.pass = kernel_failures == 0 && max_perp < tol &&
               (expected_span.empty() || max_span < tol);
    return rep;
}

}  // namespace wedge
