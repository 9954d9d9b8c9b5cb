#pragma once

// Charts: an ordered list of coordinate names with per-coordinate domain
// intervals, an orthonormal frame (the metric is the identity in these
// coordinates) and an orientation sign. The coordinate order together with
// the orientation sign fixes the positive volume form; golden scenarios
// record both so Hodge-star signs are reproducible.

#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wedge/error.hpp"
#include "wedge/scalar.hpp"

namespace wedge {

struct CoordinateDomain {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool periodic = false;
};

class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> names, int orientation = +1)
        : names_(std::move(names)), orientation_(orientation) {
        domains_.resize(names_.size());
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], static_cast<int>(i)).second)
                throw Error("duplicate coordinate name '" + names_[i] + "'");
        }
    }

    std::size_t dim() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }
    int orientation() const { return orientation_; }

    bool has(const std::string& n) const { return index_.count(n) != 0; }
    int index(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) throw Error("unknown coordinate '" + n + "'");
        return it->second;
    }

    void set_domain(const std::string& n, CoordinateDomain d) {
        domains_[index(n)] = d;
    }
    const CoordinateDomain& domain(const std::string& n) const {
        return domains_[index(n)];
    }
    const CoordinateDomain& domain(int i) const { return domains_.at(i); }

    // abstract scalar symbols (monodromy potentials etc.): name -> coordinate
    // dependency set
    void declare_function(const std::string& name, std::vector<std::string> deps) {
        for (const auto& d : deps) index(d);
        abstract_fns_[name] = std::move(deps);
    }
    const std::map<std::string, std::vector<std::string>>& functions() const {
        return abstract_fns_;
    }

    bool operator==(const Chart& o) const {
        return names_ == o.names_ && orientation_ == o.orientation_;
    }
    bool operator!=(const Chart& o) const { return !(*this == o); }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<CoordinateDomain> domains_;
    std::map<std::string, std::vector<std::string>> abstract_fns_;
    int orientation_ = +1;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::vector<std::string> names, int orientation = +1) {
    return std::make_shared<const Chart>(std::move(names), orientation);
}

// A point assigns a value to every coordinate of the chart in use.
using Point = std::map<std::string, double>;

inline void check_point(const Chart& chart, const Point& p) {
    for (const auto& n : chart.names()) {
        auto it = p.find(n);
        if (it == p.end())
            throw EvalError("point does not assign coordinate '" + n + "'");
        const auto& dom = chart.domain(n);
        if (!dom.periodic && (it->second < dom.lo || it->second > dom.hi))
            throw EvalError("coordinate '" + n + "' outside its domain");
    }
}

}  // namespace wedge
