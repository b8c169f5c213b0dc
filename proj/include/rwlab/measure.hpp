#pragma once

#include "rwlab/action.hpp"
#include "rwlab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rwlab {

template <class W>
struct Measure {
    std::string oracle;
    std::map<Element, W> atoms;
    W defect = W(0);

    W mass() const {
        W m = W(0);
        for (const auto& [g, w] : atoms) m += w;
        return m;
    }
    W weight(const Element& g) const {
        auto it = atoms.find(g);
        return it == atoms.end() ? W(0) : it->second;
    }
};

template <class W>
struct OrbitDistribution {
    std::string oracle;
    std::map<Point, W> mass;
    W defect = W(0);

    W total() const {
        W m = W(0);
        for (const auto& [x, w] : mass) m += w;
        return m;
    }
    W at(const Point& x) const {
        auto it = mass.find(x);
        return it == mass.end() ? W(0) : it->second;
    }
};

using RMeasure = Measure<Rational>;
using FMeasure = Measure<double>;
using RDistribution = OrbitDistribution<Rational>;
using FDistribution = OrbitDistribution<double>;

constexpr std::size_t no_cap = std::numeric_limits<std::size_t>::max();

namespace detail {

inline void require_same(const std::string& a, const std::string& b) {
    if (a != b) fail(ErrorKind::config, "measures live on different actions: " + a + " vs " + b);
}

// Keep the cap heaviest atoms; ties keep the smaller key. Returns dropped mass.
template <class K, class W>
W truncate(std::map<K, W>& atoms, std::size_t cap) {
    if (cap == 0) fail(ErrorKind::config, "support cap must be at least 1");
    if (atoms.size() <= cap) return W(0);
    std::vector<std::pair<const K*, const W*>> order;
    order.reserve(atoms.size());
    for (const auto& [k, w] : atoms) order.emplace_back(&k, &w);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return *a.second > *b.second; });
    std::vector<K> drop;
    for (std::size_t i = cap; i < order.size(); ++i) drop.push_back(*order[i].first);
    W dropped = W(0);
    for (const auto& k : drop) {
        auto it = atoms.find(k);
        dropped += it->second;
        atoms.erase(it);
    }
    return dropped;
}

template <class W>
bool is_zero(const W& w) {
    return w == W(0);
}

}  // namespace detail

template <class W>
Measure<W> dirac(const ActionOracle& oracle, const Element& g) {
    oracle.validate(g);
    Measure<W> m;
    m.oracle = oracle.name();
    m.atoms.emplace(g, W(1));
    return m;
}

template <class W>
Measure<W> convolve(const ActionOracle& oracle, const Measure<W>& a, const Measure<W>& b, std::size_t cap = no_cap) {
    detail::require_same(a.oracle, oracle.name());
    detail::require_same(b.oracle, oracle.name());
    Measure<W> out;
    out.oracle = oracle.name();
    for (const auto& [g, wg] : a.atoms) {
        for (const auto& [h, wh] : b.atoms) {
            Element gh = g;
            oracle.right_multiply(gh, h);
            out.atoms[gh] += wg * wh;
        }
    }
    W dropped = detail::truncate(out.atoms, cap);
    out.defect = a.defect + a.mass() * b.defect + dropped;
    return out;
}

template <class W>
OrbitDistribution<W> push(const ActionOracle& oracle, const Measure<W>& nu, const Point& x) {
    detail::require_same(nu.oracle, oracle.name());
    oracle.validate(x);
    OrbitDistribution<W> d;
    d.oracle = oracle.name();
    for (const auto& [g, w] : nu.atoms) {
        Point y = x;
        oracle.act(g, y);
        d.mass[y] += w;
    }
    d.defect = nu.defect;
    return d;
}

template <class W>
OrbitDistribution<W> point_mass(const ActionOracle& oracle, const Point& x) {
    oracle.validate(x);
    OrbitDistribution<W> d;
    d.oracle = oracle.name();
    d.mass.emplace(x, W(1));
    return d;
}

template <class W>
OrbitDistribution<W> step(const ActionOracle& oracle, const OrbitDistribution<W>& d, const Measure<W>& nu,
                          std::size_t cap = no_cap) {
    detail::require_same(nu.oracle, oracle.name());
    detail::require_same(d.oracle, oracle.name());
    OrbitDistribution<W> out;
    out.oracle = oracle.name();
    for (const auto& [x, wx] : d.mass) {
        for (const auto& [g, wg] : nu.atoms) {
            Point y = x;
            oracle.act(g, y);
            out.mass[y] += wx * wg;
        }
    }
    W dropped = detail::truncate(out.mass, cap);
    out.defect = d.defect + d.total() * nu.defect + dropped;
    return out;
}

template <class K, class W>
W l1_of_maps(const std::map<K, W>& a, const std::map<K, W>& b) {
    W s = W(0);
    auto i = a.begin();
    auto j = b.begin();
    auto absw = [](const W& w) { return w < W(0) ? W(-w) : w; };
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            s += absw(i->second);
            ++i;
        } else if (i == a.end() || j->first < i->first) {
            s += absw(j->second);
            ++j;
        } else {
            s += absw(W(i->second - j->second));
            ++i;
            ++j;
        }
    }
    return s;
}

template <class W>
W l1_distance(const OrbitDistribution<W>& a, const OrbitDistribution<W>& b) {
    detail::require_same(a.oracle, b.oracle);
    return l1_of_maps(a.mass, b.mass);
}

template <class W>
W l1_distance(const Measure<W>& a, const Measure<W>& b) {
    detail::require_same(a.oracle, b.oracle);
    return l1_of_maps(a.atoms, b.atoms);
}

template <class W>
void check_unit_sum(const W& s, const std::string& what) {
    if constexpr (std::is_same_v<W, Rational>) {
        if (s != 1) fail(ErrorKind::config, what + " sum to " + to_string(s) + ", not 1");
    } else {
        if (std::abs(s - 1.0) > 1e-12) fail(ErrorKind::config, what + " sum to " + std::to_string(s) + ", not 1");
    }
}

template <class W>
Measure<W> mix(const std::vector<W>& weights, const std::vector<Measure<W>>& measures) {
    if (weights.size() != measures.size() || weights.empty())
        fail(ErrorKind::config, "mix needs equally many weights and measures");
    W s = W(0);
    for (const auto& w : weights) {
        if (!(w > W(0))) fail(ErrorKind::config, "mix weights must be positive");
        s += w;
    }
    check_unit_sum(s, "mix weights");
    Measure<W> out;
    out.oracle = measures.front().oracle;
    for (std::size_t i = 0; i < measures.size(); ++i) {
        detail::require_same(out.oracle, measures[i].oracle);
        for (const auto& [g, w] : measures[i].atoms) out.atoms[g] += weights[i] * w;
        out.defect += weights[i] * measures[i].defect;
    }
    return out;
}

template <class W>
Measure<W> symmetrize(const ActionOracle& oracle, const Measure<W>& nu) {
    detail::require_same(nu.oracle, oracle.name());
    Measure<W> out;
    out.oracle = nu.oracle;
    const W half = W(1) / W(2);
    for (const auto& [g, w] : nu.atoms) {
        out.atoms[g] += half * w;
        out.atoms[oracle.inverse(g)] += half * w;
    }
    out.defect = nu.defect;
    return out;
}

template <class W>
Measure<W> lazify(const ActionOracle& oracle, const Measure<W>& nu) {
    detail::require_same(nu.oracle, oracle.name());
    Measure<W> out;
    out.oracle = nu.oracle;
    const W half = W(1) / W(2);
    out.atoms[oracle.identity()] += half;
    for (const auto& [g, w] : nu.atoms) out.atoms[g] += half * w;
    out.defect = half * nu.defect;
    return out;
}

template <class W>
bool is_symmetric(const ActionOracle& oracle, const Measure<W>& nu) {
    for (const auto& [g, w] : nu.atoms)
        if (nu.weight(oracle.inverse(g)) != w) return false;
    return true;
}

template <class W>
bool is_lazy(const ActionOracle& oracle, const Measure<W>& nu) {
    return nu.weight(oracle.identity()) * W(2) >= W(1);
}

// positive weights; mass + defect = 1
template <class W>
void validate_measure(const ActionOracle& oracle, const Measure<W>& nu) {
    detail::require_same(nu.oracle, oracle.name());
    for (const auto& [g, w] : nu.atoms) {
        oracle.validate(g);
        if (!(w > W(0))) fail(ErrorKind::config, "measure weights must be positive");
    }
    check_unit_sum(W(nu.mass() + nu.defect), "measure weights");
}

FMeasure to_float(const RMeasure& nu);
FDistribution to_float(const RDistribution& d);

// All elements of word length <= r, found by BFS on elements.
std::vector<Element> element_ball(const ActionOracle& oracle, std::size_t r, std::size_t cap = default_ball_cap);

// srw, lazy-srw, uniform-ball:R
RMeasure preset_measure(const ActionOracle& oracle, std::string_view name);
// a preset name, or "word:weight" entries separated by newlines or ';'
RMeasure parse_measure(const ActionOracle& oracle, std::string_view spec);
std::string format_measure(const ActionOracle& oracle, const RMeasure& nu);

std::string distribution_csv(const ActionOracle& oracle, const RDistribution& d);
std::string distribution_csv(const ActionOracle& oracle, const FDistribution& d);

}  // namespace rwlab
