#include "rwlab/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace rwlab {

namespace {

using FloatMap = std::map<Element, double>;

FloatMap right_translate(const ActionOracle& oracle, const FMeasure& nu, const Element& d) {
    FloatMap out;
    for (const auto& [g, w] : nu.atoms) {
        Element h = g;
        oracle.right_multiply(h, d);
        out.emplace(std::move(h), w);
    }
    return out;
}

std::map<Point, double> push_map(const ActionOracle& oracle, const FMeasure& nu, const Point& x) {
    std::map<Point, double> out;
    for (const auto& [g, w] : nu.atoms) {
        Point y = x;
        oracle.act(g, y);
        out[y] += w;
    }
    return out;
}

Rational nat(std::size_t n) { return Rational(mpz_class(static_cast<unsigned long>(n))); }

}  // namespace

TvReport tv_condition_check(const ActionOracle& oracle, const FMeasure& nu, const std::vector<Point>& k,
                            const Rational& eps, std::size_t n, std::uint64_t budget) {
    TvReport rep;
    rep.n = n;
    rep.eps = eps;
    const double supp = static_cast<double>(std::max<std::size_t>(nu.atoms.size(), 1));
    if (k.size() >= 2 && oracle.acts_on_itself()) {
        // |delta_x nu - delta_y nu|_1 = sum_w |nu(w) - nu(w x y^-1)|
        std::set<Element> keys;
        for (const auto& x : k)
            for (const auto& y : k) {
                if (!(x < y)) continue;
                Element d = oracle.multiply(Element{x.code}, oracle.inverse(Element{y.code}));
                Element di = oracle.inverse(d);
                keys.insert(std::min(d, di));
            }
        if (static_cast<double>(keys.size()) * supp > static_cast<double>(budget)) {
            rep.skipped = true;
            return rep;
        }
        FloatMap base(nu.atoms.begin(), nu.atoms.end());
        for (const auto& d : keys) {
            rep.sup = std::max(rep.sup, l1_of_maps(base, right_translate(oracle, nu, oracle.inverse(d))));
            ++rep.pairs;
        }
    } else if (k.size() >= 2) {
        const double pairs = static_cast<double>(k.size()) * static_cast<double>(k.size() - 1) / 2;
        if (pairs * supp > static_cast<double>(budget)) {
            rep.skipped = true;
            return rep;
        }
        std::vector<std::map<Point, double>> laws;
        for (const auto& x : k) laws.push_back(push_map(oracle, nu, x));
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::size_t j = i + 1; j < k.size(); ++j) {
                rep.sup = std::max(rep.sup, l1_of_maps(laws[i], laws[j]));
                ++rep.pairs;
            }
    }
    rep.holds = rep.sup < eps.get_d();
    return rep;
}

CandidateFamily shift_uniform_family(OraclePtr oracle, const Element& t) {
    CandidateFamily f;
    f.name = "shift-uniform";
    f.measure = [oracle, t](std::size_t n) {
        const std::size_t r = n * n;
        const Rational w(1, static_cast<unsigned long>(2 * r + 1));
        RMeasure m;
        m.oracle = oracle->name();
        m.atoms[oracle->identity()] = w;
        Element fwd = oracle->identity(), back = oracle->identity();
        const Element ti = oracle->inverse(t);
        for (std::size_t k = 0; k < r; ++k) {
            oracle->right_multiply(fwd, t);
            oracle->right_multiply(back, ti);
            m.atoms[fwd] += w;
            m.atoms[back] += w;
        }
        return m;
    };
    f.eps = [](std::size_t n) {
        if (n == 0) fail(ErrorKind::config, "eps_n = 2/n needs n >= 1");
        return Rational(2, static_cast<unsigned long>(n));
    };
    return f;
}

std::vector<Rational> geometric_weights(std::size_t depth) {
    std::vector<Rational> c;
    Rational w(1, 2);
    for (std::size_t j = 0; j <= depth; ++j) {
        c.push_back(w);
        w /= 2;
    }
    return c;
}

namespace {

RMeasure top_mass_restriction(const RMeasure& nu0, const Rational& half_bound, std::size_t& atoms) {
    std::vector<std::pair<Element, Rational>> order(nu0.atoms.begin(), nu0.atoms.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    Rational kept = 0;
    std::size_t take = 0;
    while (take < order.size() && 1 - kept > half_bound) kept += order[take++].second;
    RMeasure theta;
    theta.oracle = nu0.oracle;
    for (std::size_t i = 0; i < take; ++i) theta.atoms.emplace(order[i].first, order[i].second / kept);
    atoms = take;
    return theta;
}

std::set<Element> support(const RMeasure& m) {
    std::set<Element> s;
    for (const auto& [g, w] : m.atoms) s.insert(g);
    return s;
}

mpz_class multiset_count(std::size_t m, std::size_t types) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), m + types, types);
    return c;
}

// minimal |k| with T^k x = y for every y in targets, searching |k| <= n_max
std::size_t required_radius(const ActionOracle& oracle, const Element& t, const Point& x,
                            const std::set<Point>& targets, std::size_t n_max) {
    std::set<Point> left = targets;
    left.erase(x);
    Point fwd = x, back = x;
    const Element ti = oracle.inverse(t);
    std::size_t need = 0;
    for (std::size_t k = 1; !left.empty(); ++k) {
        if (k > n_max)
            fail(ErrorKind::range_exhausted, "no n <= " + std::to_string(n_max) + " satisfies the containment condition");
        oracle.act(t, fwd);
        oracle.act(ti, back);
        if (left.erase(fwd) + left.erase(back)) need = k;
    }
    return need;
}

}  // namespace

SynthResult synthesize(const SynthConfig& cfg) {
    if (!cfg.oracle) fail(ErrorKind::config, "synthesis needs an action");
    const auto& oracle = *cfg.oracle;
    validate_measure(oracle, cfg.nu0);
    if (!is_symmetric(oracle, cfg.nu0)) fail(ErrorKind::config, "base measure must be symmetric");
    if (cfg.weights.size() != cfg.depth + 1)
        fail(ErrorKind::config, "need " + std::to_string(cfg.depth + 1) + " weights c_0..c_J");
    Rational csum = 0;
    for (const auto& c : cfg.weights) {
        if (c <= 0) fail(ErrorKind::config, "weights c_j must be positive");
        csum += c;
    }
    if (csum > 1) fail(ErrorKind::config, "weights c_j sum past 1");
    std::vector<Point> bases = cfg.basepoints;
    if (bases.empty()) bases.push_back(oracle.base_point());
    ExhaustionSequence kseq(cfg.oracle, cfg.t);

    SynthResult res;
    auto& st = res.state;
    st.ns.push_back(0);
    std::vector<RMeasure> chosen{cfg.nu0};
    bool ok = true;

    for (std::size_t j = 1; j <= cfg.depth; ++j) {
        SynthStep step;
        step.j = j;
        for (std::size_t i = 0; i < j; ++i) step.prefix += cfg.weights[i];
        const Rational inv_j(1, static_cast<unsigned long>(j));
        std::size_t m = 1;
        while (pow(step.prefix, m) > inv_j) {
            if (++m > 1000000) fail(ErrorKind::range_exhausted, "m_j does not exist below 10^6 at j = " + std::to_string(j));
        }
        step.m = m;
        step.m_minimal = pow(step.prefix, m) <= inv_j && (m == 1 || pow(step.prefix, m - 1) > inv_j);

        step.theta_bound = Rational(1, static_cast<unsigned long>(j * m));
        RMeasure theta = top_mass_restriction(cfg.nu0, step.theta_bound / 2, step.theta_atoms);
        step.theta_error = l1_distance(cfg.nu0, theta);
        step.theta_ok = step.theta_error <= step.theta_bound;
        step.surrogate_bound = nat(m) * step.theta_error;
        step.surrogate_ok = step.surrogate_bound <= inv_j;

        const mpz_class count = multiset_count(m, j);
        if (count > static_cast<unsigned long>(cfg.s_budget))
            fail(ErrorKind::resource_limit, "|S_j| = " + count.get_str() + " exceeds budget at j = " + std::to_string(j));
        step.s_count = count.get_ui();

        // supports of S'_j: factors in nondecreasing index order
        std::vector<std::set<Element>> factor(j);
        factor[0] = support(theta);
        for (std::size_t i = 1; i < j; ++i) factor[i] = support(chosen[i]);
        std::set<Element> all{oracle.identity()};
        std::size_t work = 0;
        std::function<void(std::size_t, std::size_t, const std::set<Element>&)> rec =
            [&](std::size_t start, std::size_t len, const std::set<Element>& cur) {
                if (len == m) return;
                for (std::size_t i = start; i < j; ++i) {
                    std::set<Element> next;
                    for (const auto& a : cur)
                        for (const auto& b : factor[i]) {
                            Element ab = a;
                            oracle.right_multiply(ab, b);
                            next.insert(std::move(ab));
                        }
                    work += next.size();
                    if (work > cfg.support_budget)
                        fail(ErrorKind::resource_limit, "supports of S_j exceed budget at j = " + std::to_string(j));
                    all.insert(next.begin(), next.end());
                    rec(i, len + 1, next);
                }
            };
        rec(0, 0, std::set<Element>{oracle.identity()});
        step.support_union = all.size();

        const std::size_t n_prev = st.ns.back();
        std::size_t n = n_prev + 1;
        std::vector<std::set<Point>> targets;
        for (const auto& x : bases) {
            std::set<Point> tg;
            for (const auto& p : kseq(n_prev, x))
                for (const auto& g : all) {
                    Point y = p;
                    oracle.act(g, y);
                    tg.insert(std::move(y));
                }
            n = std::max(n, required_radius(oracle, cfg.t, x, tg, cfg.n_max));
            targets.push_back(std::move(tg));
        }
        step.n = n;
        step.containment_ok = true;
        for (std::size_t b = 0; b < bases.size(); ++b) {
            auto kn = kseq(n, bases[b]);
            for (const auto& y : targets[b])
                if (!std::binary_search(kn.begin(), kn.end(), y)) step.containment_ok = false;
        }

        RMeasure nun = cfg.family.measure(n);
        validate_measure(oracle, nun);
        if (!is_symmetric(oracle, nun)) fail(ErrorKind::config, "candidate measure at n = " + std::to_string(n) + " is not symmetric");
        const Rational eps = cfg.family.eps(n);
        if (j >= 2 && !(eps < cfg.family.eps(n_prev)))
            fail(ErrorKind::config, "eps_n must decrease strictly; fails at n = " + std::to_string(n));
        step.tv = tv_condition_check(oracle, to_float(nun), kseq(n, bases.front()), eps, n, cfg.tv_budget);
        if (!step.tv.skipped && !step.tv.holds)
            fail(ErrorKind::config, "candidate family violates (TV) at n = " + std::to_string(n) + ": sup " +
                                        std::to_string(step.tv.sup) + " >= eps " + to_string(eps));

        ok = ok && step.m_minimal && step.theta_ok && step.surrogate_ok && step.containment_ok;
        st.ns.push_back(n);
        chosen.push_back(std::move(nun));
        st.steps.push_back(std::move(step));
    }

    for (const auto& c : cfg.weights) st.mixture_weights.push_back(c / csum);
    st.tail_mass = 1 - csum;
    res.nu = mix(st.mixture_weights, chosen);
    st.ok = ok;
    return res;
}

namespace {

void finish_probe(ProbeReport& rep) {
    if (rep.rows.empty()) return;
    rep.min_distance = rep.rows.front().distance;
    bool strict = true, weak = true;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        rep.min_distance = std::min(rep.min_distance, rep.rows[i].distance);
        if (i == 0) continue;
        if (!(rep.rows[i].distance < rep.rows[i - 1].distance)) strict = false;
        if (rep.rows[i].distance > rep.rows[i - 1].distance + rep.rows[i].error + rep.rows[i - 1].error) weak = false;
    }
    rep.trend = strict ? "decreasing" : weak ? "nonincreasing" : "mixed";
}

}  // namespace

ProbeReport liouville_probe(const ActionOracle& oracle, const FMeasure& nu, const Point& x, const Point& y,
                            std::size_t m_max, std::size_t cap) {
    ProbeReport rep;
    auto a = point_mass<double>(oracle, x);
    auto b = point_mass<double>(oracle, y);
    for (std::size_t m = 1; m <= m_max; ++m) {
        a = step(oracle, a, nu, cap);
        b = step(oracle, b, nu, cap);
        rep.rows.push_back({m, l1_distance(a, b), a.defect + b.defect});
    }
    finish_probe(rep);
    return rep;
}

LineDistribution line_measure(const RMeasure& nu) {
    std::map<std::int64_t, double> atoms;
    for (const auto& [g, w] : nu.atoms) {
        if (g.code.size() != 1) fail(ErrorKind::config, "line measure needs elements of Z");
        atoms[g.code[0]] += w.get_d();
    }
    return line_from_map(atoms);
}

ProbeReport liouville_probe_line(const LineDistribution& nu, std::int64_t x, std::int64_t y, std::size_t m_max) {
    ProbeReport rep;
    LineDistribution cur = nu;
    for (std::size_t m = 1; m <= m_max; ++m) {
        if (m > 1) cur = convolve_line(cur, nu);
        // delta_x nu^m and delta_y nu^m are translates of nu^m
        rep.rows.push_back({m, l1_shifted(cur, cur, y - x), 2 * cur.error});
    }
    finish_probe(rep);
    return rep;
}

void probe_bounds(ProbeReport& probe, const SynthState& state, const CandidateFamily& family) {
    probe.checks.clear();
    for (const auto& s : state.steps) {
        if (s.m == 0 || s.m > probe.rows.size()) continue;
        const auto& row = probe.rows[s.m - 1];
        ProbeCheck c;
        c.j = s.j;
        c.m = s.m;
        c.distance = row.distance;
        c.error = row.error;
        c.bound = 4.0 / static_cast<double>(s.j) + family.eps(s.n).get_d();
        if (row.distance + row.error < c.bound)
            c.verdict = "pass";
        else if (row.distance - row.error >= c.bound)
            c.verdict = "fail";
        else
            c.verdict = "inconclusive";
        probe.checks.push_back(c);
    }
}

std::vector<DefectRow> defect_sets(const FiniteRelationSpace& space, const Permutation& t,
                                   const std::vector<std::pair<std::size_t, Permutation>>& approximants) {
    const std::size_t sz = space.size();
    if (t.size() != sz) fail(ErrorKind::config, "T has the wrong size");
    const Permutation ti = invert(t);
    std::vector<DefectRow> out;
    for (const auto& [n, f] : approximants) {
        if (f.size() != sz) fail(ErrorKind::config, "approximant has the wrong size");
        const Permutation fi = invert(f);
        const std::size_t range = n * n + n;
        DefectRow row;
        row.n = n;
        for (std::size_t x = 0; x < sz; ++x) {
            bool bad = false;
            std::size_t a = x, b = x, c = x, d = x;
            for (std::size_t k = 1; k <= range && !bad; ++k) {
                a = f[a];
                b = t[b];
                c = fi[c];
                d = ti[d];
                bad = a != b || c != d;
            }
            if (bad) {
                row.members.push_back(x);
                row.mass += space.weight(x);
            }
        }
        row.bound = Rational(mpz_class(static_cast<unsigned long>(n * n * n)));
        Rational p2;
        mpz_ui_pow_ui(p2.get_num_mpz_t(), 2, n);
        row.bound /= p2;
        row.flagged = row.mass > row.bound;
        out.push_back(std::move(row));
    }
    return out;
}

ContainmentDefect containment_defect(const FiniteRelationSpace& space, const Permutation& t,
                                     const std::vector<Permutation>& gs, std::size_t n_prev, std::size_t n) {
    const Permutation ti = invert(t);
    auto ball = [&](std::size_t x, std::size_t r) {
        std::set<std::size_t> k{x};
        std::size_t a = x, b = x;
        for (std::size_t i = 0; i < r; ++i) {
            a = t[a];
            b = ti[b];
            k.insert(a);
            k.insert(b);
        }
        return k;
    };
    ContainmentDefect out;
    for (std::size_t x = 0; x < space.size(); ++x) {
        auto inner = ball(x, n_prev);
        auto outer = ball(x, n);
        bool bad = false;
        for (const auto& g : gs)
            for (auto p : inner)
                if (!outer.count(g[p])) bad = true;
        if (bad) {
            out.members.push_back(x);
            out.mass += space.weight(x);
        }
    }
    return out;
}

}  // namespace rwlab
