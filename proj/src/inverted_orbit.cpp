#include "rwlab/inverted_orbit.hpp"

#include "rwlab/mc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace rwlab {

const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "mc"; }

std::vector<Rational> default_eps_grid() { return {Rational(1, 16), Rational(1, 8), Rational(1, 4), Rational(1, 2)}; }

InvertedOrbit inverted_orbit(const ActionOracle& oracle, const IncrementSequence& h, const Point& x) {
    oracle.validate(x);
    std::set<Point> pts{x};
    Element s = oracle.identity();
    for (auto it = h.rbegin(); it != h.rend(); ++it) {
        oracle.right_multiply(s, *it);  // s = h_n ... h_j
        Point y = x;
        oracle.act(s, y);
        pts.insert(std::move(y));
    }
    return {x, h.size(), {pts.begin(), pts.end()}};
}

InvertedOrbit inverted_orbit_naive(const ActionOracle& oracle, const IncrementSequence& h, const Point& x) {
    std::set<Point> pts{x};
    for (std::size_t j = h.size(); j >= 1; --j) {
        Point y = x;
        for (std::size_t i = j; i <= h.size(); ++i) oracle.act(h[i - 1], y);  // h_j first, h_n last
        pts.insert(std::move(y));
    }
    return {x, h.size(), {pts.begin(), pts.end()}};
}

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t n, std::uint64_t limit) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (base != 0 && v > limit / base) return limit + 1;
        v *= base;
    }
    return v;
}

class Enumerator {
public:
    Enumerator(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n,
               std::optional<std::size_t> cap, std::uint64_t budget)
        : oracle_(oracle), x_(x), n_(n), cap_(cap), budget_(budget) {
        std::vector<Rational> weights;
        for (const auto& [g, w] : nu.atoms) {
            atoms_.push_back(g);
            auto it = std::find(weights.begin(), weights.end(), w);
            cls_.push_back(static_cast<std::size_t>(it - weights.begin()));
            if (it == weights.end()) weights.push_back(w);
        }
        weights_ = weights;
        // key = size, then one base-(n+1) digit per weight class
        double bits = std::log2(static_cast<double>(n + 2)) + static_cast<double>(weights.size()) * std::log2(static_cast<double>(n + 1));
        if (bits > 62) fail(ErrorKind::resource_limit, "too many distinct atom weights for exact enumeration");
        class_count_.assign(weights.size(), 0);
        elems_.assign(n + 1, oracle.identity());
    }

    std::vector<Rational> run() {
        pts_.push_back(x_);
        mult_.push_back(1);
        dfs(0);
        std::vector<Rational> law(n_ + 2, Rational(0));
        for (const auto& [key, count] : hist_) {
            std::uint64_t k = key;
            Rational w = 1;
            for (std::size_t c = weights_.size(); c-- > 0;) {
                std::uint64_t e = k % (n_ + 1);
                k /= n_ + 1;
                w *= pow(weights_[c], static_cast<unsigned long>(e));
            }
            law[k] += w * Rational(mpz_class(static_cast<unsigned long>(count)));
        }
        return law;
    }

private:
    void dfs(std::size_t d) {
        if (d == n_) {
            std::uint64_t key = pts_.size();
            for (auto c : class_count_) key = key * (n_ + 1) + c;
            ++hist_[key];
            return;
        }
        for (std::size_t a = 0; a < atoms_.size(); ++a) {
            if (++visited_ > budget_)
                fail(ErrorKind::resource_limit, "exact enumeration exceeded budget of " + std::to_string(budget_) + " nodes");
            elems_[d + 1] = elems_[d];
            oracle_.right_multiply(elems_[d + 1], atoms_[a]);
            Point y = x_;
            oracle_.act(elems_[d + 1], y);
            const auto at = static_cast<std::size_t>(std::find(pts_.begin(), pts_.end(), y) - pts_.begin());
            const bool fresh = at == pts_.size();
            if (fresh) {
                if (cap_ && pts_.size() >= *cap_) continue;
                pts_.push_back(std::move(y));
                mult_.push_back(1);
            } else {
                ++mult_[at];
            }
            ++class_count_[cls_[a]];
            dfs(d + 1);
            --class_count_[cls_[a]];
            if (fresh) {
                pts_.pop_back();
                mult_.pop_back();
            } else {
                --mult_[at];
            }
        }
    }

    const ActionOracle& oracle_;
    Point x_;
    std::size_t n_;
    std::optional<std::size_t> cap_;
    std::uint64_t budget_;
    std::uint64_t visited_ = 0;
    std::vector<Element> atoms_;
    std::vector<std::size_t> cls_;
    std::vector<Rational> weights_;
    std::vector<std::uint32_t> class_count_;
    std::vector<Element> elems_;
    std::vector<Point> pts_;
    std::vector<std::uint32_t> mult_;
    std::unordered_map<std::uint64_t, std::uint64_t> hist_;
};

std::uint64_t floor_times(const Rational& eps, std::size_t n) {
    Rational v = eps * Rational(mpz_class(static_cast<unsigned long>(n)));
    if (v < 0) return 0;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return f.fits_ulong_p() ? f.get_ui() : UINT64_MAX;
}

void fill_exact(OrbitStatistics& st, const std::vector<Rational>& law, const std::vector<Rational>& eps_grid) {
    Rational mean = 0, e2 = 0;
    for (std::size_t k = 0; k < law.size(); ++k) {
        mean += Rational(mpz_class(static_cast<unsigned long>(k))) * law[k];
        Rational p2;
        mpz_ui_pow_ui(p2.get_den_mpz_t(), 2, k);
        p2.get_num() = 1;
        p2.canonicalize();
        e2 += law[k] * p2;
    }
    st.size_law = law;
    st.mean_size_exact = mean;
    st.exp2_exact = e2;
    st.mean_size = mean.get_d();
    st.exp2 = e2.get_d();
    for (const auto& eps : eps_grid) {
        Rational t = tail_from_law(law, eps, st.n);
        st.tails.push_back({eps, t.get_d(), 0.0, t});
    }
}

void fill_mc(OrbitStatistics& st, const std::vector<std::uint64_t>& hist, const std::vector<Rational>& eps_grid) {
    double total = 0, s1 = 0, s2 = 0, e1 = 0, e2 = 0;
    for (std::size_t k = 0; k < hist.size(); ++k) {
        double c = static_cast<double>(hist[k]);
        double kk = static_cast<double>(k), p = std::ldexp(1.0, -static_cast<int>(k));
        total += c;
        s1 += c * kk;
        s2 += c * kk * kk;
        e1 += c * p;
        e2 += c * p * p;
    }
    st.size_hist = hist;
    const double nn = total;
    auto se = [nn](double m1, double m2) {
        if (nn < 2) return 0.0;
        double var = (m2 - m1 * m1 * nn) / (nn - 1);
        return std::sqrt(std::max(var, 0.0) / nn);
    };
    st.mean_size = s1 / nn;
    st.mean_size_se = se(s1 / nn, s2);
    st.exp2 = e1 / nn;
    st.exp2_se = se(e1 / nn, e2);
    for (const auto& eps : eps_grid) {
        std::uint64_t k = floor_times(eps, st.n);
        double hits = 0;
        for (std::size_t s = 0; s < hist.size() && s <= k; ++s) hits += static_cast<double>(hist[s]);
        double p = hits / nn;
        st.tails.push_back({eps, p, std::sqrt(p * (1 - p) / nn), std::nullopt});
    }
}

}  // namespace

Rational tail_from_law(const std::vector<Rational>& law, const Rational& eps, std::size_t n) {
    std::uint64_t k = floor_times(eps, n);
    Rational t = 0;
    for (std::size_t s = 0; s < law.size() && s <= k; ++s) t += law[s];
    return t;
}

std::vector<Rational> size_law_exact(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n,
                                     std::uint64_t budget, std::optional<std::size_t> cap) {
    validate_measure(oracle, nu);
    oracle.validate(x);
    if (!cap) {
        std::uint64_t need = checked_power(nu.atoms.size(), n, budget);
        if (need > budget)
            fail(ErrorKind::resource_limit, "exact enumeration needs " + std::to_string(nu.atoms.size()) + "^" +
                                                std::to_string(n) + " sequences, budget is " + std::to_string(budget));
        budget = UINT64_MAX;  // the node count is then bounded by the sequence count
    }
    return Enumerator(oracle, nu, x, n, cap, budget).run();
}

Rational tail_exact(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n, std::size_t k,
                    std::uint64_t budget) {
    if (k >= n + 1) return Rational(1);
    auto law = size_law_exact(oracle, nu, x, n, budget, k);
    Rational t = 0;
    for (std::size_t s = 0; s <= k && s < law.size(); ++s) t += law[s];
    return t;
}

OrbitStatistics orbit_statistics(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n,
                                 const OrbitOptions& opts) {
    if (!is_symmetric(oracle, nu)) fail(ErrorKind::config, "orbit statistics need a symmetric measure");
    if (opts.mode == Mode::mc) return orbit_statistics_mc_grid(oracle, nu, x, {n}, opts).front();
    OrbitStatistics st;
    st.n = n;
    st.mode = Mode::exact;
    fill_exact(st, size_law_exact(oracle, nu, x, n, opts.budget), opts.eps_grid);
    return st;
}

std::vector<OrbitStatistics> orbit_statistics_mc_grid(const ActionOracle& oracle, const RMeasure& nu, const Point& x,
                                                      const std::vector<std::size_t>& ns, const OrbitOptions& opts) {
    validate_measure(oracle, nu);
    oracle.validate(x);
    if (ns.empty()) return {};
    if (opts.samples == 0) fail(ErrorKind::config, "Monte Carlo needs samples >= 1");
    std::vector<std::size_t> grid = ns;
    std::sort(grid.begin(), grid.end());
    const std::size_t nmax = grid.back();
    const Sampler base(to_float(nu));
    using Hists = std::vector<std::vector<std::uint64_t>>;
    auto chunk = [&](std::size_t c) {
        Rng rng(stream_seed(opts.seed, c));
        Sampler sampler = base;
        Hists h(grid.size(), std::vector<std::uint64_t>(nmax + 2, 0));
        std::unordered_set<Point, PointHash> seen;
        Element s;
        Point y;
        for (std::size_t i = 0, m = chunk_size(opts.samples, c); i < m; ++i) {
            seen.clear();
            seen.insert(x);
            s = oracle.identity();
            std::size_t next = 0;
            while (next < grid.size() && grid[next] == 0) h[next++][1]++;
            for (std::size_t step = 1; step <= nmax; ++step) {
                oracle.right_multiply(s, sampler.draw(rng));
                y = x;
                oracle.act(s, y);
                seen.insert(y);
                while (next < grid.size() && grid[next] == step) h[next++][seen.size()]++;
            }
        }
        return h;
    };
    auto parts = run_chunks<Hists>(chunk_count(opts.samples), opts.threads, chunk);
    std::vector<OrbitStatistics> out;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<std::uint64_t> hist(grid[g] + 2, 0);
        for (const auto& p : parts)
            for (std::size_t k = 0; k < hist.size(); ++k) hist[k] += p[g][k];
        OrbitStatistics st;
        st.n = grid[g];
        st.mode = Mode::mc;
        st.samples = opts.samples;
        st.seed = opts.seed;
        fill_mc(st, hist, opts.eps_grid);
        out.push_back(std::move(st));
    }
    // back to the caller's order
    std::vector<OrbitStatistics> ordered;
    for (auto n : ns) ordered.push_back(*std::find_if(out.begin(), out.end(), [n](const auto& s) { return s.n == n; }));
    return ordered;
}

FeketeReport fekete_check(const ActionOracle& oracle, const RMeasure& nu, const Point& x, const Rational& eps,
                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const OrbitOptions& opts) {
    FeketeReport rep;
    rep.eps = eps;
    rep.mode = opts.mode;
    std::set<std::size_t> need;
    for (auto [n, m] : pairs) need.insert({n, m, n + m});
    OrbitOptions o = opts;
    o.eps_grid = {eps};
    std::map<std::size_t, OrbitStatistics> stats;
    if (opts.mode == Mode::exact) {
        for (auto n : need) stats.emplace(n, orbit_statistics(oracle, nu, x, n, o));
    } else {
        auto all = orbit_statistics_mc_grid(oracle, nu, x, {need.begin(), need.end()}, o);
        for (auto& s : all) stats.emplace(s.n, std::move(s));
    }
    for (auto [n, m] : pairs) {
        const auto& a = stats.at(n).tails.front();
        const auto& b = stats.at(m).tails.front();
        const auto& c = stats.at(n + m).tails.front();
        FeketeRow row;
        row.n = n;
        row.m = m;
        row.lhs = c.value;
        row.rhs = a.value * b.value;
        if (opts.mode == Mode::exact) {
            row.lhs_exact = *c.exact;
            row.rhs_exact = *a.exact * *b.exact;
            row.holds = *row.lhs_exact >= *row.rhs_exact;
        } else {
            // delta-method stderr of the difference; samples at different n share trajectories,
            // so the variances are added without a covariance credit
            double se_rhs = std::hypot(a.stderr_ * b.value, b.stderr_ * a.value);
            row.slack = 3 * std::hypot(c.stderr_, se_rhs);
            row.holds = row.lhs + row.slack >= row.rhs;
        }
        rep.ok = rep.ok && row.holds;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

SubadditivityReport subadditivity_check(const ActionOracle& oracle, const IncrementSequence& h,
                                        const IncrementSequence& t, const Point& x) {
    IncrementSequence ht = h;
    ht.insert(ht.end(), t.begin(), t.end());
    auto o_ht = inverted_orbit(oracle, ht, x);
    auto o_h = inverted_orbit(oracle, h, x);
    auto o_t = inverted_orbit(oracle, t, x);
    Element tt = oracle.identity();  // t_m ... t_1
    for (const auto& g : t) tt = oracle.multiply(g, tt);
    std::set<Point> rhs(o_t.points.begin(), o_t.points.end());
    for (auto p : o_h.points) {
        oracle.act(tt, p);
        rhs.insert(std::move(p));
    }
    SubadditivityReport rep;
    rep.size_concat = o_ht.size();
    rep.size_h = o_h.size();
    rep.size_t_ = o_t.size();
    rep.identity_holds = std::vector<Point>(rhs.begin(), rhs.end()) == o_ht.points;
    rep.bound_holds = o_ht.size() <= o_h.size() + o_t.size();
    return rep;
}

}  // namespace rwlab
