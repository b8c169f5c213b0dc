#include "rwlab/spectral.hpp"

#include "rwlab/catalogue.hpp"
#include "rwlab/mc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace rwlab {

namespace {

template <class W>
std::vector<W> evolve_returns(const ActionOracle& oracle, const Measure<W>& nu, const Point& x, std::size_t n_max,
                              std::size_t budget) {
    validate_measure(oracle, nu);
    auto d = point_mass<W>(oracle, x);
    std::vector<W> out{W(1)};
    std::size_t work = 0;
    for (std::size_t k = 1; k <= n_max; ++k) {
        work += d.mass.size() * nu.atoms.size();
        if (work > budget)
            fail(ErrorKind::resource_limit, "return probability evolution exceeds budget at n = " + std::to_string(k));
        d = step(oracle, d, nu);
        out.push_back(d.at(x));
    }
    return out;
}

bool length_within(std::int64_t len, std::size_t n, const Rational& r) {
    // len <= r n
    return Rational(mpz_class(static_cast<long>(len))) <= r * Rational(mpz_class(static_cast<unsigned long>(n)));
}

}  // namespace

std::vector<Rational> return_sequence_exact(const ActionOracle& oracle, const RMeasure& nu, const Point& x,
                                            std::size_t n_max, std::size_t budget) {
    return evolve_returns(oracle, nu, x, n_max, budget);
}

std::vector<double> return_sequence_float(const ActionOracle& oracle, const RMeasure& nu, const Point& x,
                                          std::size_t n_max, std::size_t budget) {
    validate_measure(oracle, nu);
    return evolve_returns(oracle, to_float(nu), x, n_max, budget);
}

ReturnProbability return_probability(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n,
                                     Mode mode, std::size_t samples, std::uint64_t seed, std::size_t threads,
                                     std::size_t budget) {
    ReturnProbability rp;
    rp.n = n;
    rp.mode = mode;
    if (mode == Mode::exact) {
        Rational p = return_sequence_exact(oracle, nu, x, n, budget).back();
        rp.exact = p;
        rp.value = p.get_d();
        return rp;
    }
    validate_measure(oracle, nu);
    oracle.validate(x);
    if (samples == 0) fail(ErrorKind::config, "Monte Carlo needs samples >= 1");
    const Sampler base(to_float(nu));
    auto chunk = [&](std::size_t c) {
        Rng rng(stream_seed(seed, c));
        Sampler s = base;
        std::uint64_t hits = 0;
        for (std::size_t i = 0, m = chunk_size(samples, c); i < m; ++i) {
            Element g = oracle.identity();
            for (std::size_t k = 0; k < n; ++k) oracle.right_multiply(g, s.draw(rng));
            Point y = x;
            oracle.act(g, y);
            hits += y == x;
        }
        return hits;
    };
    std::uint64_t hits = 0;
    for (auto h : run_chunks<std::uint64_t>(chunk_count(samples), threads, chunk)) hits += h;
    const double nn = static_cast<double>(samples);
    rp.value = static_cast<double>(hits) / nn;
    rp.stderr_ = std::sqrt(rp.value * (1 - rp.value) / nn);
    return rp;
}

std::vector<std::vector<Rational>> free_distance_laws(std::size_t k, std::size_t n_max) {
    if (k == 0) fail(ErrorKind::config, "free group rank must be at least 1");
    const Rational up(2 * static_cast<unsigned long>(k) - 1, 2 * static_cast<unsigned long>(k));
    const Rational down(1, 2 * static_cast<unsigned long>(k));
    std::vector<std::vector<Rational>> laws{{Rational(1)}};
    for (std::size_t n = 1; n <= n_max; ++n) {
        const auto& prev = laws.back();
        std::vector<Rational> next(prev.size() + 1);
        for (std::size_t d = 0; d < prev.size(); ++d) {
            if (prev[d] == 0) continue;
            if (d == 0) {
                next[1] += prev[0];
            } else {
                next[d + 1] += prev[d] * up;
                next[d - 1] += prev[d] * down;
            }
        }
        laws.push_back(std::move(next));
    }
    return laws;
}

bool is_free_srw(const ActionOracle& oracle, const RMeasure& nu) {
    if (!dynamic_cast<const FreeGroupAction*>(&oracle)) return false;
    auto srw = preset_measure(oracle, "srw");
    return srw.atoms == nu.atoms && nu.defect == 0;
}

SpectralReport spectral_from_sequence(std::string method, const std::vector<double>& p,
                                      const std::vector<Rational>* exact) {
    SpectralReport rep;
    rep.method = std::move(method);
    for (std::size_t t = 0; t < p.size(); t += 2) {
        SpectralRow row;
        row.time = t;
        row.p = p[t];
        if (exact) row.exact = (*exact)[t];
        row.root = t == 0 ? 1.0 : std::pow(p[t], 1.0 / static_cast<double>(t));
        if (t >= 2 && p[t - 2] > 0) row.ratio = std::sqrt(p[t] / p[t - 2]);
        rep.rows.push_back(std::move(row));
    }
    if (!rep.rows.empty()) {
        rep.rho_root = rep.rows.back().root;
        rep.rho_ratio = rep.rows.size() > 1 ? rep.rows.back().ratio : 1.0;
        rep.estimator_gap = rep.rho_ratio - rep.rho_root;
    }
    return rep;
}

SpectralReport spectral_radius(const ActionOracle& oracle, const RMeasure& nu, const Point& x, std::size_t n_max,
                               std::string_view method, std::size_t budget) {
    if (!is_symmetric(oracle, nu)) fail(ErrorKind::config, "spectral radius needs a symmetric measure");
    std::string m(method);
    if (m == "auto") m = is_free_srw(oracle, nu) && oracle.acts_on_itself() && x == oracle.base_point() ? "distance-chain" : "exact";
    if (m == "distance-chain") {
        auto* free = dynamic_cast<const FreeGroupAction*>(&oracle);
        if (!free || !is_free_srw(oracle, nu) || !(x == oracle.base_point()))
            fail(ErrorKind::config, "distance chain needs free-group SRW from the identity");
        auto laws = free_distance_laws(free->rank(), n_max);
        std::vector<Rational> ex;
        std::vector<double> p;
        for (const auto& l : laws) {
            ex.push_back(l[0]);
            p.push_back(l[0].get_d());
        }
        return spectral_from_sequence(m, p, &ex);
    }
    if (m == "exact") {
        auto ex = return_sequence_exact(oracle, nu, x, n_max, budget);
        std::vector<double> p;
        for (const auto& q : ex) p.push_back(q.get_d());
        return spectral_from_sequence(m, p, &ex);
    }
    if (m == "float") return spectral_from_sequence(m, return_sequence_float(oracle, nu, x, n_max, budget));
    fail(ErrorKind::config, "unknown spectral method '" + m + "'");
}

std::size_t Network::index(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    fail(ErrorKind::config, "no vertex '" + std::string(label) + "'");
}

namespace {

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Network network_from_csv(std::string_view text) {
    Network net;
    std::unordered_map<std::string, std::size_t> id;
    auto vertex = [&](const std::string& s) {
        auto [it, fresh] = id.emplace(s, net.labels.size());
        if (fresh) net.labels.push_back(s);
        return it->second;
    };
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string item;
        while (std::getline(ls, item, ',')) f.push_back(trim(item));
        if (f.size() != 3) fail(ErrorKind::encoding, "edge list line " + std::to_string(lineno) + " needs src,dst,conductance");
        double c = 0;
        try {
            std::size_t used = 0;
            c = std::stod(f[2], &used);
            if (used != f[2].size()) throw 0;
        } catch (...) {
            if (lineno == 1) continue;  // header
            fail(ErrorKind::encoding, "bad conductance on line " + std::to_string(lineno));
        }
        if (!(c >= 0)) fail(ErrorKind::encoding, "negative conductance on line " + std::to_string(lineno));
        std::size_t a = vertex(f[0]), b = vertex(f[1]);
        net.edges.push_back({a, b, c});
    }
    net.size = net.labels.size();
    net.pi.assign(net.size, 0.0);
    for (const auto& e : net.edges) {
        net.pi[e.a] += e.c;
        if (e.b != e.a) net.pi[e.b] += e.c;
    }
    net.boundary.assign(net.size, false);
    for (std::size_t i = 0; i < net.size; ++i)
        if (!(net.pi[i] > 0)) fail(ErrorKind::encoding, "vertex '" + net.labels[i] + "' has no conductance");
    return net;
}

Network network_from_ball(const ActionOracle& oracle, const RMeasure& nu, const SchreierBall& ball) {
    if (!is_symmetric(oracle, nu)) fail(ErrorKind::config, "transition network needs a symmetric measure");
    Network net;
    net.size = ball.points.size();
    net.pi.assign(net.size, 1.0);
    net.boundary.assign(net.size, false);
    std::unordered_map<Point, std::size_t, PointHash> index;
    for (std::size_t i = 0; i < net.size; ++i) {
        index.emplace(ball.points[i], i);
        net.labels.push_back(oracle.format_point(ball.points[i]));
        net.boundary[i] = ball.depth[i] == ball.radius;
    }
    std::map<std::pair<std::size_t, std::size_t>, double> c;
    for (std::size_t i = 0; i < net.size; ++i)
        for (const auto& [g, w] : nu.atoms) {
            Point y = ball.points[i];
            oracle.act(g, y);
            auto it = index.find(y);
            if (it == index.end() || it->second <= i) continue;
            c[{i, it->second}] += w.get_d();
        }
    for (const auto& [e, w] : c) net.edges.push_back({e.first, e.second, w});
    return net;
}

double set_expansion(const Network& net, const std::vector<std::size_t>& s, bool* touches) {
    if (s.empty()) fail(ErrorKind::config, "expansion of the empty set");
    std::vector<char> in(net.size, 0);
    double vol = 0;
    bool t = false;
    for (auto v : s) {
        if (v >= net.size) fail(ErrorKind::config, "vertex index out of range");
        if (in[v]) continue;
        in[v] = 1;
        vol += net.pi[v];
        t = t || net.boundary[v];
    }
    double cut = 0;
    for (const auto& e : net.edges)
        if (in[e.a] != in[e.b]) cut += e.c;
    if (touches) *touches = t;
    return cut / vol;
}

Expansion edge_expansion(const Network& net, const std::vector<std::vector<std::size_t>>& candidates) {
    if (candidates.empty()) fail(ErrorKind::config, "candidate family is empty");
    Expansion best;
    best.phi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool touches = false;
        double phi = set_expansion(net, candidates[i], &touches);
        if (phi < best.phi) {
            best.phi = phi;
            best.witness = i;
            best.witness_set = candidates[i];
            best.touches_boundary = touches;
        }
    }
    return best;
}

Expansion oracle_expansion(const ActionOracle& oracle, const RMeasure& nu,
                           const std::vector<std::vector<Point>>& candidates) {
    if (candidates.empty()) fail(ErrorKind::config, "candidate family is empty");
    const FMeasure f = to_float(nu);
    Expansion best;
    best.phi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        std::unordered_set<Point, PointHash> s(candidates[i].begin(), candidates[i].end());
        if (s.empty()) continue;
        double out = 0;
        for (const auto& x : s)
            for (const auto& [g, w] : f.atoms) {
                Point y = x;
                oracle.act(g, y);
                if (!s.count(y)) out += w;
            }
        double phi = out / static_cast<double>(s.size());
        if (phi < best.phi) {
            best.phi = phi;
            best.witness = i;
        }
    }
    if (!std::isfinite(best.phi)) fail(ErrorKind::config, "every candidate set is empty");
    return best;
}

Expansion catalogue_expansion(const ActionOracle& oracle, const RMeasure& nu, const std::vector<std::size_t>& radii) {
    std::vector<std::vector<Point>> cands;
    for (auto r : radii) cands.push_back(oracle.folner_candidate(r));
    return oracle_expansion(oracle, nu, cands);
}

MoharReport mohar_check(const SpectralReport& spectral, double phi_hat, double stderr_) {
    MoharReport rep;
    rep.rho_hat = spectral.rho_ratio;
    rep.phi_hat = phi_hat;
    // both estimators sit below rho for reversible walks; their gap bounds the finite-n bias
    rep.slack = std::max(0.0, spectral.estimator_gap) + 3 * stderr_ + 1e-12;
    rep.one_minus_rho = 1 - rep.rho_hat;
    rep.lower_lhs = phi_hat >= 1 ? 1.0 : 1 - std::sqrt(1 - phi_hat * phi_hat);
    rep.sound_holds = rep.one_minus_rho <= phi_hat + rep.slack;
    rep.lower_holds = rep.lower_lhs <= rep.one_minus_rho + rep.slack;
    rep.margin = phi_hat + rep.slack - rep.one_minus_rho;
    return rep;
}

namespace {

using Counts = std::vector<std::vector<std::uint64_t>>;

template <class State, class Step, class Within>
Counts run_length_mc(std::size_t n_count, std::size_t r_count, const std::vector<std::size_t>& grid,
                     std::size_t samples, std::uint64_t seed, std::size_t threads, const State& start,
                     const Step& step_fn, const Within& within) {
    const std::size_t nmax = grid.back();
    auto chunk = [&](std::size_t c) {
        Rng rng(stream_seed(seed, c));
        Counts h(n_count, std::vector<std::uint64_t>(r_count, 0));
        for (std::size_t i = 0, m = chunk_size(samples, c); i < m; ++i) {
            State s = start;
            std::size_t next = 0;
            for (std::size_t k = 0; k <= nmax; ++k) {
                if (k > 0) step_fn(s, rng);
                while (next < grid.size() && grid[next] == k) {
                    for (std::size_t r = 0; r < r_count; ++r) h[next][r] += within(s, k, r);
                    ++next;
                }
            }
        }
        return h;
    };
    Counts total(n_count, std::vector<std::uint64_t>(r_count, 0));
    for (const auto& p : run_chunks<Counts>(chunk_count(samples), threads, chunk))
        for (std::size_t a = 0; a < n_count; ++a)
            for (std::size_t b = 0; b < r_count; ++b) total[a][b] += p[a][b];
    return total;
}

void fill_kesten(KestenDecayReport& rep, const Counts& counts) {
    const double nn = static_cast<double>(rep.samples);
    for (std::size_t a = 0; a < rep.n_grid.size(); ++a)
        for (std::size_t b = 0; b < rep.r_grid.size(); ++b) {
            KestenCell cell;
            cell.n = rep.n_grid[a];
            cell.r = rep.r_grid[b];
            cell.hits = counts[a][b];
            cell.value = static_cast<double>(cell.hits) / nn;
            cell.stderr_ = std::sqrt(cell.value * (1 - cell.value) / nn);
            rep.cells.push_back(cell);
        }
    for (std::size_t b = 0; b < rep.r_grid.size(); ++b) {
        std::vector<DecaySample> s;
        std::string note;
        for (std::size_t a = 0; a < rep.n_grid.size(); ++a) {
            const auto& cell = rep.cells[a * rep.r_grid.size() + b];
            if (cell.hits == 0 && note.empty()) note = "no hits at n = " + std::to_string(cell.n);
            s.push_back({static_cast<double>(cell.n), cell.value, cell.stderr_});
        }
        DecayRateEstimate est;
        est.samples = s;
        if (note.empty() && s.size() >= 4)
            est = decay_classify(s);
        else if (note.empty())
            note = "fewer than 4 grid points";
        rep.fits.push_back(std::move(est));
        rep.fit_notes.push_back(note);
    }
}

std::vector<std::size_t> sorted_grid(const std::vector<std::size_t>& ns) {
    if (ns.empty()) fail(ErrorKind::config, "n grid is empty");
    std::vector<std::size_t> g = ns;
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace

KestenDecayReport linear_radius_decay(const ActionOracle& oracle, const RMeasure& nu, const std::vector<Rational>& r_grid,
                                      const std::vector<std::size_t>& n_grid, std::size_t samples, std::uint64_t seed,
                                      std::size_t threads) {
    validate_measure(oracle, nu);
    if (!oracle.acts_on_itself() || !oracle.word_length(oracle.identity()))
        fail(ErrorKind::config, oracle.name() + " has no word-length metric");
    if (samples == 0) fail(ErrorKind::config, "Monte Carlo needs samples >= 1");
    if (r_grid.empty()) fail(ErrorKind::config, "r grid is empty");
    KestenDecayReport rep;
    rep.metric = "word-length";
    rep.r_grid = r_grid;
    rep.n_grid = sorted_grid(n_grid);
    rep.samples = samples;
    rep.seed = seed;
    const Sampler base(to_float(nu));
    // each chunk gets its own sampler copy through the step closure below
    auto counts = run_length_mc(
        rep.n_grid.size(), r_grid.size(), rep.n_grid, samples, seed, threads,
        std::pair<Element, Sampler>{oracle.identity(), base},
        [&](std::pair<Element, Sampler>& s, Rng& rng) { oracle.right_multiply(s.first, s.second.draw(rng)); },
        [&](const std::pair<Element, Sampler>& s, std::size_t n, std::size_t r) {
            return length_within(*oracle.word_length(s.first), n, r_grid[r]);
        });
    fill_kesten(rep, counts);
    return rep;
}

KestenDecayReport linear_radius_decay_lamp(const LampContext& ctx, const SwsMeasure& nu_hat,
                                           const std::vector<Rational>& r_grid, const std::vector<std::size_t>& n_grid,
                                           std::size_t samples, std::uint64_t seed, std::size_t threads) {
    if (ctx.kind() != LampKind::relation) fail(ErrorKind::config, "the D metric needs a relation lamplighter");
    if (samples == 0) fail(ErrorKind::config, "Monte Carlo needs samples >= 1");
    if (r_grid.empty()) fail(ErrorKind::config, "r grid is empty");
    KestenDecayReport rep;
    rep.metric = "D=d_C+d_R";
    rep.r_grid = r_grid;
    rep.n_grid = sorted_grid(n_grid);
    rep.samples = samples;
    rep.seed = seed;
    std::vector<LampState> atoms;
    std::vector<double> w;
    for (const auto& [s, p] : nu_hat.atoms) {
        atoms.push_back(s);
        w.push_back(p.get_d());
    }
    const std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    const LampState id = lamp_identity(ctx);
    auto counts = run_length_mc(
        rep.n_grid.size(), r_grid.size(), rep.n_grid, samples, seed, threads,
        std::pair<LampState, std::discrete_distribution<std::size_t>>{id, pick},
        [&](auto& s, Rng& rng) { s.first = lamp_multiply(ctx, s.first, atoms[s.second(rng)]); },
        [&](const auto& s, std::size_t n, std::size_t r) {
            return lamp_distance(ctx, s.first, id) <= r_grid[r] * Rational(mpz_class(static_cast<unsigned long>(n)));
        });
    fill_kesten(rep, counts);
    return rep;
}

Rational length_tail_exact(const ActionOracle& oracle, const RMeasure& nu, std::size_t n, const Rational& r,
                           std::size_t budget) {
    if (is_free_srw(oracle, nu)) {
        auto* free = dynamic_cast<const FreeGroupAction*>(&oracle);
        auto laws = free_distance_laws(free->rank(), n);
        Rational p = 0;
        for (std::size_t d = 0; d < laws[n].size(); ++d)
            if (length_within(static_cast<std::int64_t>(d), n, r)) p += laws[n][d];
        return p;
    }
    if (!oracle.acts_on_itself() || !oracle.word_length(oracle.identity()))
        fail(ErrorKind::config, oracle.name() + " has no word-length metric");
    validate_measure(oracle, nu);
    const Point base{oracle.identity().code};
    auto d = point_mass<Rational>(oracle, base);
    std::size_t work = 0;
    for (std::size_t k = 0; k < n; ++k) {
        work += d.mass.size() * nu.atoms.size();
        if (work > budget) fail(ErrorKind::resource_limit, "exact length law exceeds budget at n = " + std::to_string(k));
        d = step(oracle, d, nu);
    }
    Rational p = 0;
    for (const auto& [x, w] : d.mass)
        if (length_within(*oracle.word_length(Element{x.code}), n, r)) p += w;
    return p;
}

void kesten_cross_check(KestenDecayReport& rep, const ActionOracle& oracle, const RMeasure& nu, std::size_t n_exact) {
    const double nn = static_cast<double>(rep.samples);
    for (const auto& cell : rep.cells) {
        if (cell.n > n_exact) continue;
        KestenCheck c;
        c.n = cell.n;
        c.r = cell.r;
        c.exact = length_tail_exact(oracle, nu, cell.n, cell.r).get_d();
        c.mc = cell.value;
        c.tolerance = 3 * std::sqrt(c.exact * (1 - c.exact) / nn) + 1 / nn;
        c.holds = std::abs(c.mc - c.exact) <= c.tolerance;
        rep.cross_checks.push_back(c);
    }
}

}  // namespace rwlab
