#include "rwlab/acceptance.hpp"

#include "rwlab/catalogue.hpp"
#include "rwlab/mc.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <random>

namespace rwlab {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::shared_ptr<const FiniteRelationAction> cycle_action(std::size_t n, std::vector<Rational> weights = {}) {
    auto space = std::make_shared<const FiniteRelationSpace>(FiniteRelationSpace::cycle(n, std::move(weights)));
    return std::make_shared<const FiniteRelationAction>(space);
}

// 1/2 id + 1/6 each of the shift, its inverse and the transposition
RMeasure lazy_cycle_measure(const ActionOracle& a) { return parse_measure(a, "id:1/2; s:1/6; S:1/6; t:1/6"); }

CriterionResult c1(const AcceptanceOptions&) {
    CriterionResult r{1, "inverted-orbit identity P(c_n = empty) = E 2^-|O_n|", true, "", Json::object(), 0};
    std::string worst;
    for (const char* sel : {"zd:1", "free:2"}) {
        auto t0 = Clock::now();
        auto oracle = parse_action(sel);
        auto nu = preset_measure(*oracle, "srw");
        Json rows = Json::array();
        bool ok = true;
        for (std::size_t n = 1; n <= 6; ++n) {
            auto rep = lamp_orbit_identity_check(oracle, nu, oracle->base_point(), n);
            ok = ok && rep.holds;
            rows.push_back(to_json(rep));
        }
        double secs = since(t0);
        r.report[sel] = rows;
        r.pass = r.pass && ok && secs < 10;
        worst += std::string(sel) + (ok ? " exact equality 1<=n<=6" : " MISMATCH") + " in " + fmt("%.2fs", secs) + "; ";
    }
    r.summary = worst;
    return r;
}

template <class F>
CriterionResult inequality_criterion(int id, const std::string& title, F check, double limit) {
    CriterionResult r{id, title, true, "", Json::array(), 0};
    auto t0 = Clock::now();
    auto action = cycle_action(8);
    auto nu = lazy_cycle_measure(*action);
    double min_margin = 1e300;
    std::size_t count = 0;
    for (const Rational& eps : {Rational(1, 4), Rational(1, 2)})
        for (std::size_t n = 1; n <= 4; ++n) {
            InequalityReport rep = check(action, nu, eps, n);
            r.pass = r.pass && rep.holds && rep.holds_rounded_up;
            min_margin = std::min(min_margin, rep.margin);
            r.report.push_back(to_json(rep));
            ++count;
        }
    double secs = since(t0);
    r.pass = r.pass && secs < limit;
    r.summary = std::to_string(count) + " cases, min margin " + fmt("%.4g", min_margin) + ", " + fmt("%.2fs", secs);
    return r;
}

CriterionResult c4(const AcceptanceOptions& opts) {
    CriterionResult r{4, "ProbLemma P(Bin(X,1/2) < eps n) <= P(X < 4 eps n) + exp(-eps n/2)", true, "", Json::object(), 0};
    auto t0 = Clock::now();
    Rng rng(stream_seed(opts.seed, 4));
    std::uniform_int_distribution<int> pick(0, 1000);
    std::size_t cases = 0, violations = 0;
    double min_margin = 1e300;
    Json worst;
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<std::vector<Rational>> dists;
        for (std::size_t k = 0; k <= n; ++k) {
            std::vector<Rational> d(n + 1, Rational(0));
            d[k] = 1;
            dists.push_back(d);
        }
        for (int s = 0; s < 20; ++s) {
            std::vector<long> w(n + 1);
            long total = 0;
            while (total == 0) {
                total = 0;
                for (auto& x : w) total += (x = pick(rng));
            }
            std::vector<Rational> d;
            for (auto x : w) d.emplace_back(x, total);
            for (auto& q : d) q.canonicalize();
            dists.push_back(d);
        }
        for (const Rational& eps : {Rational(1, 10), Rational(1, 4)})
            for (const auto& d : dists) {
                auto rep = problemma_check(n, eps, d);
                ++cases;
                if (!rep.holds) ++violations;
                if (rep.margin < min_margin) {
                    min_margin = rep.margin;
                    worst = to_json(rep);
                }
            }
    }
    double secs = since(t0);
    r.report["cases"] = cases;
    r.report["violations"] = violations;
    r.report["tightest"] = worst;
    r.pass = violations == 0 && secs < 30;
    r.summary = std::to_string(cases) + " distributions, " + std::to_string(violations) + " violations, min margin " +
                fmt("%.4g", min_margin) + ", " + fmt("%.2fs", secs);
    return r;
}

CriterionResult c5(const AcceptanceOptions& opts) {
    CriterionResult r{5, "Fekete supermultiplicativity and inverted-orbit subadditivity", true, "", Json::object(), 0};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t n = 1; n < 8; ++n)
        for (std::size_t m = 1; n + m <= 8; ++m) pairs.emplace_back(n, m);
    std::size_t rows = 0;
    for (const char* sel : {"zd:1", "free:2"}) {
        auto oracle = parse_action(sel);
        auto nu = preset_measure(*oracle, "srw");
        for (const Rational& eps : {Rational(1, 2), Rational(1)}) {
            OrbitOptions o;
            auto rep = fekete_check(*oracle, nu, oracle->base_point(), eps, pairs, o);
            r.pass = r.pass && rep.ok;
            rows += rep.rows.size();
            r.report["fekete"][std::string(sel) + " eps=" + to_string(eps)] = to_json(rep);
        }
    }
    std::size_t total = 0, violations = 0;
    std::uint64_t stream = 0;
    for (const char* sel : {"zd:1", "zd:2", "free:2", "wreath_z2_z"}) {
        auto oracle = parse_action(sel);
        Sampler s(to_float(preset_measure(*oracle, "lazy-srw")));
        Rng rng(stream_seed(opts.seed, 500 + stream++));
        std::uniform_int_distribution<std::size_t> len(0, 16);
        std::size_t v = 0;
        for (int i = 0; i < 2500; ++i) {
            IncrementSequence h(len(rng)), t(len(rng));
            for (auto& g : h) g = s.draw(rng);
            for (auto& g : t) g = s.draw(rng);
            auto rep = subadditivity_check(*oracle, h, t, oracle->base_point());
            if (!rep.ok()) ++v;
        }
        total += 2500;
        violations += v;
        r.report["subadditivity"][sel] = {{"pairs", 2500}, {"violations", v}};
    }
    r.pass = r.pass && violations == 0;
    r.summary = std::to_string(rows) + " exact Fekete rows; " + std::to_string(total) + " sampled pairs, " +
                std::to_string(violations) + " subadditivity violations";
    return r;
}

CriterionResult c6(const AcceptanceOptions& opts) {
    CriterionResult r{6, "decay_classify separates F2 (exponential) from lazy Z^2 (subexponential)", true, "", Json::object(), 0};
    auto t0 = Clock::now();
    const Rational quarter(1, 4);
    {
        auto f2 = parse_action("free:2");
        auto nu = preset_measure(*f2, "srw");
        const Point x = f2->base_point();
        std::vector<DecaySample> e2, tail;
        Json stats = Json::array();
        OrbitOptions ex;
        ex.eps_grid = {quarter};
        for (std::size_t n : {8, 12}) {
            auto st = orbit_statistics(*f2, nu, x, n, ex);
            e2.push_back({double(n), st.exp2, 0});
            tail.push_back({double(n), st.tails[0].value, 0});
            Json j = to_json(st);
            j.erase("size_law");
            stats.push_back(j);
        }
        OrbitOptions mc;
        mc.mode = Mode::mc;
        mc.samples = 1000000;
        mc.seed = stream_seed(opts.seed, 6);
        mc.threads = opts.threads;
        mc.eps_grid = {quarter};
        auto mcs = orbit_statistics_mc_grid(*f2, nu, x, {16, 20}, mc);
        Json cross = Json::array();
        for (const auto& st : mcs) {
            Rational exact_tail = tail_exact(*f2, nu, x, st.n, st.n / 4, 2000000000ULL);
            double tol = 3 * st.tails[0].stderr_ + 1.0 / double(mc.samples);
            bool ok = std::abs(st.tails[0].value - exact_tail.get_d()) <= tol;
            r.pass = r.pass && ok;
            cross.push_back({{"n", st.n}, {"exact", exact_value(exact_tail)}, {"mc", mc_value(st.tails[0].value, st.tails[0].stderr_)},
                             {"tolerance", tol}, {"holds", ok}});
            e2.push_back({double(st.n), st.exp2, st.exp2_se});
            tail.push_back({double(st.n), exact_tail.get_d(), 0});
            Json j = to_json(st);
            j.erase("size_hist");
            stats.push_back(j);
        }
        auto fe = decay_classify(e2);
        auto ft = decay_classify(tail);
        r.pass = r.pass && fe.verdict == Verdict::exponential && ft.verdict == Verdict::exponential;
        r.report["free:2"] = {{"statistics", stats}, {"tail_cross_check", cross},
                              {"fit_exp2_neg_size", to_json(fe)}, {"fit_tail_quarter", to_json(ft)}};
        r.summary = "F2: E2^-|O| " + std::string(verdict_name(fe.verdict)) + " (rate " + fmt("%.3f", fe.rate) +
                    "), tail " + verdict_name(ft.verdict) + " (rate " + fmt("%.3f", ft.rate) + "); ";
    }
    {
        auto z2 = parse_action("zd:2");
        auto nu = preset_measure(*z2, "lazy-srw");
        OrbitOptions mc;
        mc.mode = Mode::mc;
        mc.samples = 100000;
        mc.seed = stream_seed(opts.seed, 60);
        mc.threads = opts.threads;
        mc.eps_grid = {quarter};
        auto mcs = orbit_statistics_mc_grid(*z2, nu, z2->base_point(), {50, 100, 200, 400}, mc);
        std::vector<DecaySample> tail;
        Json stats = Json::array();
        for (const auto& st : mcs) {
            tail.push_back({double(st.n), st.tails[0].value, st.tails[0].stderr_});
            Json j = to_json(st);
            j.erase("size_hist");
            stats.push_back(j);
        }
        auto ft = decay_classify(tail);
        r.pass = r.pass && ft.verdict == Verdict::subexponential;
        r.report["zd:2 lazy"] = {{"statistics", stats}, {"fit_tail_quarter", to_json(ft)}};
        r.summary += "lazy Z^2 tail " + std::string(verdict_name(ft.verdict)) + " (rate " + fmt("%.2g", ft.rate) + ")";
    }
    double secs = since(t0);
    r.pass = r.pass && secs < 600;
    r.summary += "; " + fmt("%.1fs", secs);
    return r;
}

CriterionResult c7(const AcceptanceOptions&) {
    CriterionResult r{7, "spectral radius estimators for F2 and Z", true, "", Json::object(), 0};
    auto t0 = Clock::now();
    auto f2 = parse_action("free:2");
    // ratio at 2n = 64 is (p_66 / p_64)^{1/2}
    auto sf = spectral_radius(*f2, preset_measure(*f2, "srw"), f2->base_point(), 66, "distance-chain");
    double tf = since(t0);
    const double target = std::sqrt(3.0) / 2;
    double err = std::abs(sf.rho_ratio - target);
    auto z = parse_action("zd:1");
    auto sz = spectral_radius(*z, preset_measure(*z, "srw"), z->base_point(), 100, "exact");
    r.pass = err <= 0.02 && tf < 1 && sz.rho_root >= 0.97;
    r.report["free:2"] = {{"time", 64}, {"ratio", "sqrt(p66/p64)"}, {"value", sf.rho_ratio}, {"target", target}, {"error", err}, {"tolerance", 0.02}};
    r.report["zd:1"] = {{"time", 100}, {"root", sz.rho_root}, {"threshold", 0.97}};
    r.summary = "F2 sqrt(p66/p64) = " + fmt("%.6f", sf.rho_ratio) + " (|err| " + fmt("%.4f", err) + " <= 0.02, " +
                fmt("%.3fs", tf) + "); Z root at 100 = " + fmt("%.5f", sz.rho_root) + " >= 0.97";
    return r;
}

CriterionResult c8(const AcceptanceOptions&) {
    CriterionResult r{8, "Mohar sound direction 1 - rho <= Phi-hat + slack", true, "", Json::object(), 0};
    struct Case {
        const char* sel;
        std::size_t time;
        std::vector<std::size_t> radii;
    };
    std::size_t violations = 0;
    for (const Case& c : {Case{"zd:1", 100, {5, 10, 20, 50}}, Case{"zd:2", 60, {5, 10, 20}},
                          Case{"free:2", 64, {2, 3, 4, 5, 6}}, Case{"wreath_z2_z", 16, {2, 4, 6}}}) {
        auto oracle = parse_action(c.sel);
        auto nu = preset_measure(*oracle, "srw");
        auto sp = spectral_radius(*oracle, nu, oracle->base_point(), c.time, "auto", 50000000);
        auto ex = catalogue_expansion(*oracle, nu, c.radii);
        auto m = mohar_check(sp, ex.phi);
        if (!m.sound_holds) ++violations;
        Json j = to_json(m);
        j["time"] = c.time;
        j["method"] = sp.method;
        j["rho_root"] = sp.rho_root;
        j["witness_radius"] = c.radii[ex.witness];
        r.report[c.sel] = j;
        r.summary += std::string(c.sel) + " " + fmt("%.4f", m.one_minus_rho) + "<=" + fmt("%.4f", m.phi_hat) + "+" +
                     fmt("%.4f", m.slack) + "; ";
    }
    r.pass = violations == 0;
    r.summary += std::to_string(violations) + " violations";
    return r;
}

CriterionResult c9(const AcceptanceOptions& opts) {
    CriterionResult r{9, "linear-radius decay: F2 exponential, lazy Z2 wr Z subexponential at r = 1/8", true, "", Json::object(), 0};
    auto t0 = Clock::now();
    const std::vector<Rational> rs{Rational(1, 8)};
    struct Case {
        const char* sel;
        const char* measure;
        std::vector<std::size_t> grid;
        Verdict expect;
    };
    for (const Case& c : {Case{"free:2", "srw", {16, 32, 48, 64, 80}, Verdict::exponential},
                          Case{"wreath_z2_z", "lazy-srw", {25, 50, 100, 200, 400}, Verdict::subexponential}}) {
        auto oracle = parse_action(c.sel);
        auto nu = preset_measure(*oracle, c.measure);
        const std::uint64_t seed = stream_seed(opts.seed, c.expect == Verdict::exponential ? 9 : 90);
        auto rep = linear_radius_decay(*oracle, nu, rs, c.grid, 1000000, seed, opts.threads);
        auto small = linear_radius_decay(*oracle, nu, rs, {4, 8, 12}, 100000, stream_seed(seed, 1), opts.threads);
        kesten_cross_check(small, *oracle, nu, 12);
        bool cross = true;
        for (const auto& k : small.cross_checks) cross = cross && k.holds;
        const auto& fit = rep.fits.front();
        r.pass = r.pass && fit.verdict == c.expect && cross && small.cross_checks.size() == 3;
        r.report[c.sel] = {{"measure", c.measure}, {"decay", to_json(rep)}, {"small_n_cross_check", to_json(small)}};
        r.summary += std::string(c.sel) + " " + verdict_name(fit.verdict) + " (rate " + fmt("%.3g", fit.rate) + ", cross-check " +
                     (cross ? "ok" : "FAILED") + "); ";
    }
    double secs = since(t0);
    r.pass = r.pass && secs < 900;
    r.summary += fmt("%.1fs", secs);
    return r;
}

CriterionResult c10(const AcceptanceOptions&) {
    CriterionResult r{10, "Liouville synthesis audit on Z with T = +1, depth 3", true, "", Json::object(), 0};
    auto z = parse_action("zd:1");
    SynthConfig cfg;
    cfg.oracle = z;
    cfg.t = z->parse_element("x");
    cfg.nu0 = preset_measure(*z, "lazy-srw");
    cfg.depth = 3;
    cfg.weights = geometric_weights(3);
    cfg.family = shift_uniform_family(z, cfg.t);
    auto res = synthesize(cfg);
    bool tv = true;
    for (const auto& s : res.state.steps) tv = tv && !s.tv.skipped && s.tv.holds;
    auto probe = liouville_probe_line(line_measure(res.nu), 0, 2, res.state.steps.back().m);
    probe_bounds(probe, res.state, cfg.family);
    bool probe_ok = probe.checks.size() == res.state.steps.size();
    for (const auto& c : probe.checks) probe_ok = probe_ok && c.verdict == "pass";
    r.pass = res.state.ok && tv && probe_ok;
    r.report["synthesis"] = to_json(res.state);
    r.report["probe"] = to_json(probe);
    std::string ms, ns;
    for (const auto& s : res.state.steps) {
        ms += (ms.empty() ? "" : ",") + std::to_string(s.m);
        ns += (ns.empty() ? "" : ",") + std::to_string(s.n);
    }
    r.summary = "m_j = " + ms + ", n_j = " + ns + ", ledger " + (res.state.ok && tv ? "ok" : "FAILED") +
                ", probe at m_J " + fmt("%.4f", probe.checks.empty() ? -1.0 : probe.checks.back().distance) + " < " +
                fmt("%.4f", probe.checks.empty() ? -1.0 : probe.checks.back().bound);
    return r;
}

CriterionResult c11(const AcceptanceOptions&) {
    CriterionResult r{11, "non-SIN witness on the 8-cycle lamplighter", true, "", Json::array(), 0};
    std::vector<Rational> w(8, Rational(5, 32));
    w[0] = w[1] = Rational(1, 32);
    auto action = cycle_action(8, w);
    for (const Rational& rad : {Rational(1, 4), Rational(1, 8)}) {
        auto rep = sin_defect_witness(action, rad);
        bool ok = rep.found && rep.support_mass < rad && rep.displacement == 2;
        r.pass = r.pass && ok;
        r.report.push_back(to_json(rep));
        r.summary += "r=" + to_string(rad) + ": " +
                     (rep.found ? "g=" + format_cycles(rep.g) + " mu(supp g)=" + to_string(rep.support_mass) +
                                      " d_C(c,gc)=" + to_string(rep.displacement)
                                : std::string("none")) +
                     "; ";
    }
    return r;
}

CriterionResult dispatch(int id, const AcceptanceOptions& opts) {
    switch (id) {
    case 1: return c1(opts);
    case 2:
        return inequality_criterion(
            2, "(1-eps) P(d_C(c_n,0) < eps) <= sum mu(x) E 2^-|O_n(x)|",
            [](auto a, const RMeasure& nu, const Rational& e, std::size_t n) { return thm1_inequality(a, nu, e, n); }, 60);
    case 3:
        return inequality_criterion(
            3, "1/2 P(d_C(c_n,0) < eps n/2) - exp(-eps n/2) <= sum mu(x) P(|O_n(x)| <= 4 eps n)",
            [](auto a, const RMeasure& nu, const Rational& e, std::size_t n) { return thm2_inequality(a, nu, e, n); }, 60);
    case 4: return c4(opts);
    case 5: return c5(opts);
    case 6: return c6(opts);
    case 7: return c7(opts);
    case 8: return c8(opts);
    case 9: return c9(opts);
    case 10: return c10(opts);
    case 11: return c11(opts);
    default: fail(ErrorKind::config, "no criterion " + std::to_string(id));
    }
}

const std::vector<int> mc_criteria{5, 6, 9};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
    auto t0 = Clock::now();
    CriterionResult r;
    try {
        r = dispatch(id, opts);
    } catch (const std::exception& e) {
        r.id = id;
        r.title = "criterion " + std::to_string(id);
        r.pass = false;
        r.summary = std::string("error: ") + e.what();
    }
    r.seconds = since(t0);
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_done) {
    std::vector<int> ids = opts.only;
    if (ids.empty())
        for (int i = 1; i <= criterion_count; ++i) ids.push_back(i);
    std::vector<CriterionResult> out;
    std::map<int, std::string> first;
    for (int id : ids) {
        if (id != 12) {
            out.push_back(run_criterion(id, opts));
            first[id] = dump(out.back().report);
            if (on_done) on_done(out.back());
            continue;
        }
        auto t0 = Clock::now();
        CriterionResult r{12, "determinism: Monte Carlo reports replay byte-identically", true, "", Json::object(), 0};
        for (int m : mc_criteria) {
            if (!first.count(m)) first[m] = dump(run_criterion(m, opts).report);
            std::string again = dump(run_criterion(m, opts).report);
            bool same = again == first[m];
            r.pass = r.pass && same;
            r.report[std::to_string(m)] = {{"bytes", again.size()}, {"identical", same}};
            r.summary += "criterion " + std::to_string(m) + (same ? " identical" : " DIFFERS") + " (" +
                         std::to_string(again.size()) + " bytes); ";
        }
        r.seconds = since(t0);
        out.push_back(r);
        if (on_done) on_done(out.back());
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "[%s] %2d ", r.pass ? "PASS" : "FAIL", r.id);
    return head + r.title + " :: " + r.summary + " [" + fmt("%.1fs", r.seconds) + "]";
}

}  // namespace rwlab
