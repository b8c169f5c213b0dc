// rwlab: experiment runner. Every subcommand writes one JSON report (or a CSV
// projection) and exits 0 ok, 1 usage, 2 resource limit, 3 invariant violation.
#include "rwlab/acceptance.hpp"
#include "rwlab/catalogue.hpp"
#include "rwlab/mc.hpp"
#include "rwlab/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace rwlab;

namespace {

struct Common {
    std::string action = "zd:1";
    std::string measure = "srw";
    std::string mode = "exact";
    std::string format = "json";
    std::string out;
    std::string x;
    std::uint64_t seed = 0;
    std::size_t samples = 10000;
    std::size_t threads = 0;
    std::uint64_t budget = 100000000;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::config, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Mode parse_mode(const std::string& m) {
    if (m == "exact") return Mode::exact;
    if (m == "mc") return Mode::mc;
    fail(ErrorKind::config, "mode must be exact or mc, not '" + m + "'");
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& v) {
    std::vector<Rational> out;
    for (const auto& s : v) out.push_back(parse_rational(s));
    return out;
}

Point point_or_base(const ActionOracle& a, const std::string& s) { return s.empty() ? a.base_point() : a.parse_point(s); }

std::shared_ptr<const FiniteRelationAction> relation_action(const OraclePtr& a) {
    auto r = std::dynamic_pointer_cast<const FiniteRelationAction>(a);
    if (!r) fail(ErrorKind::config, "this operation needs --action finite_relation:...");
    return r;
}

class Runner {
public:
    explicit Runner(CLI::App& app) : app_(app) {}

    void add_common(CLI::App* sub, Common& c, bool mc_options) {
        sub->add_option("--action", c.action, "zd:D, free:K, wreath_z2_z, thompson_f_dyadic, finite_relation:cycle:N, finite_relation:file:PATH")
            ->capture_default_str();
        sub->add_option("--measure", c.measure, "srw, lazy-srw, uniform-ball:R, or word:weight entries joined by ';'")
            ->capture_default_str();
        sub->add_option("--x", c.x, "base point (default: the action's base point)");
        sub->add_option("--out", c.out, "output file (default stdout)");
        sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
        sub->add_option("--budget", c.budget, "work budget for exact enumeration")->capture_default_str();
        if (mc_options) {
            sub->add_option("--mode", c.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
            sub->add_option("--samples", c.samples, "Monte Carlo samples")->capture_default_str();
            sub->add_option("--seed", c.seed, "master seed (drawn and reported when omitted)");
        }
        sub->add_option("--threads", c.threads, "worker threads (default RWLAB_THREADS or hardware)");
    }

    // seed drawn when absent; returns the effective seed
    std::uint64_t seed(CLI::App* sub, Common& c, bool needed) {
        if (needed && sub->count("--seed") == 0) {
            c.seed = draw_seed();
            std::cerr << "seed: " << c.seed << "\n";
        }
        return c.seed;
    }

    std::size_t threads(const Common& c) const { return c.threads ? c.threads : default_threads(); }

    Json spec(CLI::App* sub, const Common& c, bool mc) const {
        Json s;
        s["subcommand"] = sub->get_name();
        for (const auto* opt : sub->get_options()) {
            const std::string name = opt->get_single_name();
            if (name.empty() || name == "help" || name == "out" || name == "threads" || name == "seed") continue;
            if (opt->count() > 0) {
                auto r = opt->results();
                s[name] = opt->get_items_expected_max() > 1 ? Json(r) : Json(r.front());
            } else if (!opt->get_default_str().empty()) {
                s[name] = opt->get_default_str();
            }
        }
        if (mc) s["seed"] = c.seed;
        return s;
    }

    void emit(const Common& c, const std::string& text) const {
        if (c.out.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(c.out, std::ios::binary);
        if (!f) fail(ErrorKind::config, "cannot write '" + c.out + "'");
        f << text;
    }

private:
    CLI::App& app_;
};

// --config FILE: key=value lines become flags placed before the command-line
// flags, so the command line wins.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::vector<std::string> out;
    std::string path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;
    std::ifstream in(path);
    if (!in) fail(ErrorKind::config, "cannot read config '" + path + "'");
    auto items = CLI::ConfigTOML().from_config(in);
    std::set<std::string> given;
    for (const auto& a : rest)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    std::vector<std::string> injected;
    for (const auto& it : items) {
        if (it.name.empty() || it.name == "++" || it.name == "--" || given.count(it.name)) continue;
        injected.push_back("--" + it.name);
        std::string joined;
        for (std::size_t k = 0; k < it.inputs.size(); ++k) joined += (k ? "," : "") + it.inputs[k];
        injected.push_back(joined);
    }
    // subcommand first, then file flags, then command-line flags
    if (rest.empty()) return injected;
    out.push_back(rest.front());
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), rest.begin() + 1, rest.end());
    return out;
}

std::string csv_rows(const std::vector<std::vector<std::string>>& rows) {
    std::string s;
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
        s += "\n";
    }
    return s;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rwlab: random walks on group actions", "rwlab"};
    app.require_subcommand(1);
    app.add_option("--config", "key=value file mirroring the flags; flags override it");
    Runner run(app);

    Common wc, ic, lc, vc, sc;
    std::size_t walk_n = 1, walk_ball = 0;
    auto* walk = app.add_subcommand("walk", "law of X_n x, or a Schreier ball with --ball");
    run.add_common(walk, wc, true);
    walk->add_option("--n", walk_n, "steps")->capture_default_str();
    walk->add_option("--ball", walk_ball, "export the Schreier ball of this radius instead");

    std::vector<std::size_t> io_n{10};
    std::vector<std::string> io_eps{"1/16", "1/8", "1/4", "1/2"};
    auto* inv = app.add_subcommand("inverted-orbit", "statistics of |O_n(x)|");
    run.add_common(inv, ic, true);
    inv->add_option("--n", io_n, "one or more n (comma separated)")->delimiter(',')->capture_default_str();
    inv->add_option("--eps", io_eps, "tail thresholds")->delimiter(',')->capture_default_str();

    std::string lamp_op = "identity", lamp_eps = "1/4", lamp_r = "1/4", lamp_dist;
    std::size_t lamp_n = 4;
    auto* lamp = app.add_subcommand("lamplighter", "switch-walk-switch checks");
    run.add_common(lamp, lc, true);
    lamp->add_option("--op", lamp_op, "identity, thm1, thm2, witness, problemma")
        ->check(CLI::IsMember({"identity", "thm1", "thm2", "witness", "problemma"}))
        ->capture_default_str();
    lamp->add_option("--n", lamp_n, "steps")->capture_default_str();
    lamp->add_option("--eps", lamp_eps, "epsilon")->capture_default_str();
    lamp->add_option("--r", lamp_r, "witness radius")->capture_default_str();
    lamp->add_option("--dist", lamp_dist, "problemma: P(X=1),...,P(X=n+1) comma separated");

    std::string lv_op = "synth", lv_t = "x", lv_nu0 = "lazy-srw", lv_y = "2", lv_eps = "1/2";
    std::size_t lv_depth = 3, lv_m = 0, lv_k = 1;
    std::vector<std::string> lv_weights, lv_approx;
    auto* liou = app.add_subcommand("liouville", "measure synthesis, (TV) and probes");
    run.add_common(liou, vc, false);
    liou->add_option("--op", lv_op, "synth, probe, tv, defect")
        ->check(CLI::IsMember({"synth", "probe", "tv", "defect"}))
        ->capture_default_str();
    liou->add_option("--t", lv_t, "designated element T")->capture_default_str();
    liou->add_option("--nu0", lv_nu0, "base measure")->capture_default_str();
    liou->add_option("--depth", lv_depth, "depth J")->capture_default_str();
    liou->add_option("--weights", lv_weights, "c_0..c_J (default 2^-(j+1))")->delimiter(',');
    liou->add_option("--y", lv_y, "second probe point")->capture_default_str();
    liou->add_option("--m", lv_m, "probe length (default m_J)");
    liou->add_option("--k", lv_k, "tv: exhaustion index n for K_n")->capture_default_str();
    liou->add_option("--eps", lv_eps, "tv: epsilon")->capture_default_str();
    liou->add_option("--approximant", lv_approx, "defect: n:cycles, repeatable");

    std::string sp_op = "radius", sp_method = "auto", sp_edges;
    std::size_t sp_n = 32, sp_exact = 0;
    std::vector<std::size_t> sp_radii{1, 2, 4, 8}, sp_grid{25, 50, 100, 200, 400};
    std::vector<std::string> sp_r{"1/8"}, sp_sets;
    auto* spec = app.add_subcommand("spectral", "return probabilities, rho, expansion, Mohar, linear-radius decay");
    run.add_common(spec, sc, true);
    spec->add_option("--op", sp_op, "radius, return, expansion, mohar, kesten, network")
        ->check(CLI::IsMember({"radius", "return", "expansion", "mohar", "kesten", "network"}))
        ->capture_default_str();
    spec->add_option("--n", sp_n, "time")->capture_default_str();
    spec->add_option("--method", sp_method, "auto, exact, float, distance-chain")->capture_default_str();
    spec->add_option("--radii", sp_radii, "candidate radii")->delimiter(',')->capture_default_str();
    spec->add_option("--r", sp_r, "kesten: r grid")->delimiter(',')->capture_default_str();
    spec->add_option("--grid", sp_grid, "kesten: n grid")->delimiter(',')->capture_default_str();
    spec->add_option("--cross-check", sp_exact, "kesten: exact cross-check up to this n");
    spec->add_option("--edges", sp_edges, "network: edge-list CSV (src,dst,conductance)");
    spec->add_option("--set", sp_sets, "network: candidate set as space-separated labels, repeatable");

    std::vector<int> only;
    Common vf;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--only", only, "criteria to run")->delimiter(',');
    verify->add_option("--seed", vf.seed, "master seed")->capture_default_str();
    vf.seed = AcceptanceOptions{}.seed;
    verify->add_option("--out", vf.out, "JSON report file");
    verify->add_option("--threads", vf.threads, "worker threads");

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error (" << kind_name(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    }

    const auto t0 = std::chrono::steady_clock::now();
    int status = 0;
    try {
        if (*walk) {
            auto oracle = parse_action(wc.action);
            Mode mode = parse_mode(wc.mode);
            run.seed(walk, wc, mode == Mode::mc && walk_ball == 0);
            Json rep = envelope("walk", run.spec(walk, wc, mode == Mode::mc && walk_ball == 0));
            rep["action"] = oracle->name();
            const Point x = point_or_base(*oracle, wc.x);
            if (walk_ball > 0) {
                auto ball = orbit_ball(*oracle, x, walk_ball);
                if (wc.format == "csv") {
                    run.emit(wc, schreier_ball_csv(*oracle, ball));
                } else {
                    rep["ball"] = {{"radius", walk_ball}, {"points", ball.points.size()}, {"edges", ball.edges.size()}};
                    run.emit(wc, dump(rep));
                }
            } else {
                auto nu = parse_measure(*oracle, wc.measure);
                if (mode == Mode::exact) {
                    auto d = point_mass<Rational>(*oracle, x);
                    std::uint64_t work = 0;
                    for (std::size_t k = 0; k < walk_n; ++k) {
                        work += d.mass.size() * nu.atoms.size();
                        if (work > wc.budget) fail(ErrorKind::resource_limit, "walk exceeds --budget");
                        d = step(*oracle, d, nu);
                    }
                    if (wc.format == "csv") {
                        run.emit(wc, distribution_csv(*oracle, d));
                    } else {
                        Json pts = Json::array();
                        for (const auto& [p, w] : d.mass) pts.push_back({{"point", oracle->format_point(p)}, {"p", exact_value(w)}});
                        rep["n"] = walk_n;
                        rep["return_probability"] = exact_value(d.at(x));
                        rep["distribution"] = pts;
                        run.emit(wc, dump(rep));
                    }
                } else {
                    const Sampler base(to_float(nu));
                    auto chunk = [&](std::size_t c) {
                        Rng rng(stream_seed(wc.seed, c));
                        Sampler s = base;
                        std::map<Point, std::uint64_t> counts;
                        for (std::size_t i = 0, m = chunk_size(wc.samples, c); i < m; ++i) {
                            Element g = oracle->identity();
                            for (std::size_t k = 0; k < walk_n; ++k) oracle->right_multiply(g, s.draw(rng));
                            Point y = x;
                            oracle->act(g, y);
                            counts[y]++;
                        }
                        return counts;
                    };
                    std::map<Point, std::uint64_t> counts;
                    for (auto& part : run_chunks<std::map<Point, std::uint64_t>>(chunk_count(wc.samples), run.threads(wc), chunk))
                        for (auto& [p, k] : part) counts[p] += k;
                    FDistribution d;
                    d.oracle = oracle->name();
                    const double nn = static_cast<double>(wc.samples);
                    for (auto& [p, k] : counts) d.mass[p] = static_cast<double>(k) / nn;
                    if (wc.format == "csv") {
                        run.emit(wc, distribution_csv(*oracle, d));
                    } else {
                        Json pts = Json::array();
                        for (const auto& [p, w] : d.mass)
                            pts.push_back({{"point", oracle->format_point(p)}, {"p", mc_value(w, std::sqrt(w * (1 - w) / nn))}});
                        double r0 = d.at(x);
                        rep["n"] = walk_n;
                        rep["return_probability"] = mc_value(r0, std::sqrt(r0 * (1 - r0) / nn));
                        rep["distribution"] = pts;
                        run.emit(wc, dump(rep));
                    }
                }
            }
        } else if (*inv) {
            auto oracle = parse_action(ic.action);
            auto nu = parse_measure(*oracle, ic.measure);
            Mode mode = parse_mode(ic.mode);
            run.seed(inv, ic, mode == Mode::mc);
            OrbitOptions o;
            o.mode = mode;
            o.samples = ic.samples;
            o.seed = ic.seed;
            o.budget = ic.budget;
            o.threads = run.threads(ic);
            o.eps_grid = parse_rationals(io_eps);
            const Point x = point_or_base(*oracle, ic.x);
            std::vector<OrbitStatistics> stats;
            if (mode == Mode::mc)
                stats = orbit_statistics_mc_grid(*oracle, nu, x, io_n, o);
            else
                for (auto n : io_n) stats.push_back(orbit_statistics(*oracle, nu, x, n, o));
            if (ic.format == "csv") {
                std::vector<std::vector<std::string>> rows{{"n", "statistic", "mode", "value", "stderr"}};
                for (const auto& st : stats) {
                    const std::string m = mode_name(st.mode);
                    rows.push_back({std::to_string(st.n), "mean_size", m, g17(st.mean_size), g17(st.mean_size_se)});
                    rows.push_back({std::to_string(st.n), "exp2_neg_size", m, g17(st.exp2), g17(st.exp2_se)});
                    for (const auto& t : st.tails)
                        rows.push_back({std::to_string(st.n), "tail:" + to_string(t.eps), m, g17(t.value), g17(t.stderr_)});
                }
                run.emit(ic, csv_rows(rows));
            } else {
                Json rep = envelope("inverted-orbit", run.spec(inv, ic, mode == Mode::mc));
                Json arr = Json::array();
                for (const auto& st : stats) arr.push_back(to_json(st));
                rep["statistics"] = arr;
                if (stats.size() >= 4) {
                    Json fits;
                    std::vector<DecaySample> e2;
                    for (const auto& st : stats) e2.push_back({double(st.n), st.exp2, st.exp2_se});
                    fits["exp2_neg_size"] = to_json(decay_classify(e2));
                    for (std::size_t k = 0; k < o.eps_grid.size(); ++k) {
                        std::vector<DecaySample> t;
                        bool positive = true;
                        for (const auto& st : stats) {
                            t.push_back({double(st.n), st.tails[k].value, st.tails[k].stderr_});
                            positive = positive && st.tails[k].value > 0;
                        }
                        fits["tail:" + to_string(o.eps_grid[k])] =
                            positive ? to_json(decay_classify(t)) : Json{{"verdict", "inconclusive"}, {"note", "zero value in grid"}};
                    }
                    rep["decay"] = fits;
                }
                run.emit(ic, dump(rep));
            }
        } else if (*lamp) {
            auto oracle = parse_action(lc.action);
            Mode mode = parse_mode(lc.mode);
            const bool mc = lamp_op == "identity" && mode == Mode::mc;
            run.seed(lamp, lc, mc);
            Json rep = envelope("lamplighter", run.spec(lamp, lc, mc));
            bool holds = true;
            if (lamp_op == "identity") {
                IdentityOptions o;
                o.mode = mode;
                o.samples = lc.samples;
                o.seed = lc.seed;
                o.budget = lc.budget;
                o.threads = run.threads(lc);
                auto r = lamp_orbit_identity_check(oracle, parse_measure(*oracle, lc.measure), point_or_base(*oracle, lc.x), lamp_n, o);
                holds = r.holds;
                rep["identity"] = to_json(r);
            } else if (lamp_op == "thm1" || lamp_op == "thm2") {
                auto a = relation_action(oracle);
                auto nu = parse_measure(*a, lc.measure);
                auto r = lamp_op == "thm1" ? thm1_inequality(a, nu, parse_rational(lamp_eps), lamp_n, lc.budget)
                                           : thm2_inequality(a, nu, parse_rational(lamp_eps), lamp_n, lc.budget);
                holds = r.holds;
                rep[lamp_op] = to_json(r);
            } else if (lamp_op == "witness") {
                auto r = sin_defect_witness(relation_action(oracle), parse_rational(lamp_r));
                rep["witness"] = to_json(r);
            } else {
                std::vector<Rational> dist;
                std::stringstream ss(lamp_dist);
                std::string item;
                while (std::getline(ss, item, ',')) dist.push_back(parse_rational(item));
                auto r = problemma_check(lamp_n, parse_rational(lamp_eps), dist);
                holds = r.holds;
                rep["problemma"] = to_json(r);
            }
            run.emit(lc, dump(rep));
            if (!holds) status = 3;
        } else if (*liou) {
            auto oracle = parse_action(vc.action);
            Json rep = envelope("liouville", run.spec(liou, vc, false));
            if (lv_op == "synth") {
                SynthConfig cfg;
                cfg.oracle = oracle;
                cfg.t = oracle->parse_element(lv_t);
                cfg.nu0 = parse_measure(*oracle, lv_nu0);
                cfg.depth = lv_depth;
                cfg.weights = lv_weights.empty() ? geometric_weights(lv_depth) : parse_rationals(lv_weights);
                cfg.family = shift_uniform_family(oracle, cfg.t);
                cfg.tv_budget = vc.budget;
                if (!vc.x.empty()) cfg.basepoints = {oracle->parse_point(vc.x)};
                auto res = synthesize(cfg);
                rep["synthesis"] = to_json(res.state);
                rep["measure_atoms"] = res.nu.atoms.size();
                std::size_t m = lv_m ? lv_m : (res.state.steps.empty() ? 1 : res.state.steps.back().m);
                const Point px = point_or_base(*oracle, vc.x), py = oracle->parse_point(lv_y);
                ProbeReport probe = dynamic_cast<const ZdAction*>(oracle.get()) && px.code.size() == 1
                                        ? liouville_probe_line(line_measure(res.nu), px.code[0], py.code[0], m)
                                        : liouville_probe(*oracle, to_float(res.nu), px, py, m);
                probe_bounds(probe, res.state, cfg.family);
                rep["probe"] = to_json(probe);
                if (!res.state.ok) status = 3;
                for (const auto& c : probe.checks)
                    if (c.verdict == "fail") status = 3;
            } else if (lv_op == "probe") {
                auto nu = parse_measure(*oracle, vc.measure);
                const Point px = point_or_base(*oracle, vc.x), py = oracle->parse_point(lv_y);
                std::size_t m = lv_m ? lv_m : 16;
                rep["probe"] = to_json(dynamic_cast<const ZdAction*>(oracle.get()) && px.code.size() == 1
                                           ? liouville_probe_line(line_measure(nu), px.code[0], py.code[0], m)
                                           : liouville_probe(*oracle, to_float(nu), px, py, m));
            } else if (lv_op == "tv") {
                auto nu = parse_measure(*oracle, vc.measure);
                ExhaustionSequence k(oracle, oracle->parse_element(lv_t));
                auto r = tv_condition_check(*oracle, to_float(nu), k(lv_k, point_or_base(*oracle, vc.x)), parse_rational(lv_eps), lv_k,
                                            vc.budget);
                rep["tv"] = to_json(r);
            } else {
                auto a = relation_action(oracle);
                std::vector<std::pair<std::size_t, Permutation>> approx;
                for (const auto& s : lv_approx) {
                    auto colon = s.find(':');
                    if (colon == std::string::npos) fail(ErrorKind::config, "approximant must be n:cycles");
                    approx.emplace_back(std::stoul(s.substr(0, colon)), parse_cycles(s.substr(colon + 1), a->space().size()));
                }
                Json rows = Json::array();
                for (const auto& r : defect_sets(a->space(), a->space().t(), approx)) rows.push_back(to_json(r));
                rep["defect_sets"] = rows;
            }
            run.emit(vc, dump(rep));
        } else if (*spec) {
            auto oracle = parse_action(sc.action);
            Mode mode = parse_mode(sc.mode);
            const bool mc = sp_op == "kesten" || (sp_op == "return" && mode == Mode::mc);
            run.seed(spec, sc, mc);
            Json rep = envelope("spectral", run.spec(spec, sc, mc));
            if (sp_op == "network") {
                if (sp_edges.empty()) fail(ErrorKind::config, "--edges is required for the network operation");
                auto net = network_from_csv(read_file(sp_edges));
                std::vector<std::vector<std::size_t>> cands;
                for (const auto& s : sp_sets) {
                    std::stringstream ss(s);
                    std::string label;
                    std::vector<std::size_t> set;
                    while (ss >> label) set.push_back(net.index(label));
                    cands.push_back(set);
                }
                rep["expansion"] = to_json(edge_expansion(net, cands));
                run.emit(sc, dump(rep));
            } else {
                auto nu = parse_measure(*oracle, sc.measure);
                const Point x = point_or_base(*oracle, sc.x);
                if (sp_op == "radius") {
                    auto r = spectral_radius(*oracle, nu, x, sp_n, sp_method, sc.budget);
                    if (sc.format == "csv") {
                        std::vector<std::vector<std::string>> rows{{"time", "p", "root", "ratio"}};
                        for (const auto& row : r.rows)
                            rows.push_back({std::to_string(row.time), g17(row.p), g17(row.root), g17(row.ratio)});
                        run.emit(sc, csv_rows(rows));
                    } else {
                        rep["spectral"] = to_json(r);
                        run.emit(sc, dump(rep));
                    }
                } else if (sp_op == "return") {
                    auto r = return_probability(*oracle, nu, x, sp_n, mode, sc.samples, sc.seed, run.threads(sc), sc.budget);
                    rep["n"] = sp_n;
                    rep["return_probability"] = r.exact ? exact_value(*r.exact) : mc_value(r.value, r.stderr_);
                    run.emit(sc, dump(rep));
                } else if (sp_op == "expansion") {
                    auto e = catalogue_expansion(*oracle, nu, sp_radii);
                    Json j = to_json(e);
                    j["witness_radius"] = sp_radii[e.witness];
                    rep["expansion"] = j;
                    run.emit(sc, dump(rep));
                } else if (sp_op == "mohar") {
                    auto r = spectral_radius(*oracle, nu, x, sp_n, sp_method, sc.budget);
                    auto e = catalogue_expansion(*oracle, nu, sp_radii);
                    auto m = mohar_check(r, e.phi);
                    rep["spectral"] = to_json(r);
                    rep["expansion"] = to_json(e);
                    rep["mohar"] = to_json(m);
                    run.emit(sc, dump(rep));
                    if (!m.sound_holds) status = 3;
                } else {
                    auto rs = parse_rationals(sp_r);
                    KestenDecayReport k;
                    if (auto a = std::dynamic_pointer_cast<const FiniteRelationAction>(oracle)) {
                        auto ctx = LampContext::over_relation(a);
                        LampConfig diag;
                        for (auto [p, q] : a->space().identity_graph()) diag.push_back(LampContext::pair_site(p, q));
                        k = linear_radius_decay_lamp(ctx, sws_measure(ctx, nu, diag), rs, sp_grid, sc.samples, sc.seed, run.threads(sc));
                    } else {
                        k = linear_radius_decay(*oracle, nu, rs, sp_grid, sc.samples, sc.seed, run.threads(sc));
                        if (sp_exact) kesten_cross_check(k, *oracle, nu, sp_exact);
                    }
                    if (sc.format == "csv") {
                        std::vector<std::vector<std::string>> rows{{"n", "r", "value", "stderr", "hits"}};
                        for (const auto& c : k.cells)
                            rows.push_back({std::to_string(c.n), to_string(c.r), g17(c.value), g17(c.stderr_), std::to_string(c.hits)});
                        run.emit(sc, csv_rows(rows));
                    } else {
                        rep["kesten"] = to_json(k);
                        run.emit(sc, dump(rep));
                    }
                }
            }
        } else if (*verify) {
            AcceptanceOptions o;
            o.seed = vf.seed;
            o.threads = vf.threads ? vf.threads : default_threads();
            o.only = only;
            Json all = envelope("verify", {{"seed", o.seed}, {"only", only}});
            Json rows = Json::array();
            bool ok = true;
            run_acceptance(o, [&](const CriterionResult& r) {
                std::cout << format_result(r) << std::endl;
                ok = ok && r.pass;
                rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"summary", r.summary}, {"report", r.report}});
            });
            all["criteria"] = rows;
            all["pass"] = ok;
            if (!vf.out.empty()) run.emit(vf, dump(all));
            if (!ok) status = 3;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << kind_name(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "elapsed: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return status;
}
