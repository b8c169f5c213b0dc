#include "rwlab/report.hpp"

#include <cmath>

namespace rwlab {

namespace {

Json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Json rational_list(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

}  // namespace

Json envelope(const std::string& command, const Json& spec) {
    Json j;
    j["schema"] = report_schema;
    j["version"] = artifact_version;
    j["command"] = command;
    j["spec"] = spec;
    return j;
}

Json exact_value(const Rational& q) {
    Json j;
    j["mode"] = "exact";
    j["value"] = num(q.get_d());
    j["rational"] = to_string(q);
    return j;
}

Json mc_value(double value, double stderr_) {
    Json j;
    j["mode"] = "mc";
    j["value"] = num(value);
    j["stderr"] = num(stderr_);
    return j;
}

Json float_value(double value) {
    Json j;
    j["mode"] = "float";
    j["value"] = num(value);
    return j;
}

Json to_json(const OrbitStatistics& st) {
    Json j;
    j["n"] = st.n;
    j["mode"] = mode_name(st.mode);
    if (st.mode == Mode::mc) {
        j["samples"] = st.samples;
        j["seed"] = st.seed;
    }
    auto val = [&](const std::optional<Rational>& ex, double v, double se) {
        return ex ? exact_value(*ex) : mc_value(v, se);
    };
    j["mean_size"] = val(st.mean_size_exact, st.mean_size, st.mean_size_se);
    j["exp2_neg_size"] = val(st.exp2_exact, st.exp2, st.exp2_se);
    Json tails = Json::array();
    for (const auto& t : st.tails) {
        Json r;
        r["eps"] = to_string(t.eps);
        r["p_size_le_eps_n"] = val(t.exact, t.value, t.stderr_);
        tails.push_back(r);
    }
    j["tails"] = tails;
    if (!st.size_law.empty()) j["size_law"] = rational_list(st.size_law);
    if (!st.size_hist.empty()) j["size_hist"] = st.size_hist;
    return j;
}

Json to_json(const FeketeReport& rep) {
    Json j;
    j["eps"] = to_string(rep.eps);
    j["mode"] = mode_name(rep.mode);
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json x;
        x["n"] = r.n;
        x["m"] = r.m;
        if (r.lhs_exact) {
            x["lhs"] = exact_value(*r.lhs_exact);
            x["rhs"] = exact_value(*r.rhs_exact);
            x["margin"] = exact_value(*r.lhs_exact - *r.rhs_exact);
        } else {
            x["lhs"] = num(r.lhs);
            x["rhs"] = num(r.rhs);
            x["slack"] = num(r.slack);
            x["margin"] = num(r.lhs - r.rhs);
        }
        x["holds"] = r.holds;
        rows.push_back(x);
    }
    j["rows"] = rows;
    j["ok"] = rep.ok;
    return j;
}

Json to_json(const SubadditivityReport& rep) {
    Json j;
    j["size_concat"] = rep.size_concat;
    j["size_h"] = rep.size_h;
    j["size_t"] = rep.size_t_;
    j["identity_holds"] = rep.identity_holds;
    j["bound_holds"] = rep.bound_holds;
    return j;
}

Json to_json(const IdentityReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["mode"] = mode_name(rep.mode);
    if (rep.lhs_exact) {
        j["p_lamps_empty"] = exact_value(*rep.lhs_exact);
        j["exp2_neg_orbit"] = exact_value(*rep.rhs_exact);
        j["margin"] = exact_value(*rep.rhs_exact - *rep.lhs_exact);
    } else {
        j["p_lamps_empty"] = mc_value(rep.lhs, 0);
        j["exp2_neg_orbit"] = mc_value(rep.rhs, 0);
        j["slack"] = num(rep.slack);
        j["margin"] = num(rep.rhs - rep.lhs);
    }
    j["holds"] = rep.holds;
    return j;
}

Json to_json(const InequalityReport& rep) {
    Json j;
    j["name"] = rep.name;
    j["eps"] = to_string(rep.eps);
    j["n"] = rep.n;
    j["probability"] = exact_value(rep.probability);
    j["lhs_lo"] = exact_value(rep.lhs_lo);
    j["lhs_hi"] = exact_value(rep.lhs_hi);
    j["rhs"] = exact_value(rep.rhs);
    j["margin"] = num(rep.margin);
    j["holds"] = rep.holds;
    j["holds_rounded_up"] = rep.holds_rounded_up;
    return j;
}

Json to_json(const ProbLemmaReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["eps"] = to_string(rep.eps);
    j["lhs"] = exact_value(rep.lhs);
    j["rhs_tail"] = exact_value(rep.rhs_tail);
    j["exp_lo"] = num(rep.exp_lo);
    j["exp_hi"] = num(rep.exp_hi);
    j["margin"] = num(rep.margin);
    j["holds"] = rep.holds;
    return j;
}

Json to_json(const WitnessReport& rep) {
    Json j;
    j["r"] = to_string(rep.r);
    j["vacuous"] = rep.vacuous;
    j["found"] = rep.found;
    j["searched"] = rep.searched;
    if (rep.found) {
        j["g"] = format_cycles(rep.g);
        Json c = Json::array();
        for (auto [x, y] : rep.c) c.push_back(Json::array({x, y}));
        j["c"] = c;
        j["support_mass"] = exact_value(rep.support_mass);
        j["displacement"] = exact_value(rep.displacement);
        j["every_orbit_hit"] = rep.every_orbit_hit;
        j["conjugate_lamp_distance"] = exact_value(rep.conjugate_lamp_distance);
        j["separated"] = rep.separated;
    }
    return j;
}

Json to_json(const DecayRateEstimate& est) {
    Json j;
    Json s = Json::array();
    for (const auto& x : est.samples) s.push_back({{"n", num(x.n)}, {"value", num(x.value)}, {"stderr", num(x.stderr_)}});
    j["samples"] = s;
    j["rate"] = num(est.rate);
    j["rate_ci"] = Json::array({num(est.rate_lo), num(est.rate_hi)});
    j["log_n_coefficient"] = num(est.beta);
    Json roots = Json::array();
    for (double r : est.roots) roots.push_back(num(r));
    j["roots"] = roots;
    j["roots_nondecreasing"] = est.roots_nondecreasing;
    j["values_nondecreasing"] = est.values_nondecreasing;
    j["verdict"] = verdict_name(est.verdict);
    return j;
}

Json to_json(const SpectralReport& rep) {
    Json j;
    j["method"] = rep.method;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json x;
        x["time"] = r.time;
        x["p"] = r.exact ? exact_value(*r.exact) : float_value(r.p);
        x["root"] = num(r.root);
        x["ratio"] = num(r.ratio);
        rows.push_back(x);
    }
    j["rows"] = rows;
    j["rho_root"] = num(rep.rho_root);
    j["rho_ratio"] = num(rep.rho_ratio);
    j["estimator_gap"] = num(rep.estimator_gap);
    return j;
}

Json to_json(const MoharReport& rep) {
    Json j;
    j["rho_hat"] = num(rep.rho_hat);
    j["phi_hat"] = num(rep.phi_hat);
    j["phi_hat_is_upper_bound"] = true;
    j["one_minus_rho"] = num(rep.one_minus_rho);
    j["slack"] = num(rep.slack);
    j["sound"] = {{"lhs", num(rep.one_minus_rho)}, {"rhs", num(rep.phi_hat + rep.slack)},
                  {"margin", num(rep.margin)}, {"holds", rep.sound_holds}};
    j["lower_informational"] = {{"lhs", num(rep.lower_lhs)}, {"rhs", num(rep.one_minus_rho + rep.slack)},
                                {"holds", rep.lower_holds}};
    return j;
}

Json to_json(const Expansion& e) {
    Json j;
    j["phi_hat"] = num(e.phi);
    j["witness"] = e.witness;
    if (!e.witness_set.empty()) j["witness_set"] = e.witness_set;
    j["touches_boundary"] = e.touches_boundary;
    return j;
}

Json to_json(const KestenDecayReport& rep) {
    Json j;
    j["metric"] = rep.metric;
    j["note"] = "ball of radius r n is a subset of U^n: exponential decay is conclusive, subexponential is evidence only";
    j["r_grid"] = rational_list(rep.r_grid);
    j["n_grid"] = rep.n_grid;
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    Json cells = Json::array();
    for (const auto& c : rep.cells) {
        Json x;
        x["n"] = c.n;
        x["r"] = to_string(c.r);
        x["p_length_le_rn"] = mc_value(c.value, c.stderr_);
        x["hits"] = c.hits;
        cells.push_back(x);
    }
    j["cells"] = cells;
    Json fits = Json::array();
    for (std::size_t i = 0; i < rep.fits.size(); ++i) {
        Json f = to_json(rep.fits[i]);
        f["r"] = to_string(rep.r_grid[i]);
        if (!rep.fit_notes[i].empty()) f["note"] = rep.fit_notes[i];
        fits.push_back(f);
    }
    j["fits"] = fits;
    if (!rep.cross_checks.empty()) {
        Json cc = Json::array();
        for (const auto& c : rep.cross_checks)
            cc.push_back({{"n", c.n}, {"r", to_string(c.r)}, {"exact", num(c.exact)}, {"mc", num(c.mc)},
                          {"tolerance", num(c.tolerance)}, {"holds", c.holds}});
        j["cross_checks"] = cc;
    }
    return j;
}

Json to_json(const TvReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["sup"] = float_value(rep.sup);
    j["eps"] = to_string(rep.eps);
    j["pairs"] = rep.pairs;
    j["skipped"] = rep.skipped;
    j["holds"] = rep.holds;
    return j;
}

Json to_json(const SynthState& st) {
    Json j;
    j["n"] = st.ns;
    j["mixture_weights"] = rational_list(st.mixture_weights);
    j["tail_mass"] = exact_value(st.tail_mass);
    Json steps = Json::array();
    for (const auto& s : st.steps) {
        Json x;
        x["j"] = s.j;
        x["m"] = s.m;
        x["m_minimal"] = s.m_minimal;
        x["prefix"] = to_string(s.prefix);
        x["theta_atoms"] = s.theta_atoms;
        x["theta_error"] = to_string(s.theta_error);
        x["theta_bound"] = to_string(s.theta_bound);
        x["theta_ok"] = s.theta_ok;
        x["surrogate_bound"] = to_string(s.surrogate_bound);
        x["surrogate_ok"] = s.surrogate_ok;
        x["s_count"] = s.s_count;
        x["support_union"] = s.support_union;
        x["n_j"] = s.n;
        x["containment_ok"] = s.containment_ok;
        x["tv"] = to_json(s.tv);
        steps.push_back(x);
    }
    j["steps"] = steps;
    j["ok"] = st.ok;
    return j;
}

Json to_json(const ProbeReport& rep) {
    Json j;
    Json rows = Json::array();
    for (const auto& r : rep.rows) rows.push_back({{"m", r.m}, {"distance", num(r.distance)}, {"error", num(r.error)}});
    j["rows"] = rows;
    j["min_distance"] = num(rep.min_distance);
    j["trend"] = rep.trend;
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"j", c.j}, {"m", c.m}, {"distance", num(c.distance)}, {"error", num(c.error)},
                          {"bound", num(c.bound)}, {"margin", num(c.bound - c.distance)}, {"verdict", c.verdict}});
    j["checks"] = checks;
    return j;
}

Json to_json(const DefectRow& row) {
    Json j;
    j["n"] = row.n;
    j["members"] = row.members;
    j["mass"] = exact_value(row.mass);
    j["bound"] = exact_value(row.bound);
    j["flagged"] = row.flagged;
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace rwlab
