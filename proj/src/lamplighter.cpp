#include "rwlab/lamplighter.hpp"

#include "rwlab/mc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace rwlab {

LampConfig sym_diff(const LampConfig& a, const LampConfig& b) {
    LampConfig out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

LampContext LampContext::over_points(OraclePtr group) {
    LampContext ctx;
    ctx.kind_ = LampKind::points;
    ctx.group_ = std::move(group);
    return ctx;
}

LampContext LampContext::over_relation(std::shared_ptr<const FiniteRelationAction> group) {
    LampContext ctx;
    ctx.kind_ = LampKind::relation;
    ctx.group_ = group;
    ctx.relation_ = std::move(group);
    return ctx;
}

const FiniteRelationSpace& LampContext::space() const {
    if (!relation_) fail(ErrorKind::config, "this lamplighter has no relation space");
    return relation_->space();
}

Point LampContext::pair_site(std::size_t x, std::size_t y) {
    return Point{Code{static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)}};
}

void LampContext::act_site(const Element& g, Point& site) const {
    if (kind_ == LampKind::points)
        group_->act(g, site);
    else
        site.code[1] = g.code[static_cast<std::size_t>(site.code[1])];
}

LampConfig LampContext::act(const Element& g, const LampConfig& c) const {
    LampConfig out = c;
    for (auto& s : out) act_site(g, s);
    std::sort(out.begin(), out.end());
    return out;
}

void LampContext::validate(const LampConfig& c) const {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (!(c[i - 1] < c[i])) fail(ErrorKind::encoding, "lamp configuration must be sorted and distinct");
    for (const auto& s : c) {
        if (kind_ == LampKind::points) {
            group_->validate(s);
            continue;
        }
        const auto n = static_cast<std::int64_t>(space().size());
        if (s.code.size() != 2 || s.code[0] < 0 || s.code[1] < 0 || s.code[0] >= n || s.code[1] >= n ||
            !space().related(static_cast<std::size_t>(s.code[0]), static_cast<std::size_t>(s.code[1])))
            fail(ErrorKind::encoding, "lamp site is not a pair of the relation");
    }
}

std::string LampContext::format_config(const LampConfig& c) const {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        if (kind_ == LampKind::points)
            s += group_->format_point(c[i]);
        else
            s += "(" + std::to_string(c[i].code[0]) + "," + std::to_string(c[i].code[1]) + ")";
    }
    return s + "}";
}

LampState lamp_identity(const LampContext& ctx) { return {{}, ctx.group().identity()}; }

LampState lamp_multiply(const LampContext& ctx, const LampState& a, const LampState& b) {
    return {sym_diff(a.c, ctx.act(a.g, b.c)), ctx.group().multiply(a.g, b.g)};
}

LampState lamp_inverse(const LampContext& ctx, const LampState& s) {
    Element gi = ctx.group().inverse(s.g);
    return {ctx.act(gi, s.c), gi};
}

LampConfig affine_act(const LampContext& ctx, const LampState& s, const LampConfig& f) {
    return sym_diff(s.c, ctx.act(s.g, f));
}

SwsMeasure sws_measure(const LampContext& ctx, const RMeasure& nu, const LampConfig& switch_set) {
    validate_measure(ctx.group(), nu);
    ctx.validate(switch_set);
    SwsMeasure out;
    out.base = nu;
    out.switch_set = switch_set;
    const LampConfig none;
    for (const auto& [g, w] : nu.atoms) {
        const Rational quarter = w / 4;
        for (const LampConfig* s1 : {&none, &switch_set})
            for (const LampConfig* s2 : {&none, &switch_set}) out.atoms[{sym_diff(*s2, ctx.act(g, *s1)), g}] += quarter;
    }
    return out;
}

LampLaw lamp_walk_exact(const LampContext& ctx, const SwsMeasure& nu_hat, std::size_t n, std::uint64_t budget) {
    LampLaw law{{lamp_identity(ctx), Rational(1)}};
    std::uint64_t work = 0;
    for (std::size_t k = 0; k < n; ++k) {
        work += static_cast<std::uint64_t>(law.size()) * nu_hat.atoms.size();
        if (work > budget)
            fail(ErrorKind::resource_limit, "exact lamp walk needs more than " + std::to_string(budget) + " state products");
        LampLaw next;
        for (const auto& [h, wh] : nu_hat.atoms)
            for (const auto& [s, ws] : law) next[lamp_multiply(ctx, h, s)] += wh * ws;
        law = std::move(next);
    }
    return law;
}

std::vector<LampState> lamp_walk_mc(const LampContext& ctx, const SwsMeasure& nu_hat, std::size_t n,
                                    std::size_t samples, std::uint64_t seed, std::size_t threads) {
    std::vector<LampState> atoms;
    std::vector<double> weights;
    for (const auto& [s, w] : nu_hat.atoms) {
        atoms.push_back(s);
        weights.push_back(w.get_d());
    }
    const std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    auto chunk = [&](std::size_t c) {
        Rng rng(stream_seed(seed, c));
        auto local = pick;
        std::vector<LampState> out;
        for (std::size_t i = 0, m = chunk_size(samples, c); i < m; ++i) {
            // right walk with i.i.d. increments has the law of the left walk
            LampState s = lamp_identity(ctx);
            for (std::size_t k = 0; k < n; ++k) s = lamp_multiply(ctx, s, atoms[local(rng)]);
            out.push_back(std::move(s));
        }
        return out;
    };
    auto parts = run_chunks<std::vector<LampState>>(chunk_count(samples), threads, chunk);
    std::vector<LampState> all;
    for (auto& p : parts) all.insert(all.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return all;
}

Rational lamp_dc(const LampContext& ctx, const LampConfig& a, const LampConfig& b) {
    const auto& space = ctx.space();
    Rational m = 0;
    for (const auto& s : sym_diff(a, b)) m += space.weight(static_cast<std::size_t>(s.code[0]));
    return m;
}

Rational lamp_dr(const LampContext& ctx, const Element& g, const Element& h) {
    return ctx.space().uniform_distance(FiniteRelationAction::to_permutation(g), FiniteRelationAction::to_permutation(h));
}

Rational lamp_distance(const LampContext& ctx, const LampState& a, const LampState& b) {
    return lamp_dc(ctx, a.c, b.c) + lamp_dr(ctx, a.g, b.g);
}

namespace {

Rational exp2_neg(const std::vector<Rational>& law) {
    Rational e = 0;
    for (std::size_t k = 0; k < law.size(); ++k) {
        Rational p;
        mpz_ui_pow_ui(p.get_den_mpz_t(), 2, k);
        p.get_num() = 1;
        p.canonicalize();
        e += law[k] * p;
    }
    return e;
}

}  // namespace

IdentityReport lamp_orbit_identity_check(OraclePtr oracle, const RMeasure& nu, const Point& x, std::size_t n,
                                         const IdentityOptions& opts) {
    // c_0 is empty surely while |O_0(x)| = 1
    if (n == 0) fail(ErrorKind::domain, "the identity needs n >= 1");
    auto ctx = LampContext::over_points(oracle);
    auto nu_hat = sws_measure(ctx, nu, {x});
    IdentityReport rep;
    rep.n = n;
    rep.mode = opts.mode;
    if (opts.mode == Mode::exact) {
        Rational lhs = 0;
        for (const auto& [s, w] : lamp_walk_exact(ctx, nu_hat, n, opts.budget))
            if (s.c.empty()) lhs += w;
        Rational rhs = exp2_neg(size_law_exact(*oracle, nu, x, n, opts.budget));
        rep.lhs_exact = lhs;
        rep.rhs_exact = rhs;
        rep.lhs = lhs.get_d();
        rep.rhs = rhs.get_d();
        rep.holds = lhs == rhs;
        return rep;
    }
    auto samples = lamp_walk_mc(ctx, nu_hat, n, opts.samples, stream_seed(opts.seed, 0x1a3b), opts.threads);
    double hits = 0;
    for (const auto& s : samples)
        if (s.c.empty()) hits += 1;
    const double nn = static_cast<double>(samples.size());
    rep.lhs = hits / nn;
    double se_l = std::sqrt(rep.lhs * (1 - rep.lhs) / nn);
    OrbitOptions o;
    o.mode = Mode::mc;
    o.samples = opts.samples;
    o.seed = stream_seed(opts.seed, 0x2c4d);
    o.threads = opts.threads;
    auto st = orbit_statistics_mc_grid(*oracle, nu, x, {n}, o).front();
    rep.rhs = st.exp2;
    rep.slack = 3 * std::hypot(se_l, st.exp2_se);
    rep.holds = std::abs(rep.lhs - rep.rhs) <= rep.slack;
    return rep;
}

namespace {

struct RelationSetup {
    LampContext ctx;
    LampLaw law;
};

RelationSetup relation_walk(std::shared_ptr<const FiniteRelationAction> action, const RMeasure& nu, std::size_t n,
                            std::uint64_t budget) {
    auto ctx = LampContext::over_relation(action);
    LampConfig diag;
    for (const auto& [x, y] : action->space().identity_graph()) diag.push_back(LampContext::pair_site(x, y));
    auto nu_hat = sws_measure(ctx, nu, diag);
    return {ctx, lamp_walk_exact(ctx, nu_hat, n, budget)};
}

Rational nat(std::size_t n) { return Rational(mpz_class(static_cast<unsigned long>(n))); }

}  // namespace

InequalityReport thm1_inequality(std::shared_ptr<const FiniteRelationAction> action, const RMeasure& nu,
                                 const Rational& eps, std::size_t n, std::uint64_t budget) {
    if (eps <= 0 || eps >= 1) fail(ErrorKind::config, "thm1 needs 0 < eps < 1");
    auto [ctx, law] = relation_walk(action, nu, n, budget);
    InequalityReport rep;
    rep.name = "thm1";
    rep.eps = eps;
    rep.n = n;
    rep.probability = 0;
    for (const auto& [s, w] : law)
        if (lamp_dc(ctx, s.c, {}) < eps) rep.probability += w;
    rep.lhs_lo = rep.lhs_hi = (1 - eps) * rep.probability;
    const auto& space = action->space();
    rep.rhs = 0;
    for (std::size_t x = 0; x < space.size(); ++x)
        rep.rhs += space.weight(x) * exp2_neg(size_law_exact(*action, nu, Point{Code{static_cast<std::int64_t>(x)}}, n, budget));
    rep.holds = rep.lhs_hi <= rep.rhs;
    rep.holds_rounded_up = rep.lhs_lo <= rep.rhs;
    rep.margin = Rational(rep.rhs - rep.lhs_hi).get_d();
    return rep;
}

InequalityReport thm2_inequality(std::shared_ptr<const FiniteRelationAction> action, const RMeasure& nu,
                                 const Rational& eps, std::size_t n, std::uint64_t budget) {
    if (eps <= 0) fail(ErrorKind::config, "thm2 needs eps > 0");
    auto [ctx, law] = relation_walk(action, nu, n, budget);
    InequalityReport rep;
    rep.name = "thm2";
    rep.eps = eps;
    rep.n = n;
    const Rational threshold = eps * nat(n) / 2;
    rep.probability = 0;
    for (const auto& [s, w] : law)
        if (lamp_dc(ctx, s.c, {}) < threshold) rep.probability += w;
    auto e = exp_enclosure(-threshold.get_d());
    rep.lhs_hi = rep.probability / 2 - exact_rational(e.lo);
    rep.lhs_lo = rep.probability / 2 - exact_rational(e.hi);
    const auto& space = action->space();
    rep.rhs = 0;
    for (std::size_t x = 0; x < space.size(); ++x) {
        auto sl = size_law_exact(*action, nu, Point{Code{static_cast<std::int64_t>(x)}}, n, budget);
        rep.rhs += space.weight(x) * tail_from_law(sl, 4 * eps, n);
    }
    rep.holds = rep.lhs_hi <= rep.rhs;
    rep.holds_rounded_up = rep.lhs_lo <= rep.rhs;
    rep.margin = Rational(rep.rhs - rep.lhs_hi).get_d();
    return rep;
}

Rational binomial_half_below(std::size_t k, const Rational& t) {
    Rational total = 0;
    mpz_class c = 1;
    for (std::size_t j = 0; j <= k; ++j) {
        if (!(nat(j) < t)) break;
        total += Rational(c);
        c = c * static_cast<unsigned long>(k - j) / static_cast<unsigned long>(j + 1);
    }
    Rational scale;
    mpz_ui_pow_ui(scale.get_den_mpz_t(), 2, k);
    scale.get_num() = 1;
    scale.canonicalize();
    return total * scale;
}

ProbLemmaReport problemma_check(std::size_t n, const Rational& eps, const std::vector<Rational>& dist) {
    if (dist.size() != n + 1) fail(ErrorKind::config, "distribution must live on {1, ..., n+1}");
    Rational s = 0;
    for (const auto& p : dist) {
        if (p < 0) fail(ErrorKind::config, "distribution has a negative entry");
        s += p;
    }
    if (s != 1) fail(ErrorKind::config, "distribution sums to " + to_string(s));
    if (eps <= 0) fail(ErrorKind::config, "ProbLemma needs eps > 0");
    ProbLemmaReport rep;
    rep.n = n;
    rep.eps = eps;
    const Rational en = eps * nat(n);
    rep.lhs = 0;
    rep.rhs_tail = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (dist[i] == 0) continue;
        rep.lhs += dist[i] * binomial_half_below(i + 1, en);
        if (nat(i + 1) < 4 * en) rep.rhs_tail += dist[i];
    }
    auto e = exp_enclosure(-Rational(en / 2).get_d());
    rep.exp_lo = e.lo;
    rep.exp_hi = e.hi;
    rep.holds = rep.lhs <= rep.rhs_tail + exact_rational(e.lo);
    rep.margin = Rational(rep.rhs_tail + exact_rational(e.lo) - rep.lhs).get_d();
    return rep;
}

WitnessReport sin_defect_witness(std::shared_ptr<const FiniteRelationAction> action, const Rational& r,
                                 std::size_t cap) {
    if (r <= 0) fail(ErrorKind::config, "witness radius must be positive");
    WitnessReport rep;
    rep.r = r;
    if (r >= 1) {
        rep.vacuous = true;
        return rep;
    }
    const auto& space = action->space();
    std::set<Element> seen{action->identity()};
    std::deque<Element> queue{action->identity()};
    std::optional<Element> hit;
    while (!queue.empty() && !hit) {
        Element g = queue.front();
        queue.pop_front();
        ++rep.searched;
        if (!action->is_identity(g) && space.support_mass(FiniteRelationAction::to_permutation(g)) < r) {
            hit = g;
            break;
        }
        for (std::size_t i = 0; i < action->generator_count(); ++i) {
            Element h = action->multiply(action->generator(i), g);
            if (seen.insert(h).second) {
                if (seen.size() > cap) fail(ErrorKind::resource_limit, "witness search exceeded cap");
                queue.push_back(std::move(h));
            }
        }
    }
    if (!hit) return rep;
    rep.found = true;
    rep.g = FiniteRelationAction::to_permutation(*hit);
    rep.support_mass = space.support_mass(rep.g);
    rep.every_orbit_hit = true;
    for (std::size_t x = 0; x < space.size(); ++x) {
        std::optional<std::size_t> y;
        for (auto z : space.orbits()[space.orbit_id(x)])
            if (rep.g[z] != z) {
                y = z;
                break;
            }
        if (y)
            rep.c.emplace_back(x, *y);
        else
            rep.every_orbit_hit = false;
    }
    auto ctx = LampContext::over_relation(action);
    LampConfig c;
    for (auto [x, y] : rep.c) c.push_back(LampContext::pair_site(x, y));
    std::sort(c.begin(), c.end());
    rep.displacement = lamp_dc(ctx, c, ctx.act(*hit, c));
    LampState k{c, action->identity()};
    LampState conj = lamp_multiply(ctx, lamp_multiply(ctx, k, {{}, *hit}), lamp_inverse(ctx, k));
    rep.conjugate_lamp_distance = lamp_dc(ctx, conj.c, {});
    rep.separated = rep.conjugate_lamp_distance >= 2 - r && rep.conjugate_lamp_distance > r;
    return rep;
}

}  // namespace rwlab
