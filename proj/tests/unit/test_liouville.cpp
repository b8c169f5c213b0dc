#include "rwlab/liouville.hpp"

#include <doctest.h>

#include <cmath>

using namespace rwlab;

namespace {

// binomial(2m, j) / 4^m in log space
double lazy_z_atom(std::size_t m, long k) {
    const long j = static_cast<long>(m) + k;
    if (j < 0 || j > 2 * static_cast<long>(m)) return 0;
    const double n = 2.0 * m;
    return std::exp(std::lgamma(n + 1) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1) - n * std::log(2.0));
}

}  // namespace

TEST_CASE("TV sup for the shift-uniform family on Z") {
    auto z = parse_action("zd:1");
    const Element t = z->parse_element("x");
    auto fam = shift_uniform_family(z, t);
    ExhaustionSequence k(z, t);
    for (std::size_t n = 1; n <= 6; ++n) {
        auto nu = fam.measure(n);
        CHECK(nu.atoms.size() == 2 * n * n + 1);
        CHECK(fam.eps(n) == Rational(2, static_cast<long>(n)));
        auto rep = tv_condition_check(*z, to_float(nu), k(n, z->base_point()), fam.eps(n), n);
        // translates by up to 2n of a uniform block of 2n^2 + 1 sites
        const double expect = 4.0 * n / (2.0 * n * n + 1);
        CHECK(rep.sup == doctest::Approx(expect).epsilon(1e-12));
        CHECK(rep.holds == (expect < 2.0 / n));
    }
}

TEST_CASE("TV check on a non-free action compares pushes") {
    auto a = parse_action("finite_relation:cycle:8");
    auto nu = to_float(parse_measure(*a, "id:1/2; s:1/2"));
    ExhaustionSequence k(a, a->parse_element("s"));
    auto rep = tv_condition_check(*a, nu, k(1, a->base_point()), Rational(1), 1);
    // pushes from x and x + 1 overlap in one site of mass 1/2
    CHECK(rep.sup == doctest::Approx(2.0));
    CHECK(!rep.holds);
}

TEST_CASE("synthesis on Z reproduces the scheduled parameters") {
    auto z = parse_action("zd:1");
    SynthConfig cfg;
    cfg.oracle = z;
    cfg.t = z->parse_element("x");
    cfg.nu0 = preset_measure(*z, "lazy-srw");
    cfg.depth = 3;
    cfg.weights = geometric_weights(3);
    cfg.family = shift_uniform_family(z, cfg.t);
    auto res = synthesize(cfg);
    REQUIRE(res.state.steps.size() == 3);
    // m_j is the least m >= 1 with (c_0 + ... + c_{j-1})^m <= 1/j
    const std::size_t ms[] = {1, 3, 9};
    const std::size_t ns[] = {1, 4, 148};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& s = res.state.steps[i];
        CHECK(s.m == ms[i]);
        CHECK(s.n == ns[i]);
        CHECK(s.theta_ok);
        CHECK(s.surrogate_ok);
        CHECK(s.containment_ok);
        CHECK(s.tv.holds);
        double p = to_double(s.prefix);
        CHECK(std::pow(p, double(s.m)) <= 1.0 / double(s.j) + 1e-15);
        if (s.m > 1) CHECK(std::pow(p, double(s.m - 1)) > 1.0 / double(s.j));
    }
    CHECK(res.state.steps[2].s_count == 220);
    CHECK(res.state.ok);
    REQUIRE(res.state.mixture_weights.size() == 4);
    CHECK(res.state.mixture_weights[0] == Rational(8, 15));
    CHECK(res.state.mixture_weights[3] == Rational(1, 15));
    CHECK(res.nu.mass() == 1);
    CHECK(is_symmetric(*z, res.nu));
}

TEST_CASE("m_j stays minimal for other weights") {
    auto z = parse_action("zd:1");
    SynthConfig cfg;
    cfg.oracle = z;
    cfg.t = z->parse_element("x");
    cfg.nu0 = preset_measure(*z, "lazy-srw");
    cfg.depth = 2;
    cfg.weights = {Rational(3, 4), Rational(1, 8), Rational(1, 8)};
    cfg.family = shift_uniform_family(z, cfg.t);
    auto res = synthesize(cfg);
    REQUIRE(res.state.steps.size() == 2);
    CHECK(res.state.steps[0].m == 1);
    CHECK(res.state.steps[1].m == 6);  // (7/8)^5 > 1/2 >= (7/8)^6
    CHECK(res.state.tail_mass == 0);
}

TEST_CASE("synthesis reports exhausted resources") {
    auto z = parse_action("zd:1");
    SynthConfig cfg;
    cfg.oracle = z;
    cfg.t = z->parse_element("x");
    cfg.nu0 = preset_measure(*z, "lazy-srw");
    cfg.depth = 3;
    cfg.weights = geometric_weights(3);
    cfg.family = shift_uniform_family(z, cfg.t);
    cfg.n_max = 20;
    CHECK_THROWS_AS(synthesize(cfg), Error);
}

TEST_CASE("line probe matches the binomial law of the lazy walk") {
    auto z = parse_action("zd:1");
    auto probe = liouville_probe_line(line_measure(preset_measure(*z, "lazy-srw")), 0, 2, 64);
    REQUIRE(probe.rows.size() == 64);
    for (const auto& row : probe.rows) {
        double d = 0;
        for (long k = -static_cast<long>(row.m) - 2; k <= static_cast<long>(row.m) + 2; ++k)
            d += std::abs(lazy_z_atom(row.m, k) - lazy_z_atom(row.m, k - 2));
        CHECK(row.distance == doctest::Approx(d).epsilon(1e-9));
    }
    CHECK(probe.trend == "decreasing");
    CHECK(probe.rows.back().distance < 0.5);
}

TEST_CASE("generic probe agrees with the line probe") {
    auto z = parse_action("zd:1");
    auto nu = preset_measure(*z, "lazy-srw");
    auto a = liouville_probe(*z, to_float(nu), z->parse_point("0"), z->parse_point("2"), 12);
    auto b = liouville_probe_line(line_measure(nu), 0, 2, 12);
    for (std::size_t i = 0; i < 12; ++i) CHECK(a.rows[i].distance == doctest::Approx(b.rows[i].distance).epsilon(1e-12));
}

TEST_CASE("defect sets of cycle approximants") {
    auto s = FiniteRelationSpace::cycle(8);
    const Permutation t = s.t();
    auto rows = defect_sets(s, t, {{1, t}, {1, identity_permutation(8)}, {1, parse_cycles("(0 1 2 3 4 5 6)", 8)}});
    CHECK(rows[0].members.empty());
    CHECK(rows[0].mass == 0);
    CHECK(rows[1].mass == 1);
    CHECK(rows[0].bound == Rational(1, 2));
    // f differs from T at 6 and 7 forward and at 0 and 7 backward
    CHECK(rows[2].members == std::vector<std::size_t>{0, 1, 5, 6, 7});
}

TEST_CASE("containment defect") {
    auto s = FiniteRelationSpace::cycle(8);
    auto d = containment_defect(s, s.t(), {s.t()}, 1, 2);
    CHECK(d.members.empty());
    auto e = containment_defect(s, s.t(), {compose(s.t(), s.t())}, 1, 2);
    CHECK(e.mass == 1);
}
