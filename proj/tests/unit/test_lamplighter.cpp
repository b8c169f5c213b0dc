#include "rwlab/lamplighter.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace rwlab;

namespace {

std::shared_ptr<const FiniteRelationAction> cycle8(std::vector<Rational> w = {}) {
    return std::make_shared<FiniteRelationAction>(
        std::make_shared<const FiniteRelationSpace>(FiniteRelationSpace::cycle(8, std::move(w))));
}

// P(no lamp lit after n steps) for switch-walk-switch over Z with switch
// {0}, by listing every (s1, step, s2) sequence with plain integer sets.
Rational brute_empty_z(std::size_t n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 8;
    Rational hits = 0;
    for (std::size_t code = 0; code < total; ++code) {
        std::set<long> lamps;
        long pos = 0;
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= 8) {
            const bool s1 = c & 1u, s2 = c & 2u;
            const long h = c & 4u ? 1 : -1;
            // (lamps, pos) * (s2 xor h s1, h)
            std::set<long> inc;
            if (s1) inc.insert(h);
            if (s2) {
                if (!inc.erase(0)) inc.insert(0);
            }
            for (long v : inc)
                if (!lamps.erase(pos + v)) lamps.insert(pos + v);
            pos += h;
        }
        if (lamps.empty()) hits += 1;
    }
    return hits / Rational(static_cast<long>(total));
}

}  // namespace

TEST_CASE("lamp state multiplication is associative with inverses") {
    auto z = parse_action("zd:1");
    auto ctx = LampContext::over_points(z);
    auto nu = parse_measure(*z, "srw");
    auto hat = sws_measure(ctx, nu, {z->base_point()});
    Rational total = 0;
    for (const auto& [s, w] : hat.atoms) total += w;
    CHECK(total == 1);
    std::vector<LampState> atoms;
    for (const auto& [s, w] : hat.atoms) atoms.push_back(s);
    for (const auto& a : atoms)
        for (const auto& b : atoms)
            for (const auto& c : atoms) {
                CHECK(lamp_multiply(ctx, lamp_multiply(ctx, a, b), c) == lamp_multiply(ctx, a, lamp_multiply(ctx, b, c)));
            }
    for (const auto& a : atoms) CHECK(lamp_multiply(ctx, a, lamp_inverse(ctx, a)) == lamp_identity(ctx));
}

TEST_CASE("empty-configuration probability matches enumeration on Z") {
    auto z = parse_action("zd:1");
    auto ctx = LampContext::over_points(z);
    auto hat = sws_measure(ctx, parse_measure(*z, "srw"), {z->base_point()});
    for (std::size_t n = 1; n <= 5; ++n) {
        auto law = lamp_walk_exact(ctx, hat, n);
        Rational empty = 0;
        for (const auto& [s, w] : law)
            if (s.c.empty()) empty += w;
        CHECK(empty == brute_empty_z(n));
    }
}

TEST_CASE("lamp identity with E 2^-|O_n|") {
    for (const char* sel : {"zd:1", "zd:2", "free:2"}) {
        auto a = parse_action(sel);
        auto nu = parse_measure(*a, "lazy-srw");
        CHECK_THROWS_AS(lamp_orbit_identity_check(a, nu, a->base_point(), 0), Error);
        for (std::size_t n = 1; n <= 4; ++n) {
            auto rep = lamp_orbit_identity_check(a, nu, a->base_point(), n);
            CHECK(rep.holds);
            CHECK(*rep.lhs_exact == *rep.rhs_exact);
        }
    }
    auto z = parse_action("zd:1");
    IdentityOptions mc;
    mc.mode = Mode::mc;
    mc.samples = 40000;
    mc.seed = 4;
    CHECK(lamp_orbit_identity_check(z, parse_measure(*z, "srw"), z->base_point(), 6, mc).holds);
}

TEST_CASE("lamp metrics on the cycle") {
    auto a = cycle8();
    auto ctx = LampContext::over_relation(a);
    LampConfig c{LampContext::pair_site(0, 1), LampContext::pair_site(2, 2)};
    CHECK(lamp_dc(ctx, c, {}) == Rational(1, 4));
    CHECK(lamp_dc(ctx, c, c) == 0);
    Element g = FiniteRelationAction::from_permutation(parse_cycles("(0 1)", 8));
    CHECK(lamp_dr(ctx, g, a->identity()) == Rational(1, 4));
    CHECK(lamp_distance(ctx, {c, g}, {{}, a->identity()}) == Rational(1, 2));
}

TEST_CASE("binomial tail") {
    CHECK(binomial_half_below(4, 2) == Rational(5, 16));
    CHECK(binomial_half_below(4, Rational(5, 2)) == Rational(11, 16));
    CHECK(binomial_half_below(0, 1) == 1);
    CHECK(binomial_half_below(3, 0) == 0);
}

TEST_CASE("probability lemma") {
    std::mt19937_64 rng(8);
    for (std::size_t n : {4u, 10u, 20u}) {
        for (const Rational& eps : {Rational(1, 10), Rational(1, 4), Rational(1, 2)}) {
            std::vector<Rational> dist(n + 1);
            Rational tot = 0;
            for (auto& d : dist) {
                d = Rational(static_cast<long>(rng() % 100 + 1));
                tot += d;
            }
            for (auto& d : dist) d /= tot;
            CHECK(problemma_check(n, eps, dist).holds);
        }
    }
    std::vector<Rational> bad(3, Rational(1, 2));
    CHECK_THROWS_AS(problemma_check(2, Rational(1, 4), bad), Error);
}

TEST_CASE("lamplighter inequalities on the cycle") {
    auto a = cycle8();
    auto nu = parse_measure(*a, "id:1/2; s:1/6; S:1/6; t:1/6");
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const Rational& eps : {Rational(1, 4), Rational(1, 2)}) {
            auto r1 = thm1_inequality(a, nu, eps, n);
            CHECK(r1.holds);
            CHECK(r1.lhs_lo == r1.lhs_hi);
            auto r2 = thm2_inequality(a, nu, eps, n);
            CHECK(r2.holds);
            CHECK(r2.lhs_lo <= r2.lhs_hi);
        }
    }
}

TEST_CASE("non-SIN witness") {
    std::vector<Rational> w(8, Rational(5, 32));
    w[0] = w[1] = Rational(1, 32);
    auto a = cycle8(w);
    auto rep = sin_defect_witness(a, Rational(1, 4));
    REQUIRE(rep.found);
    CHECK(rep.support_mass < Rational(1, 4));
    CHECK(rep.every_orbit_hit);
    CHECK(rep.displacement == 2);
    CHECK(rep.separated);
    CHECK(sin_defect_witness(a, Rational(1)).vacuous);
    // uniform weights: no nontrivial permutation moves less than 1/4
    CHECK(!sin_defect_witness(cycle8(), Rational(1, 4)).found);
}
