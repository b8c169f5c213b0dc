#include "rwlab/decay.hpp"
#include "rwlab/inverted_orbit.hpp"
#include "rwlab/mc.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace rwlab;

namespace {

// Law of |O_n| on Z for the simple walk by listing all 2^n sign sequences
// and the partial sums h_n, h_n + h_{n-1}, ...
std::vector<Rational> brute_law_z(std::size_t n) {
    std::vector<Rational> law(n + 2);
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        std::set<long> pts{0};
        long s = 0;
        for (std::size_t i = n; i-- > 0;) {
            s += (mask >> i) & 1u ? 1 : -1;
            pts.insert(s);
        }
        law[pts.size()] += Rational(1, 1u << n);
    }
    return law;
}

IncrementSequence random_sequence(const ActionOracle& a, std::size_t len, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, a.generator_count() - 1);
    IncrementSequence h;
    for (std::size_t i = 0; i < len; ++i) h.push_back(a.generator(pick(rng)));
    return h;
}

}  // namespace

TEST_CASE("running composite matches the naive orbit") {
    std::mt19937_64 rng(11);
    for (const char* sel : {"zd:1", "zd:2", "free:2", "wreath_z2_z", "thompson_f_dyadic"}) {
        CAPTURE(sel);
        auto a = parse_action(sel);
        for (int t = 0; t < 20; ++t) {
            auto h = random_sequence(*a, 12, rng);
            auto fast = inverted_orbit(*a, h, a->base_point());
            auto slow = inverted_orbit_naive(*a, h, a->base_point());
            CHECK(fast.points == slow.points);
        }
    }
}

TEST_CASE("orbit of a short sequence") {
    auto z = parse_action("zd:1");
    IncrementSequence h{z->parse_element("x"), z->parse_element("x"), z->parse_element("X")};
    // points 0, h3 = -1, h3 h2 = 0, h3 h2 h1 = 1
    CHECK(inverted_orbit(*z, h, z->base_point()).size() == 3);
}

TEST_CASE("exact size law on Z matches enumeration") {
    auto z = parse_action("zd:1");
    auto nu = parse_measure(*z, "srw");
    for (std::size_t n = 1; n <= 10; ++n) {
        auto law = size_law_exact(*z, nu, z->base_point(), n, 100000000);
        auto brute = brute_law_z(n);
        law.resize(std::max(law.size(), brute.size()));
        brute.resize(law.size());
        CHECK(law == brute);
    }
    OrbitOptions o;
    auto st = orbit_statistics(*z, nu, z->base_point(), 2, o);
    REQUIRE(st.exp2_exact);
    CHECK(*st.exp2_exact == Rational(3, 16));
    CHECK(*st.mean_size_exact == Rational(5, 2));
}

TEST_CASE("pruned tail agrees with the full law") {
    auto f = parse_action("free:2");
    auto nu = parse_measure(*f, "srw");
    auto law = size_law_exact(*f, nu, f->base_point(), 8, 100000000);
    for (std::size_t k = 1; k <= 9; ++k) {
        Rational s = 0;
        for (std::size_t i = 0; i <= k && i < law.size(); ++i) s += law[i];
        CHECK(tail_exact(*f, nu, f->base_point(), 8, k, 100000000) == s);
    }
    CHECK(tail_from_law(law, Rational(1, 2), 8) == tail_exact(*f, nu, f->base_point(), 8, 4, 100000000));
}

TEST_CASE("budget exhaustion is reported") {
    auto f = parse_action("free:2");
    CHECK_THROWS_AS(size_law_exact(*f, parse_measure(*f, "srw"), f->base_point(), 12, 1000), Error);
}

TEST_CASE("Monte Carlo agrees with exact within error and ignores thread count") {
    auto z = parse_action("zd:2");
    auto nu = parse_measure(*z, "lazy-srw");
    OrbitOptions ex;
    auto exact = orbit_statistics(*z, nu, z->base_point(), 6, ex);
    OrbitOptions mc;
    mc.mode = Mode::mc;
    mc.samples = 60000;
    mc.seed = 99;
    mc.threads = 1;
    auto one = orbit_statistics(*z, nu, z->base_point(), 6, mc);
    mc.threads = 3;
    auto three = orbit_statistics(*z, nu, z->base_point(), 6, mc);
    CHECK(one.exp2 == three.exp2);
    CHECK(one.mean_size == three.mean_size);
    CHECK(std::abs(one.exp2 - exact.exp2) <= 4 * one.exp2_se);
    CHECK(std::abs(one.mean_size - exact.mean_size) <= 4 * one.mean_size_se);
    auto grid = orbit_statistics_mc_grid(*z, nu, z->base_point(), {6}, mc);
    CHECK(grid.front().exp2 == one.exp2);
}

TEST_CASE("Fekete inequality on Z") {
    auto z = parse_action("zd:1");
    OrbitOptions o;
    auto rep = fekete_check(*z, parse_measure(*z, "srw"), z->base_point(), Rational(1, 2), {{2, 2}, {3, 4}, {1, 5}}, o);
    CHECK(rep.ok);
    for (const auto& r : rep.rows) CHECK(*r.lhs_exact >= *r.rhs_exact);
}

TEST_CASE("concatenation identity and subadditivity") {
    std::mt19937_64 rng(5);
    for (const char* sel : {"zd:2", "free:2", "wreath_z2_z"}) {
        auto a = parse_action(sel);
        for (int t = 0; t < 30; ++t) {
            auto rep = subadditivity_check(*a, random_sequence(*a, 7, rng), random_sequence(*a, 5, rng), a->base_point());
            CHECK(rep.ok());
            CHECK(rep.size_concat <= rep.size_h + rep.size_t_);
        }
    }
}

TEST_CASE("decay classification on synthetic data") {
    std::vector<DecaySample> expo, poly;
    for (double n : {10.0, 20.0, 40.0, 80.0, 160.0}) {
        double v = std::exp(-0.3 * n) * 2.0;
        expo.push_back({n, v, v * 0.01});
        double w = 1.0 / std::sqrt(n);
        poly.push_back({n, w, w * 0.01});
    }
    auto e = decay_classify(expo);
    CHECK(e.verdict == Verdict::exponential);
    CHECK(e.rate == doctest::Approx(-0.3).epsilon(0.01));
    auto p = decay_classify(poly);
    CHECK(p.verdict == Verdict::subexponential);
    CHECK(p.beta == doctest::Approx(-0.5).epsilon(0.02));
    // saturating toward 1: the log n term pulls lambda negative, still not a decay
    std::vector<DecaySample> rising{{50, 0.17, 0.001}, {100, 0.35, 0.0015}, {200, 0.55, 0.0016}, {400, 0.78, 0.0013}};
    auto r = decay_classify(rising);
    CHECK(r.values_nondecreasing);
    CHECK(r.verdict == Verdict::subexponential);
    std::vector<DecaySample> geo;
    for (double n : {4.0, 8.0, 12.0, 16.0}) geo.push_back({n, std::pow(2.0, -n), 0});
    auto g = decay_classify(geo);
    CHECK(g.rate == doctest::Approx(-std::log(2.0)));
    CHECK(g.verdict == Verdict::exponential);
}

TEST_CASE("stream seeds are stable") {
    CHECK(stream_seed(1, 2) == stream_seed(1, 2));
    CHECK(stream_seed(1, 2) != stream_seed(1, 3));
    CHECK(chunk_count(mc_chunk + 1) == 2);
    CHECK(chunk_size(mc_chunk + 1, 1) == 1);
}
