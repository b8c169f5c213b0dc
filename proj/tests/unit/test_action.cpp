#include "rwlab/catalogue.hpp"

#include <doctest.h>

#include <random>

using namespace rwlab;

namespace {

// act(ab, x) == act(a, act(b, x)) on random words
void check_action_law(const ActionOracle& a, std::size_t len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, a.generator_count() - 1);
    for (int trial = 0; trial < 50; ++trial) {
        Element g = a.identity(), h = a.identity();
        for (std::size_t i = 0; i < len; ++i) g = a.multiply(g, a.generator(pick(rng)));
        for (std::size_t i = 0; i < len; ++i) h = a.multiply(h, a.generator(pick(rng)));
        Point x = a.base_point(), y = a.base_point();
        a.act(a.multiply(g, h), x);
        a.act(h, y);
        a.act(g, y);
        CHECK(x == y);
        CHECK(a.is_identity(a.multiply(g, a.inverse(g))));
        Element r = g;
        a.right_multiply(r, h);
        CHECK(r == a.multiply(g, h));
    }
}

}  // namespace

TEST_CASE("catalogue actions satisfy the action law") {
    for (const char* sel : {"zd:1", "zd:2", "free:2", "wreath_z2_z", "thompson_f_dyadic", "finite_relation:cycle:8"}) {
        CAPTURE(sel);
        auto a = parse_action(sel);
        check_action_law(*a, 8, 7);
        for (std::size_t i = 0; i < a->generator_count(); ++i)
            CHECK(a->is_identity(a->multiply(a->generator(i), a->generator(a->inverse_generator(i)))));
    }
}

TEST_CASE("free group words reduce") {
    auto f = parse_action("free:2");
    CHECK(f->is_identity(f->parse_element("aA")));
    CHECK(f->is_identity(f->parse_element("abBA")));
    CHECK(f->word_length(f->parse_element("abAB")) == 4);
    CHECK(f->word_length(f->parse_element("abBb")) == 2);
    CHECK(f->format_element(f->parse_element("a*b*B*b")) == "ab");
}

TEST_CASE("Z^d word length is the l1 norm") {
    auto z = parse_action("zd:2");
    CHECK(z->word_length(z->parse_element("xxY")) == 3);
    CHECK(z->word_length(z->parse_element("xX")) == 0);
}

TEST_CASE("lamplighter group multiplication") {
    auto w = parse_action("wreath_z2_z");
    // a t a T switches lamps 0 and 1
    Element g = w->parse_element("a t a T");
    CHECK(w->word_length(g) == 4);
    CHECK(w->is_identity(w->multiply(g, g)));
    CHECK(!w->is_identity(w->parse_element("t a T a")) );
    CHECK(w->is_identity(w->parse_element("a a")));
}

TEST_CASE("Thompson group relations") {
    auto f = parse_action("thompson_f_dyadic");
    Element x0 = f->parse_element("x0"), x1 = f->parse_element("x1");
    auto conj = [&](const Element& g, const Element& h) { return f->multiply(f->multiply(f->inverse(h), g), h); };
    auto comm = [&](const Element& a, const Element& b) {
        return f->multiply(f->multiply(a, b), f->multiply(f->inverse(a), f->inverse(b)));
    };
    Element x2 = conj(x1, x0), x3 = conj(x2, x0);
    Element a = f->multiply(x0, f->inverse(x1));
    CHECK(f->is_identity(comm(a, x2)));
    CHECK(f->is_identity(comm(a, x3)));
    CHECK(!f->is_identity(comm(x0, x1)));
    // x1 fixes [0, 1/2]
    Point q = ThompsonFAction::dyadic_point(1, 2);
    Point y = q;
    f->act(x1, y);
    CHECK(y == q);
    CHECK(f->format_point(f->parse_point("3/8")) == "3/8");
}

TEST_CASE("finite relation space") {
    auto s = FiniteRelationSpace::cycle(8);
    CHECK(s.size() == 8);
    CHECK(s.orbits().size() == 1);
    CHECK(s.uniform_distance(parse_cycles("(0 1)", 8), identity_permutation(8)) == Rational(1, 4));
    CHECK(format_cycles(compose(parse_cycles("(0 1)", 3), parse_cycles("(1 2)", 3))) == "(0 1 2)");
    auto p = FiniteRelationSpace::parse("points 4\nweights uniform\nT (0 1)(2 3)\ngenerator s (0 1)\n");
    CHECK(p.orbits().size() == 2);
    CHECK(p.related(2, 3));
    CHECK(!p.related(1, 2));
    CHECK(p.left_count(p.relation_pairs()) == 2);
}

TEST_CASE("Schreier balls and exhaustion") {
    auto z = parse_action("zd:2");
    auto ball = orbit_ball(*z, z->base_point(), 3);
    CHECK(ball.points.size() == 25);  // 2 r^2 + 2 r + 1
    auto f = parse_action("free:2");
    CHECK(orbit_ball(*f, f->base_point(), 3).points.size() == 53);  // 2 3^r - 1
    ExhaustionSequence k(z, z->parse_element("x"));
    CHECK(k(2, z->base_point()).size() == 5);
}

TEST_CASE("bad input is rejected") {
    CHECK_THROWS_AS(parse_action("zd:0"), Error);
    CHECK_THROWS_AS(parse_action("nosuch"), Error);
    auto f = parse_action("free:2");
    CHECK_THROWS_AS(f->parse_element("q"), Error);
    CHECK_THROWS_AS(parse_cycles("(0 0)", 3), Error);
}
