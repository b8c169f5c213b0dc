#include "rwlab/line_kernel.hpp"
#include "rwlab/measure.hpp"

#include <doctest.h>

#include <random>

using namespace rwlab;

TEST_CASE("presets are probability measures") {
    for (const char* sel : {"zd:1", "zd:3", "free:2", "wreath_z2_z", "thompson_f_dyadic"}) {
        auto a = parse_action(sel);
        for (const char* m : {"srw", "lazy-srw", "uniform-ball:2"}) {
            auto nu = parse_measure(*a, m);
            validate_measure(*a, nu);
            CHECK(is_symmetric(*a, nu));
        }
        CHECK(is_lazy(*a, parse_measure(*a, "lazy-srw")));
    }
}

TEST_CASE("word measures") {
    auto z = parse_action("zd:1");
    auto nu = parse_measure(*z, "x:1/3; X:1/3; id:1/3");
    CHECK(nu.atoms.size() == 3);
    CHECK(nu.weight(z->parse_element("x")) == Rational(1, 3));
    CHECK_THROWS_AS(parse_measure(*z, "x:1/2"), Error);
    CHECK_THROWS_AS(parse_measure(*z, "x:-1/2; X:3/2"), Error);
}

TEST_CASE("convolution matches binomial coefficients on Z") {
    auto z = parse_action("zd:1");
    auto nu = parse_measure(*z, "srw");
    auto m = nu;
    for (int k = 1; k < 6; ++k) m = convolve(*z, m, nu);
    // nu^6 at 2j - 6 is C(6, j) / 64
    const int c6[] = {1, 6, 15, 20, 15, 6, 1};
    for (int j = 0; j <= 6; ++j) CHECK(m.weight(Element{Code{2 * j - 6}}) == Rational(c6[j]) / 64);
    CHECK(m.mass() == 1);
}

TEST_CASE("truncation records the dropped mass") {
    auto z = parse_action("zd:1");
    auto nu = parse_measure(*z, "uniform-ball:3");
    auto m = convolve(*z, nu, nu, 5);
    CHECK(m.atoms.size() == 5);
    CHECK(m.mass() + m.defect == 1);
}

TEST_CASE("mix, symmetrize and lazify") {
    auto f = parse_action("free:2");
    auto a = dirac<Rational>(*f, f->parse_element("a"));
    auto b = dirac<Rational>(*f, f->parse_element("b"));
    auto m = mix<Rational>({Rational(1, 4), Rational(3, 4)}, {a, b});
    CHECK(m.weight(f->parse_element("b")) == Rational(3, 4));
    auto s = symmetrize(*f, m);
    CHECK(is_symmetric(*f, s));
    CHECK(s.weight(f->parse_element("B")) == Rational(3, 8));
    auto l = lazify(*f, s);
    CHECK(is_lazy(*f, l));
    CHECK_THROWS_AS(mix<Rational>({Rational(1, 2)}, {a}), Error);
}

TEST_CASE("push and step agree") {
    auto z = parse_action("zd:2");
    auto nu = parse_measure(*z, "srw");
    auto two = convolve(*z, nu, nu);
    auto d = step(*z, step(*z, point_mass<Rational>(*z, z->base_point()), nu), nu);
    CHECK(l1_distance(d, push(*z, two, z->base_point())) == 0);
    CHECK(d.at(z->base_point()) == Rational(1, 4));
}

TEST_CASE("line kernel convolution agrees with direct summation") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::size_t len : {3u, 50u, 700u}) {
        LineDistribution a, b;
        a.offset = -5;
        b.offset = 2;
        a.p.resize(len);
        b.p.resize(len + 11);
        for (auto& v : a.p) v = u(rng);
        for (auto& v : b.p) v = u(rng);
        auto c = convolve_line(a, b);
        CHECK(c.offset == -3);
        REQUIRE(c.p.size() == a.p.size() + b.p.size() - 1);
        double worst = 0;
        for (std::size_t k = 0; k < c.p.size(); ++k) {
            double s = 0;
            for (std::size_t i = 0; i < a.p.size(); ++i)
                if (k >= i && k - i < b.p.size()) s += a.p[i] * b.p[k - i];
            worst = std::max(worst, std::abs(s - c.p[k]));
        }
        CHECK(worst < 1e-9);
        CHECK(c.error >= 0);
    }
}

TEST_CASE("shifted L1 distance") {
    LineDistribution a = line_from_map({{0, 0.5}, {1, 0.5}});
    CHECK(l1_shifted(a, a, 0) == doctest::Approx(0));
    CHECK(l1_shifted(a, a, 1) == doctest::Approx(1));
    CHECK(l1_shifted(a, a, 5) == doctest::Approx(2));
}
