#include "rwlab/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace rwlab;

namespace {

Rational central_binomial_over_4n(unsigned n) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * n, n);
    Rational q(c);
    for (unsigned i = 0; i < n; ++i) q /= 4;
    return q;
}

// returns to the identity among all 4^t words of F_2, reducing with a stack
Rational brute_free_return(unsigned t) {
    std::size_t total = 1;
    for (unsigned i = 0; i < t; ++i) total *= 4;
    std::size_t hits = 0;
    for (std::size_t w = 0; w < total; ++w) {
        std::vector<int> st;
        std::size_t c = w;
        for (unsigned i = 0; i < t; ++i, c /= 4) {
            int l = static_cast<int>(c % 4);
            if (!st.empty() && (st.back() ^ 1) == l)
                st.pop_back();
            else
                st.push_back(l);
        }
        hits += st.empty();
    }
    return Rational(static_cast<long>(hits)) / Rational(static_cast<long>(total));
}

}  // namespace

TEST_CASE("return probabilities on Z") {
    auto z = parse_action("zd:1");
    auto p = return_sequence_exact(*z, parse_measure(*z, "srw"), z->base_point(), 12);
    CHECK(p[2] == Rational(1, 2));
    CHECK(p[4] == Rational(3, 8));
    for (unsigned n = 0; n <= 6; ++n) CHECK(p[2 * n] == central_binomial_over_4n(n));
    for (unsigned t = 1; t <= 12; t += 2) CHECK(p[t] == 0);
}

TEST_CASE("return probabilities on F_2") {
    auto f = parse_action("free:2");
    auto nu = parse_measure(*f, "srw");
    auto p = return_sequence_exact(*f, nu, f->base_point(), 8);
    CHECK(p[2] == Rational(1, 4));
    for (unsigned t = 0; t <= 8; t += 2) CHECK(p[t] == brute_free_return(t));
    auto laws = free_distance_laws(2, 8);
    for (unsigned t = 0; t <= 8; ++t) CHECK(laws[t][0] == p[t]);
    auto fl = return_sequence_float(*f, nu, f->base_point(), 8);
    CHECK(fl[8] == doctest::Approx(to_double(p[8])).epsilon(1e-12));
    CHECK(is_free_srw(*f, nu));
    CHECK(!is_free_srw(*f, parse_measure(*f, "lazy-srw")));
}

TEST_CASE("spectral radius estimators") {
    auto f = parse_action("free:2");
    auto rep = spectral_radius(*f, parse_measure(*f, "srw"), f->base_point(), 64);
    CHECK(rep.method == "distance-chain");
    const double kesten = std::sqrt(3.0) / 2;
    CHECK(rep.rho_root < rep.rho_ratio);
    CHECK(rep.rho_ratio <= kesten);
    CHECK(std::abs(rep.rho_ratio - kesten) < 0.02);
    auto small = spectral_radius(*f, parse_measure(*f, "srw"), f->base_point(), 8, "exact");
    for (std::size_t i = 0; i < small.rows.size(); ++i) CHECK(small.rows[i].p == doctest::Approx(rep.rows[i].p));
    auto z = parse_action("zd:1");
    auto rz = spectral_radius(*z, parse_measure(*z, "srw"), z->base_point(), 100);
    CHECK(rz.rho_root > 0.97);
    CHECK(rz.rho_ratio > rz.rho_root);
}

TEST_CASE("edge expansion of small networks") {
    auto k4 = network_from_csv("src,dst,conductance\na,b,1\na,c,1\na,d,1\nb,c,1\nb,d,1\nc,d,1\n");
    CHECK(k4.size == 4);
    CHECK(set_expansion(k4, {k4.index("a")}) == doctest::Approx(1.0));
    CHECK(set_expansion(k4, {k4.index("a"), k4.index("b")}) == doctest::Approx(2.0 / 3));
    std::string path;
    const std::size_t len = 10;
    for (std::size_t i = 0; i + 1 < len; ++i) path += std::to_string(i) + "," + std::to_string(i + 1) + ",1\n";
    auto net = network_from_csv(path);
    for (std::size_t k = 1; k < len; ++k) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < k; ++i) s.push_back(net.index(std::to_string(i)));
        // one cut edge over volume 1 + 2 (k - 1)
        CHECK(set_expansion(net, s) == doctest::Approx(1.0 / (2.0 * k - 1)));
    }
    CHECK_THROWS_AS(network_from_csv("a,b\n"), Error);
}

TEST_CASE("expansion of free group balls") {
    auto f = parse_action("free:2");
    auto nu = parse_measure(*f, "srw");
    for (std::size_t r = 1; r <= 5; ++r) {
        auto e = oracle_expansion(*f, nu, {f->folner_candidate(r)});
        // 4 3^{r-1} leaves leave with probability 3/4, ball size 2 3^r - 1
        const double q = std::pow(3.0, double(r));
        CHECK(e.phi == doctest::Approx(q / (2 * q - 1)));
        CHECK(e.phi > 0.5);
    }
    auto z = parse_action("zd:1");
    auto ez = catalogue_expansion(*z, parse_measure(*z, "srw"), {5, 10, 20});
    CHECK(ez.phi == doctest::Approx(1.0 / 41));
}

TEST_CASE("Mohar bound on Z^2") {
    auto z = parse_action("zd:2");
    auto nu = parse_measure(*z, "srw");
    auto rep = spectral_radius(*z, nu, z->base_point(), 30);
    auto e = catalogue_expansion(*z, nu, {5, 10});
    auto m = mohar_check(rep, e.phi);
    CHECK(m.sound_holds);
    CHECK(m.one_minus_rho <= e.phi);
}

TEST_CASE("ball network") {
    auto z = parse_action("zd:1");
    auto nu = parse_measure(*z, "srw");
    auto net = network_from_ball(*z, nu, orbit_ball(*z, z->base_point(), 3));
    CHECK(net.size == 7);
    CHECK(net.boundary[net.index("3")]);
    CHECK(!net.boundary[net.index("0")]);
}

TEST_CASE("linear-radius tails on Z") {
    auto z = parse_action("zd:1");
    auto nu = parse_measure(*z, "srw");
    // P(|S_8| <= 2) = (C(8,3) + C(8,4) + C(8,5)) / 256
    CHECK(length_tail_exact(*z, nu, 8, Rational(1, 4)) == Rational(56 + 70 + 56) / 256);
    auto rep = linear_radius_decay(*z, nu, {Rational(1, 4)}, {4, 8, 12}, 50000, 3);
    kesten_cross_check(rep, *z, nu, 12);
    CHECK(rep.cross_checks.size() == 3);
    for (const auto& c : rep.cross_checks) CHECK(c.holds);
    auto again = linear_radius_decay(*z, nu, {Rational(1, 4)}, {4, 8, 12}, 50000, 3, 4);
    for (std::size_t i = 0; i < rep.cells.size(); ++i) CHECK(rep.cells[i].hits == again.cells[i].hits);
}
