#include "rwlab/report.hpp"

#include <doctest.h>

using namespace rwlab;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-1/4") == Rational(-1, 4));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(to_string(parse_rational("6/8")) == "3/4");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(exact_rational(0.5) == Rational(1, 2));
    auto e = exp_enclosure(-1.0);
    CHECK(e.lo < std::exp(-1.0));
    CHECK(e.hi > std::exp(-1.0));
}

TEST_CASE("error kinds map to exit codes") {
    CHECK(exit_code(ErrorKind::config) == 1);
    CHECK(exit_code(ErrorKind::resource_limit) == 2);
    CHECK(exit_code(ErrorKind::invariant) == 3);
}

TEST_CASE("report envelope and values") {
    Json env = envelope("walk", {{"n", 3}});
    CHECK(env["schema"] == report_schema);
    CHECK(env["spec"]["n"] == 3);
    Json v = exact_value(Rational(3, 8));
    CHECK(v["mode"] == "exact");
    CHECK(v["rational"] == "3/8");
    CHECK(v["value"].get<double>() == doctest::Approx(0.375));
    Json m = mc_value(0.5, 0.01);
    CHECK(m["stderr"].get<double>() == doctest::Approx(0.01));
    CHECK(float_value(std::nan(""))["value"].is_null());
    CHECK(dump(Json{{"a", 1}}).back() == '\n');
}

TEST_CASE("statistics serialize with every field") {
    auto z = parse_action("zd:1");
    OrbitOptions o;
    o.eps_grid = {Rational(1, 2)};
    auto st = orbit_statistics(*z, parse_measure(*z, "srw"), z->base_point(), 3, o);
    Json j = to_json(st);
    CHECK(j["n"] == 3);
    CHECK(j["tails"].size() == 1);
    CHECK(j["exp2_neg_size"]["mode"] == "exact");
}

TEST_CASE("schreier CSV export") {
    auto z = parse_action("zd:1");
    auto csv = schreier_ball_csv(*z, orbit_ball(*z, z->base_point(), 1));
    CHECK(csv.find("src") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') >= 5);
}
