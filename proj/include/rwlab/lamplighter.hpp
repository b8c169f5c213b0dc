#pragma once

#include "rwlab/catalogue.hpp"
#include "rwlab/inverted_orbit.hpp"
#include "rwlab/measure.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rwlab {

// Sorted, distinct lamp sites. Over P_f(X) a site is a point of X; over C_R
// a site is a pair (x, y) coded [x, y].
using LampConfig = std::vector<Point>;

LampConfig sym_diff(const LampConfig& a, const LampConfig& b);

enum class LampKind { points, relation };

class LampContext {
public:
    static LampContext over_points(OraclePtr group);
    static LampContext over_relation(std::shared_ptr<const FiniteRelationAction> group);

    LampKind kind() const { return kind_; }
    const ActionOracle& group() const { return *group_; }
    // relation kind only
    const FiniteRelationSpace& space() const;

    // g acts on P_f(X) through X, on C_R by (x, y) -> (x, g y)
    void act_site(const Element& g, Point& site) const;
    LampConfig act(const Element& g, const LampConfig& c) const;
    void validate(const LampConfig& c) const;

    static Point pair_site(std::size_t x, std::size_t y);
    std::string format_config(const LampConfig& c) const;

private:
    LampKind kind_ = LampKind::points;
    OraclePtr group_;
    std::shared_ptr<const FiniteRelationAction> relation_;
};

struct LampState {
    LampConfig c;
    Element g;
    friend bool operator==(const LampState& a, const LampState& b) { return a.c == b.c && a.g == b.g; }
    friend bool operator<(const LampState& a, const LampState& b) {
        return a.c < b.c || (a.c == b.c && a.g < b.g);
    }
};

LampState lamp_identity(const LampContext& ctx);
// (c1,g1)(c2,g2) = (c1 xor g1 c2, g1 g2)
LampState lamp_multiply(const LampContext& ctx, const LampState& a, const LampState& b);
LampState lamp_inverse(const LampContext& ctx, const LampState& s);
// (E, g) F = E xor g F
LampConfig affine_act(const LampContext& ctx, const LampState& s, const LampConfig& f);

using LampLaw = std::map<LampState, Rational>;

struct SwsMeasure {
    RMeasure base;
    LampConfig switch_set;
    LampLaw atoms;
};

// 1/4 nu(g) on (s2 xor g s1, g), s1, s2 in {empty, switch}
SwsMeasure sws_measure(const LampContext& ctx, const RMeasure& nu, const LampConfig& switch_set);

// Law of the left walk after n steps. budget bounds the number of state products.
LampLaw lamp_walk_exact(const LampContext& ctx, const SwsMeasure& nu_hat, std::size_t n,
                        std::uint64_t budget = 100000000);
std::vector<LampState> lamp_walk_mc(const LampContext& ctx, const SwsMeasure& nu_hat, std::size_t n,
                                    std::size_t samples, std::uint64_t seed, std::size_t threads = 1);

// relation kind: d_C = M_l(c1 xor c2), d_R = mu{g1 x != g2 x}, D = d_C + d_R
Rational lamp_dc(const LampContext& ctx, const LampConfig& a, const LampConfig& b);
Rational lamp_dr(const LampContext& ctx, const Element& g, const Element& h);
Rational lamp_distance(const LampContext& ctx, const LampState& a, const LampState& b);

struct IdentityReport {
    std::size_t n = 0;
    Mode mode = Mode::exact;
    std::optional<Rational> lhs_exact, rhs_exact;  // P(c_n = empty), E 2^{-|O_n(x)|}
    double lhs = 0, rhs = 0, slack = 0;
    bool holds = false;
};

struct IdentityOptions {
    Mode mode = Mode::exact;
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    std::uint64_t budget = 100000000;
    std::size_t threads = 1;
};

// Over P_f(X) with switch {x}: P(c_n = empty) = E 2^{-|O_n(x)|}.
IdentityReport lamp_orbit_identity_check(OraclePtr oracle, const RMeasure& nu, const Point& x, std::size_t n,
                                         const IdentityOptions& opts = {});

struct InequalityReport {
    std::string name;
    Rational eps;
    std::size_t n = 0;
    Rational probability;  // the lamp-walk probability on the left side
    Rational rhs;
    // left side as an interval; exact when lo == hi
    Rational lhs_lo, lhs_hi;
    bool holds = false;           // certified: lhs_hi <= rhs
    bool holds_rounded_up = false;  // with exp rounded upward: lhs_lo <= rhs
    double margin = 0;            // rhs - lhs_hi
};

// (1-eps) P(d_C(c_n, empty) < eps) <= sum_x mu(x) E 2^{-|O_n(x)|}
InequalityReport thm1_inequality(std::shared_ptr<const FiniteRelationAction> action, const RMeasure& nu,
                                 const Rational& eps, std::size_t n, std::uint64_t budget = 100000000);
// 1/2 P(d_C(c_n, empty) < eps n / 2) - exp(-eps n / 2) <= sum_x mu(x) P(|O_n(x)| <= 4 eps n)
InequalityReport thm2_inequality(std::shared_ptr<const FiniteRelationAction> action, const RMeasure& nu,
                                 const Rational& eps, std::size_t n, std::uint64_t budget = 100000000);

struct ProbLemmaReport {
    std::size_t n = 0;
    Rational eps;
    Rational lhs;        // P(Y_n < eps n), Y_n ~ Bin(X_n, 1/2)
    Rational rhs_tail;   // P(X_n < 4 eps n)
    double exp_lo = 0, exp_hi = 0;  // enclosure of exp(-eps n / 2)
    bool holds = false;  // lhs <= rhs_tail + exp_lo, implies the bound with exp_hi
    double margin = 0;
};

// P(Bin(k, 1/2) < t), exact
Rational binomial_half_below(std::size_t k, const Rational& t);
// dist[i] = P(X_n = i + 1), i = 0..n
ProbLemmaReport problemma_check(std::size_t n, const Rational& eps, const std::vector<Rational>& dist);

struct WitnessReport {
    Rational r;
    bool vacuous = false;
    bool found = false;
    Permutation g;
    std::vector<RelationPair> c;
    Rational support_mass;    // mu(supp g)
    Rational displacement;    // d_C(c, g c)
    bool every_orbit_hit = false;  // then displacement = 2
    Rational conjugate_lamp_distance;  // d_C of the lamp part of (c,id)(empty,g)(c,id)^-1 from empty
    bool separated = false;   // conjugate_lamp_distance >= 2 - r > r
    std::size_t searched = 0;
};

WitnessReport sin_defect_witness(std::shared_ptr<const FiniteRelationAction> action, const Rational& r,
                                 std::size_t cap = 100000);

}  // namespace rwlab
