#pragma once

#include "rwlab/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rwlab {

using Permutation = std::vector<std::size_t>;

// "(0 1 2)(3 4)" on {0..n-1}; "()" is the identity.
Permutation parse_cycles(std::string_view text, std::size_t n);
std::string format_cycles(const Permutation& p);
Permutation compose(const Permutation& a, const Permutation& b);  // a after b
Permutation invert(const Permutation& p);
Permutation identity_permutation(std::size_t n);

struct NamedPermutation {
    std::string name;
    Permutation perm;
};

using RelationPair = std::pair<std::size_t, std::size_t>;

// Finite weighted stand-in for (X, mu, R): R is the orbit relation of T.
class FiniteRelationSpace {
public:
    FiniteRelationSpace(std::vector<Rational> weights, Permutation t, std::vector<NamedPermutation> generators);

    // uniform weights unless given; T = (0 1 ... n-1); generators s = T, t = (0 1)
    static FiniteRelationSpace cycle(std::size_t n, std::vector<Rational> weights = {});
    // points N / weights uniform|w0 w1 ... / T <cycles> / generator NAME <cycles>
    static FiniteRelationSpace parse(std::string_view text);

    std::size_t size() const { return weights_.size(); }
    const Rational& weight(std::size_t x) const { return weights_[x]; }
    const std::vector<Rational>& weights() const { return weights_; }
    const Permutation& t() const { return t_; }
    const std::vector<NamedPermutation>& generators() const { return generators_; }

    std::size_t orbit_id(std::size_t x) const { return orbit_of_[x]; }
    const std::vector<std::vector<std::size_t>>& orbits() const { return orbits_; }
    bool related(std::size_t x, std::size_t y) const { return orbit_of_[x] == orbit_of_[y]; }
    std::vector<RelationPair> relation_pairs() const;
    std::vector<RelationPair> identity_graph() const;

    bool preserves_orbits(const Permutation& g) const;
    // M_l(A) = sum_x mu(x) |A_x|
    Rational left_count(const std::vector<RelationPair>& a) const;
    // mu{x : g x != h x}
    Rational uniform_distance(const Permutation& g, const Permutation& h) const;
    Rational support_mass(const Permutation& g) const;

    std::string describe() const;

private:
    std::vector<Rational> weights_;
    Permutation t_;
    std::vector<NamedPermutation> generators_;
    std::vector<std::size_t> orbit_of_;
    std::vector<std::vector<std::size_t>> orbits_;
};

}  // namespace rwlab
