#pragma once

#include "rwlab/action.hpp"
#include "rwlab/relation_space.hpp"

#include <memory>

namespace rwlab {

// Z^d acting on itself. Generators +e1, -e1, +e2, ...
class ZdAction final : public ActionOracle {
public:
    explicit ZdAction(std::size_t d);
    std::size_t dimension() const { return d_; }

    std::string name() const override;
    std::size_t generator_count() const override { return 2 * d_; }
    std::string generator_name(std::size_t i) const override;
    std::size_t inverse_generator(std::size_t i) const override { return i ^ 1u; }
    Element generator(std::size_t i) const override;
    Element identity() const override;
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    void act(const Element& g, Point& x) const override;
    void act_generator(std::size_t i, Point& x) const override;
    void right_multiply(Element& a, const Element& b) const override;
    bool acts_on_itself() const override { return true; }
    std::optional<std::int64_t> word_length(const Element& g) const override;
    Point base_point() const override;
    void validate(const Point& x) const override;
    void validate(const Element& g) const override;
    std::string format_point(const Point& x) const override;
    Point parse_point(std::string_view text) const override;
    std::string format_element(const Element& g) const override;
    std::vector<Point> folner_candidate(std::size_t r) const override;

private:
    std::size_t d_;
};

// Free group F_k acting on itself by left multiplication. Reduced words,
// letter 2j is generator j and 2j+1 its inverse.
class FreeGroupAction final : public ActionOracle {
public:
    explicit FreeGroupAction(std::size_t k);
    std::size_t rank() const { return k_; }

    std::string name() const override;
    std::size_t generator_count() const override { return 2 * k_; }
    std::string generator_name(std::size_t i) const override;
    std::size_t inverse_generator(std::size_t i) const override { return i ^ 1u; }
    Element generator(std::size_t i) const override;
    Element identity() const override { return {}; }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    void act(const Element& g, Point& x) const override;
    void act_generator(std::size_t i, Point& x) const override;
    void right_multiply(Element& a, const Element& b) const override;
    bool acts_on_itself() const override { return true; }
    std::optional<std::int64_t> word_length(const Element& g) const override;
    Point base_point() const override { return {}; }
    void validate(const Point& x) const override;
    void validate(const Element& g) const override;
    std::string format_point(const Point& x) const override;
    Point parse_point(std::string_view text) const override;
    std::string format_element(const Element& g) const override;
    std::vector<Point> folner_candidate(std::size_t r) const override;

private:
    void check(const Code& c) const;
    std::size_t k_;
};

// Z_2 wr Z acting on itself. Element (f, m) is coded [m, sorted f...];
// (f1,m1)(f2,m2) = (f1 xor (f2 + m1), m1 + m2). Generators t, T, a.
class WreathZ2ZAction final : public ActionOracle {
public:
    std::string name() const override { return "wreath_z2_z"; }
    std::size_t generator_count() const override { return 3; }
    std::string generator_name(std::size_t i) const override;
    std::size_t inverse_generator(std::size_t i) const override;
    Element generator(std::size_t i) const override;
    Element identity() const override { return Element{Code{0}}; }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    void act(const Element& g, Point& x) const override;
    void act_generator(std::size_t i, Point& x) const override;
    void right_multiply(Element& a, const Element& b) const override;
    bool acts_on_itself() const override { return true; }
    std::optional<std::int64_t> word_length(const Element& g) const override;
    Point base_point() const override { return Point{Code{0}}; }
    void validate(const Point& x) const override;
    void validate(const Element& g) const override;
    std::string format_point(const Point& x) const override;
    Point parse_point(std::string_view text) const override;
    std::string format_element(const Element& g) const override;
    // {(f, m) : f within [-r, r], |m| <= r}
    std::vector<Point> folner_candidate(std::size_t r) const override;
};

// Thompson's group F acting on dyadic rationals in (0,1).
class ThompsonFAction final : public ActionOracle {
public:
    ThompsonFAction();
    std::string name() const override { return "thompson_f_dyadic"; }
    std::size_t generator_count() const override { return 4; }
    std::string generator_name(std::size_t i) const override;
    std::size_t inverse_generator(std::size_t i) const override { return i ^ 1u; }
    Element generator(std::size_t i) const override { return gens_[i]; }
    Element identity() const override { return {}; }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    void act(const Element& g, Point& x) const override;
    Point base_point() const override;
    void validate(const Point& x) const override;
    void validate(const Element& g) const override;
    std::string format_point(const Point& x) const override;
    Point parse_point(std::string_view text) const override;
    std::string format_element(const Element& g) const override;

    static Point dyadic_point(std::int64_t p, std::int64_t q);  // p / 2^q

private:
    std::vector<Element> gens_;
};

// The full-group analogue of a finite relation space: permutations generated
// by the space's generators, acting on point indices.
class FiniteRelationAction final : public ActionOracle {
public:
    explicit FiniteRelationAction(std::shared_ptr<const FiniteRelationSpace> space);
    const FiniteRelationSpace& space() const { return *space_; }
    std::shared_ptr<const FiniteRelationSpace> space_ptr() const { return space_; }

    std::string name() const override;
    std::size_t generator_count() const override { return gens_.size(); }
    std::string generator_name(std::size_t i) const override { return names_[i]; }
    std::size_t inverse_generator(std::size_t i) const override { return inv_[i]; }
    Element generator(std::size_t i) const override { return gens_[i]; }
    Element identity() const override;
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    void act(const Element& g, Point& x) const override;
    Point base_point() const override { return Point{Code{0}}; }
    void validate(const Point& x) const override;
    void validate(const Element& g) const override;
    std::string format_point(const Point& x) const override;
    Point parse_point(std::string_view text) const override;
    std::string format_element(const Element& g) const override;

    static Element from_permutation(const Permutation& p);
    static Permutation to_permutation(const Element& g);

private:
    std::shared_ptr<const FiniteRelationSpace> space_;
    std::vector<Element> gens_;
    std::vector<std::string> names_;
    std::vector<std::size_t> inv_;
};

}  // namespace rwlab
