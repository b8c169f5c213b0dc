#pragma once

#include "rwlab/errors.hpp"

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rwlab {

using Code = boost::container::small_vector<std::int64_t, 6>;

struct CodeHash {
    std::size_t operator()(const Code& c) const noexcept { return boost::hash_range(c.begin(), c.end()); }
};

struct Point {
    Code code;
    friend bool operator==(const Point& a, const Point& b) { return a.code == b.code; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) { return a.code < b.code; }
};

struct Element {
    Code code;
    friend bool operator==(const Element& a, const Element& b) { return a.code == b.code; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
    friend bool operator<(const Element& a, const Element& b) { return a.code < b.code; }
};

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept { return CodeHash{}(p.code); }
};
struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept { return CodeHash{}(e.code); }
};

struct Generator {
    std::size_t index = 0;
    bool inverted = false;
};

using GroupWord = std::vector<Generator>;

// A finitely generated group acting on a point set. The generator list is
// symmetric: inverse_generator(i) names the generator inverse to i.
// multiply(a, b) is the element "apply b, then a".
class ActionOracle {
public:
    virtual ~ActionOracle() = default;

    virtual std::string name() const = 0;
    virtual std::size_t generator_count() const = 0;
    virtual std::string generator_name(std::size_t i) const = 0;
    virtual std::size_t inverse_generator(std::size_t i) const = 0;
    virtual Element generator(std::size_t i) const = 0;

    virtual Element identity() const = 0;
    virtual Element multiply(const Element& a, const Element& b) const = 0;
    virtual Element inverse(const Element& a) const = 0;
    virtual void act(const Element& g, Point& x) const = 0;

    virtual void act_generator(std::size_t i, Point& x) const { act(generator(i), x); }
    // a <- a * b
    virtual void right_multiply(Element& a, const Element& b) const { a = multiply(a, b); }

    virtual bool acts_on_itself() const { return false; }
    virtual std::optional<std::int64_t> word_length(const Element&) const { return std::nullopt; }
    virtual Point base_point() const = 0;

    virtual void validate(const Point& x) const = 0;
    virtual void validate(const Element& g) const = 0;

    virtual std::string format_point(const Point& x) const;
    virtual Point parse_point(std::string_view text) const;
    virtual std::string format_element(const Element& g) const;

    // Candidate sets for isoperimetric search; empty when the oracle has none.
    virtual std::vector<Point> folner_candidate(std::size_t r) const;

    bool is_identity(const Element& g) const { return g == identity(); }
    std::size_t checked_generator(const Generator& g) const;

    // Parses "a*b*A", "a b A", "aBA" (when every generator name is one
    // character), or "id".
    GroupWord parse_word(std::string_view text) const;
    Element evaluate(const GroupWord& w) const;
    Element parse_element(std::string_view text) const { return evaluate(parse_word(text)); }
};

using OraclePtr = std::shared_ptr<const ActionOracle>;

// Image of x under the composite of w, rightmost letter first.
Point apply_word(const ActionOracle& oracle, const GroupWord& w, const Point& x);

struct SchreierEdge {
    std::size_t src;
    std::size_t generator;
    std::size_t dst;
};

struct SchreierBall {
    Point base;
    std::size_t radius = 0;
    std::vector<Point> points;        // BFS order
    std::vector<std::size_t> depth;   // distance from base
    std::vector<SchreierEdge> edges;  // only edges with both ends in the ball
    std::size_t index_of(const Point& x) const;  // points.size() if absent
};

constexpr std::size_t default_ball_cap = 1000000;

SchreierBall orbit_ball(const ActionOracle& oracle, const Point& base, std::size_t r,
                        std::size_t cap = default_ball_cap);

std::string schreier_ball_csv(const ActionOracle& oracle, const SchreierBall& ball);

// K_n(x) = {T^k x : |k| <= n}
class ExhaustionSequence {
public:
    ExhaustionSequence(OraclePtr oracle, Element t);
    std::vector<Point> operator()(std::size_t n, const Point& x) const;
    const Element& designated() const { return t_; }

private:
    OraclePtr oracle_;
    Element t_;
    Element t_inv_;
};

// name in {zd, free, wreath_z2_z, thompson_f_dyadic, finite_relation}
OraclePtr catalogue_action(std::string_view name, const std::vector<std::string>& params = {});

// "zd:2", "free:2", "wreath_z2_z", "thompson_f_dyadic", "finite_relation:cycle:8",
// "finite_relation:file:PATH"
OraclePtr parse_action(std::string_view selector);

}  // namespace rwlab
