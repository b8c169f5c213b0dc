#include "rwlab/catalogue.hpp"

#include <algorithm>
#include <sstream>

namespace rwlab {

namespace {

// num / 2^exp with num odd unless the value is 0 (then exp = 0)
struct Dyadic {
    std::int64_t num = 0;
    std::int64_t exp = 0;
};

constexpr std::int64_t max_exp = 60;

Dyadic normalize(__int128 num, std::int64_t exp) {
    if (num == 0) return {0, 0};
    while (exp > 0 && (num & 1) == 0) {
        num /= 2;
        --exp;
    }
    while (exp < 0) {
        num *= 2;
        ++exp;
    }
    if (exp > max_exp || num > INT64_MAX / 4 || num < INT64_MIN / 4)
        fail(ErrorKind::resource_limit, "dyadic rational exceeds 64-bit precision");
    return {static_cast<std::int64_t>(num), exp};
}

__int128 scaled(const Dyadic& a, std::int64_t e) { return static_cast<__int128>(a.num) << (e - a.exp); }

Dyadic add(const Dyadic& a, const Dyadic& b) {
    std::int64_t e = std::max(a.exp, b.exp);
    return normalize(scaled(a, e) + scaled(b, e), e);
}

Dyadic sub(const Dyadic& a, const Dyadic& b) { return add(a, {-b.num, b.exp}); }

Dyadic times_pow2(const Dyadic& a, std::int64_t s) { return normalize(a.num, a.exp - s); }

int cmp(const Dyadic& a, const Dyadic& b) {
    std::int64_t e = std::max(a.exp, b.exp);
    __int128 x = scaled(a, e), y = scaled(b, e);
    return x < y ? -1 : (x > y ? 1 : 0);
}

bool operator==(const Dyadic& a, const Dyadic& b) { return a.num == b.num && a.exp == b.exp; }

// log2 of dy/dx, which must be a power of two
std::int64_t slope_exp(const Dyadic& dx, const Dyadic& dy) {
    if (dx.num <= 0 || dy.num <= 0 || dx.num != dy.num)
        fail(ErrorKind::encoding, "piecewise-linear segment slope is not a power of two");
    return dx.exp - dy.exp;
}

struct Bp {
    Dyadic x, y;
};

std::vector<Bp> breakpoints(const Element& g) {
    std::vector<Bp> v{{{0, 0}, {0, 0}}};
    for (std::size_t i = 0; i + 4 <= g.code.size(); i += 4)
        v.push_back({{g.code[i], g.code[i + 1]}, {g.code[i + 2], g.code[i + 3]}});
    v.push_back({{1, 0}, {1, 0}});
    return v;
}

Element from_breakpoints(const std::vector<Bp>& v) {
    Element g;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        std::int64_t left = slope_exp(sub(v[i].x, v[i - 1].x), sub(v[i].y, v[i - 1].y));
        std::int64_t right = slope_exp(sub(v[i + 1].x, v[i].x), sub(v[i + 1].y, v[i].y));
        if (left == right) continue;
        g.code.insert(g.code.end(), {v[i].x.num, v[i].x.exp, v[i].y.num, v[i].y.exp});
    }
    return g;
}

Dyadic eval(const std::vector<Bp>& v, const Dyadic& t) {
    std::size_t i = 1;
    while (i + 1 < v.size() && cmp(v[i].x, t) < 0) ++i;
    // t in [v[i-1].x, v[i].x]
    std::int64_t s = slope_exp(sub(v[i].x, v[i - 1].x), sub(v[i].y, v[i - 1].y));
    return add(v[i - 1].y, times_pow2(sub(t, v[i - 1].x), s));
}

std::vector<Bp> swapped(const std::vector<Bp>& v) {
    std::vector<Bp> w;
    for (const auto& b : v) w.push_back({b.y, b.x});
    return w;
}

std::string fmt(const Dyadic& d) {
    if (d.exp == 0) return std::to_string(d.num);
    return std::to_string(d.num) + "/" + std::to_string(std::int64_t{1} << d.exp);
}

Dyadic parse_dyadic(std::string_view text) {
    auto r = parse_rational(text);
    mpz_class den = r.get_den();
    std::int64_t e = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++e;
    }
    if (den != 1) fail(ErrorKind::encoding, "'" + std::string(text) + "' is not a dyadic rational");
    if (!r.get_num().fits_slong_p() || e > max_exp) fail(ErrorKind::encoding, "dyadic rational too large");
    return {r.get_num().get_si(), e};
}

}  // namespace

ThompsonFAction::ThompsonFAction() {
    auto make = [](std::vector<Bp> interior) {
        std::vector<Bp> v{{{0, 0}, {0, 0}}};
        v.insert(v.end(), interior.begin(), interior.end());
        v.push_back({{1, 0}, {1, 0}});
        return from_breakpoints(v);
    };
    Element x0 = make({{{1, 1}, {1, 2}}, {{3, 2}, {1, 1}}});
    Element x1 = make({{{1, 1}, {1, 1}}, {{3, 2}, {5, 3}}, {{7, 3}, {3, 2}}});
    gens_ = {x0, inverse(x0), x1, inverse(x1)};
}

std::string ThompsonFAction::generator_name(std::size_t i) const {
    static const char* names[] = {"x0", "X0", "x1", "X1"};
    return names[i];
}

Element ThompsonFAction::multiply(const Element& a, const Element& b) const {
    auto va = breakpoints(a), vb = breakpoints(b);
    auto vb_inv = swapped(vb);
    std::vector<Dyadic> xs;
    for (const auto& p : vb) xs.push_back(p.x);
    for (std::size_t i = 1; i + 1 < va.size(); ++i) xs.push_back(eval(vb_inv, va[i].x));
    std::sort(xs.begin(), xs.end(), [](const Dyadic& p, const Dyadic& q) { return cmp(p, q) < 0; });
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Bp> out;
    for (const auto& x : xs) out.push_back({x, eval(va, eval(vb, x))});
    return from_breakpoints(out);
}

Element ThompsonFAction::inverse(const Element& a) const { return from_breakpoints(swapped(breakpoints(a))); }

void ThompsonFAction::act(const Element& g, Point& x) const {
    Dyadic t = eval(breakpoints(g), {x.code[0], x.code[1]});
    x.code[0] = t.num;
    x.code[1] = t.exp;
}

Point ThompsonFAction::base_point() const { return dyadic_point(1, 1); }

Point ThompsonFAction::dyadic_point(std::int64_t p, std::int64_t q) {
    Dyadic d = normalize(p, q);
    return Point{Code{d.num, d.exp}};
}

void ThompsonFAction::validate(const Point& x) const {
    const auto& c = x.code;
    if (c.size() != 2 || c[1] < 1 || c[1] > max_exp || (c[0] & 1) == 0 || c[0] <= 0 || c[0] >= (std::int64_t{1} << c[1]))
        fail(ErrorKind::encoding, "point must be p/2^q in (0,1) with p odd");
}

void ThompsonFAction::validate(const Element& g) const {
    if (g.code.size() % 4 != 0) fail(ErrorKind::encoding, "Thompson element must list (x, y) breakpoint pairs");
    auto v = breakpoints(g);
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (cmp(v[i - 1].x, v[i].x) >= 0 || cmp(v[i - 1].y, v[i].y) >= 0)
            fail(ErrorKind::encoding, "breakpoints must increase strictly");
        slope_exp(sub(v[i].x, v[i - 1].x), sub(v[i].y, v[i - 1].y));
    }
    if (from_breakpoints(v) != g) fail(ErrorKind::encoding, "Thompson element is not in canonical form");
}

std::string ThompsonFAction::format_point(const Point& x) const { return fmt({x.code[0], x.code[1]}); }

Point ThompsonFAction::parse_point(std::string_view text) const {
    Dyadic d = parse_dyadic(text);
    Point x{Code{d.num, d.exp}};
    validate(x);
    return x;
}

std::string ThompsonFAction::format_element(const Element& g) const {
    if (g.code.empty()) return "id";
    std::ostringstream s;
    s << '[';
    for (std::size_t i = 0; i < g.code.size(); i += 4) {
        if (i) s << ',';
        s << '(' << fmt({g.code[i], g.code[i + 1]}) << ',' << fmt({g.code[i + 2], g.code[i + 3]}) << ')';
    }
    s << ']';
    return s.str();
}

}  // namespace rwlab
