#include "rwlab/catalogue.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace rwlab {

namespace {

std::string join_ints(const Code& c, std::size_t from, char open, char close) {
    std::string s(1, open);
    for (std::size_t i = from; i < c.size(); ++i) {
        if (i > from) s += ',';
        s += std::to_string(c[i]);
    }
    return s + close;
}

std::vector<std::int64_t> split_ints(std::string_view text) {
    std::vector<std::int64_t> out;
    std::string s(text);
    for (auto& c : s)
        if (c == ',' || c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}') c = ' ';
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw 0;
        } catch (...) {
            fail(ErrorKind::encoding, "bad integer '" + tok + "' in '" + std::string(text) + "'");
        }
    }
    return out;
}

// in-place symmetric difference of a sorted range with a single value
void toggle(Code& c, std::size_t from, std::int64_t v) {
    auto it = std::lower_bound(c.begin() + static_cast<std::ptrdiff_t>(from), c.end(), v);
    if (it != c.end() && *it == v)
        c.erase(it);
    else
        c.insert(it, v);
}

}  // namespace

// ---------------------------------------------------------------- Z^d

ZdAction::ZdAction(std::size_t d) : d_(d) {
    if (d == 0) fail(ErrorKind::config, "zd needs dimension d >= 1");
}

std::string ZdAction::name() const { return "zd:" + std::to_string(d_); }

std::string ZdAction::generator_name(std::size_t i) const {
    std::size_t axis = i / 2;
    bool neg = i & 1u;
    if (d_ <= 3) {
        char c = static_cast<char>("xyz"[axis]);
        return std::string(1, neg ? static_cast<char>(std::toupper(c)) : c);
    }
    return (neg ? "E" : "e") + std::to_string(axis + 1);
}

Element ZdAction::generator(std::size_t i) const {
    Element g{Code(d_, 0)};
    g.code[i / 2] = (i & 1u) ? -1 : 1;
    return g;
}

Element ZdAction::identity() const { return Element{Code(d_, 0)}; }

Element ZdAction::multiply(const Element& a, const Element& b) const {
    Element c = a;
    right_multiply(c, b);
    return c;
}

Element ZdAction::inverse(const Element& a) const {
    Element c = a;
    for (auto& v : c.code) v = -v;
    return c;
}

void ZdAction::act(const Element& g, Point& x) const {
    for (std::size_t i = 0; i < d_; ++i) x.code[i] += g.code[i];
}

void ZdAction::act_generator(std::size_t i, Point& x) const { x.code[i / 2] += (i & 1u) ? -1 : 1; }

void ZdAction::right_multiply(Element& a, const Element& b) const {
    for (std::size_t i = 0; i < d_; ++i) a.code[i] += b.code[i];
}

std::optional<std::int64_t> ZdAction::word_length(const Element& g) const {
    std::int64_t s = 0;
    for (auto v : g.code) s += v < 0 ? -v : v;
    return s;
}

Point ZdAction::base_point() const { return Point{Code(d_, 0)}; }

void ZdAction::validate(const Point& x) const {
    if (x.code.size() != d_) fail(ErrorKind::encoding, "point of " + name() + " must have " + std::to_string(d_) + " coordinates");
}

void ZdAction::validate(const Element& g) const {
    if (g.code.size() != d_) fail(ErrorKind::encoding, "element of " + name() + " must have " + std::to_string(d_) + " coordinates");
}

std::string ZdAction::format_point(const Point& x) const {
    return d_ == 1 ? std::to_string(x.code[0]) : join_ints(x.code, 0, '(', ')');
}

Point ZdAction::parse_point(std::string_view text) const {
    auto v = split_ints(text);
    Point x;
    x.code.assign(v.begin(), v.end());
    validate(x);
    return x;
}

std::string ZdAction::format_element(const Element& g) const { return format_point(Point{g.code}); }

std::vector<Point> ZdAction::folner_candidate(std::size_t r) const {
    std::vector<Point> out;
    const auto side = static_cast<std::int64_t>(2 * r + 1);
    std::size_t total = 1;
    for (std::size_t i = 0; i < d_; ++i) {
        total *= static_cast<std::size_t>(side);
        if (total > default_ball_cap) fail(ErrorKind::resource_limit, "box candidate too large");
    }
    for (std::size_t k = 0; k < total; ++k) {
        Point x{Code(d_, 0)};
        std::size_t rest = k;
        for (std::size_t i = 0; i < d_; ++i) {
            x.code[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(side)) - static_cast<std::int64_t>(r);
            rest /= static_cast<std::size_t>(side);
        }
        out.push_back(std::move(x));
    }
    return out;
}

// ---------------------------------------------------------------- F_k

FreeGroupAction::FreeGroupAction(std::size_t k) : k_(k) {
    if (k == 0 || k > 26) fail(ErrorKind::config, "free needs rank 1 <= k <= 26");
}

std::string FreeGroupAction::name() const { return "free:" + std::to_string(k_); }

std::string FreeGroupAction::generator_name(std::size_t i) const {
    char c = static_cast<char>('a' + i / 2);
    return std::string(1, (i & 1u) ? static_cast<char>(std::toupper(c)) : c);
}

Element FreeGroupAction::generator(std::size_t i) const { return Element{Code{static_cast<std::int64_t>(i)}}; }

Element FreeGroupAction::multiply(const Element& a, const Element& b) const {
    Element c = a;
    right_multiply(c, b);
    return c;
}

Element FreeGroupAction::inverse(const Element& a) const {
    Element c;
    c.code.reserve(a.code.size());
    for (auto it = a.code.rbegin(); it != a.code.rend(); ++it) c.code.push_back(*it ^ 1);
    return c;
}

void FreeGroupAction::act(const Element& g, Point& x) const {
    Element y = g;
    right_multiply(y, Element{x.code});
    x.code = std::move(y.code);
}

void FreeGroupAction::act_generator(std::size_t i, Point& x) const {
    auto letter = static_cast<std::int64_t>(i);
    if (!x.code.empty() && x.code.front() == (letter ^ 1))
        x.code.erase(x.code.begin());
    else
        x.code.insert(x.code.begin(), letter);
}

void FreeGroupAction::right_multiply(Element& a, const Element& b) const {
    for (auto letter : b.code) {
        if (!a.code.empty() && a.code.back() == (letter ^ 1))
            a.code.pop_back();
        else
            a.code.push_back(letter);
    }
}

std::optional<std::int64_t> FreeGroupAction::word_length(const Element& g) const {
    return static_cast<std::int64_t>(g.code.size());
}

void FreeGroupAction::check(const Code& c) const {
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0 || c[i] >= static_cast<std::int64_t>(2 * k_)) fail(ErrorKind::encoding, "letter out of range for " + name());
        if (i && c[i] == (c[i - 1] ^ 1)) fail(ErrorKind::encoding, "word is not freely reduced");
    }
}

void FreeGroupAction::validate(const Point& x) const { check(x.code); }
void FreeGroupAction::validate(const Element& g) const { check(g.code); }

std::string FreeGroupAction::format_point(const Point& x) const {
    if (x.code.empty()) return "id";
    std::string s;
    for (auto l : x.code) s += generator_name(static_cast<std::size_t>(l));
    return s;
}

Point FreeGroupAction::parse_point(std::string_view text) const { return Point{parse_element(text).code}; }

std::string FreeGroupAction::format_element(const Element& g) const { return format_point(Point{g.code}); }

std::vector<Point> FreeGroupAction::folner_candidate(std::size_t r) const {
    return orbit_ball(*this, base_point(), r).points;
}

// ---------------------------------------------------------------- Z_2 wr Z

std::string WreathZ2ZAction::generator_name(std::size_t i) const {
    static const char* names[] = {"t", "T", "a"};
    return names[i];
}

std::size_t WreathZ2ZAction::inverse_generator(std::size_t i) const { return i == 2 ? 2 : (i ^ 1u); }

Element WreathZ2ZAction::generator(std::size_t i) const {
    if (i == 0) return Element{Code{1}};
    if (i == 1) return Element{Code{-1}};
    return Element{Code{0, 0}};
}

Element WreathZ2ZAction::multiply(const Element& a, const Element& b) const {
    Element c = a;
    right_multiply(c, b);
    return c;
}

Element WreathZ2ZAction::inverse(const Element& a) const {
    const std::int64_t m = a.code[0];
    Element c{Code{-m}};
    for (std::size_t i = 1; i < a.code.size(); ++i) c.code.push_back(a.code[i] - m);
    return c;
}

void WreathZ2ZAction::act(const Element& g, Point& x) const {
    Element y = g;
    right_multiply(y, Element{x.code});
    x.code = std::move(y.code);
}

void WreathZ2ZAction::act_generator(std::size_t i, Point& x) const {
    if (i == 2) {
        toggle(x.code, 1, 0);
        return;
    }
    const std::int64_t s = i == 0 ? 1 : -1;
    for (auto& v : x.code) v += s;
}

void WreathZ2ZAction::right_multiply(Element& a, const Element& b) const {
    const std::int64_t m = a.code[0];
    if (b.code.size() == 1) {
        a.code[0] += b.code[0];
        return;
    }
    if (b.code.size() == 2) {
        toggle(a.code, 1, b.code[1] + m);
        a.code[0] += b.code[0];
        return;
    }
    Code out{m + b.code[0]};
    auto i = a.code.cbegin() + 1;
    auto j = b.code.cbegin() + 1;
    while (i != a.code.cend() || j != b.code.cend()) {
        if (j == b.code.cend() || (i != a.code.cend() && *i < *j + m)) {
            out.push_back(*i++);
        } else if (i == a.code.cend() || *j + m < *i) {
            out.push_back(*j++ + m);
        } else {
            ++i;
            ++j;
        }
    }
    a.code = std::move(out);
}

std::optional<std::int64_t> WreathZ2ZAction::word_length(const Element& g) const {
    const std::int64_t m = g.code[0];
    std::int64_t lo = std::min<std::int64_t>(0, m), hi = std::max<std::int64_t>(0, m);
    if (g.code.size() > 1) {
        lo = std::min(lo, g.code[1]);
        hi = std::max(hi, g.code.back());
    }
    const std::int64_t left_first = (0 - lo) + (hi - lo) + (hi - m);
    const std::int64_t right_first = (hi - 0) + (hi - lo) + (m - lo);
    return static_cast<std::int64_t>(g.code.size() - 1) + std::min(left_first, right_first);
}

void WreathZ2ZAction::validate(const Point& x) const { validate(Element{x.code}); }

void WreathZ2ZAction::validate(const Element& g) const {
    if (g.code.empty()) fail(ErrorKind::encoding, "wreath element needs a marker position");
    for (std::size_t i = 2; i < g.code.size(); ++i)
        if (g.code[i - 1] >= g.code[i]) fail(ErrorKind::encoding, "wreath lamps must be strictly increasing");
}

std::string WreathZ2ZAction::format_point(const Point& x) const {
    return join_ints(x.code, 1, '{', '}') + "@" + std::to_string(x.code[0]);
}

Point WreathZ2ZAction::parse_point(std::string_view text) const {
    auto at = text.find('@');
    if (at == std::string_view::npos) return Point{parse_element(text).code};
    auto lamps = split_ints(text.substr(0, at));
    auto m = split_ints(text.substr(at + 1));
    if (m.size() != 1) fail(ErrorKind::encoding, "bad wreath point '" + std::string(text) + "'");
    std::sort(lamps.begin(), lamps.end());
    Point x{Code{m[0]}};
    for (std::size_t i = 0; i < lamps.size(); ++i) {
        if (i && lamps[i] == lamps[i - 1]) fail(ErrorKind::encoding, "repeated lamp in '" + std::string(text) + "'");
        x.code.push_back(lamps[i]);
    }
    return x;
}

std::string WreathZ2ZAction::format_element(const Element& g) const { return format_point(Point{g.code}); }

std::vector<Point> WreathZ2ZAction::folner_candidate(std::size_t r) const {
    if (r > 8) fail(ErrorKind::resource_limit, "wreath box candidate radius above 8");
    const auto ri = static_cast<std::int64_t>(r);
    const std::size_t width = 2 * r + 1;
    std::vector<Point> out;
    for (std::int64_t m = -ri; m <= ri; ++m) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << width); ++mask) {
            Point x{Code{m}};
            for (std::size_t b = 0; b < width; ++b)
                if (mask >> b & 1u) x.code.push_back(static_cast<std::int64_t>(b) - ri);
            out.push_back(std::move(x));
        }
    }
    return out;
}

// ---------------------------------------------------------------- finite relation

FiniteRelationAction::FiniteRelationAction(std::shared_ptr<const FiniteRelationSpace> space)
    : space_(std::move(space)) {
    for (const auto& g : space_->generators()) {
        Permutation inv = invert(g.perm);
        std::size_t i = gens_.size();
        gens_.push_back(from_permutation(g.perm));
        names_.push_back(g.name);
        if (inv == g.perm) {
            inv_.push_back(i);
            continue;
        }
        gens_.push_back(from_permutation(inv));
        bool lower = g.name.size() == 1 && std::islower(static_cast<unsigned char>(g.name[0]));
        names_.push_back(lower ? std::string(1, static_cast<char>(std::toupper(g.name[0]))) : g.name + "^-1");
        inv_.push_back(i + 1);
        inv_.push_back(i);
    }
}

std::string FiniteRelationAction::name() const { return "finite_relation:" + std::to_string(space_->size()); }

Element FiniteRelationAction::identity() const { return from_permutation(identity_permutation(space_->size())); }

Element FiniteRelationAction::from_permutation(const Permutation& p) {
    Element g;
    for (auto v : p) g.code.push_back(static_cast<std::int64_t>(v));
    return g;
}

Permutation FiniteRelationAction::to_permutation(const Element& g) {
    Permutation p;
    for (auto v : g.code) p.push_back(static_cast<std::size_t>(v));
    return p;
}

Element FiniteRelationAction::multiply(const Element& a, const Element& b) const {
    Element c = b;
    for (auto& v : c.code) v = a.code[static_cast<std::size_t>(v)];
    return c;
}

Element FiniteRelationAction::inverse(const Element& a) const {
    Element c = a;
    for (std::size_t i = 0; i < a.code.size(); ++i) c.code[static_cast<std::size_t>(a.code[i])] = static_cast<std::int64_t>(i);
    return c;
}

void FiniteRelationAction::act(const Element& g, Point& x) const { x.code[0] = g.code[static_cast<std::size_t>(x.code[0])]; }

void FiniteRelationAction::validate(const Point& x) const {
    if (x.code.size() != 1 || x.code[0] < 0 || x.code[0] >= static_cast<std::int64_t>(space_->size()))
        fail(ErrorKind::encoding, "point index out of range for " + name());
}

void FiniteRelationAction::validate(const Element& g) const {
    if (g.code.size() != space_->size()) fail(ErrorKind::encoding, "permutation has wrong size for " + name());
    std::vector<bool> hit(space_->size(), false);
    for (auto v : g.code) {
        if (v < 0 || v >= static_cast<std::int64_t>(space_->size()) || hit[static_cast<std::size_t>(v)])
            fail(ErrorKind::encoding, "element is not a permutation");
        hit[static_cast<std::size_t>(v)] = true;
    }
}

std::string FiniteRelationAction::format_point(const Point& x) const { return std::to_string(x.code[0]); }

Point FiniteRelationAction::parse_point(std::string_view text) const {
    auto v = split_ints(text);
    if (v.size() != 1) fail(ErrorKind::encoding, "bad point '" + std::string(text) + "'");
    Point x{Code{v[0]}};
    validate(x);
    return x;
}

std::string FiniteRelationAction::format_element(const Element& g) const { return format_cycles(to_permutation(g)); }

// ---------------------------------------------------------------- catalogue

OraclePtr catalogue_action(std::string_view name, const std::vector<std::string>& params) {
    auto int_param = [&](std::size_t i, std::size_t dflt) -> std::size_t {
        if (params.size() <= i) return dflt;
        try {
            std::size_t used = 0;
            long v = std::stol(params[i], &used);
            if (used != params[i].size() || v <= 0) throw 0;
            return static_cast<std::size_t>(v);
        } catch (...) {
            fail(ErrorKind::config, "bad parameter '" + params[i] + "' for " + std::string(name));
        }
    };
    if (name == "zd") return std::make_shared<ZdAction>(int_param(0, 1));
    if (name == "free") return std::make_shared<FreeGroupAction>(int_param(0, 2));
    if (name == "wreath_z2_z") return std::make_shared<WreathZ2ZAction>();
    if (name == "thompson_f_dyadic") return std::make_shared<ThompsonFAction>();
    if (name == "finite_relation") {
        if (params.empty() || params[0] == "cycle")
            return std::make_shared<FiniteRelationAction>(
                std::make_shared<FiniteRelationSpace>(FiniteRelationSpace::cycle(int_param(1, 8))));
        if (params[0] == "file" && params.size() == 2) {
            std::ifstream in(params[1]);
            if (!in) fail(ErrorKind::config, "cannot open space file '" + params[1] + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            return std::make_shared<FiniteRelationAction>(
                std::make_shared<FiniteRelationSpace>(FiniteRelationSpace::parse(ss.str())));
        }
        fail(ErrorKind::config, "finite_relation takes cycle:N or file:PATH");
    }
    fail(ErrorKind::config, "unknown action '" + std::string(name) + "'");
}

OraclePtr parse_action(std::string_view selector) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : selector) {
        if (c == ':' && !(parts.size() >= 2 && parts[0] == "finite_relation" && parts[1] == "file")) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    std::string head = parts.front();
    parts.erase(parts.begin());
    return catalogue_action(head, parts);
}

}  // namespace rwlab
