#include "rwlab/action.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rwlab {

namespace {

std::string format_code(const Code& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    return s + "]";
}

Code parse_code(std::string_view text) {
    std::string s(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        fail(ErrorKind::encoding, "expected [i,j,...] but got '" + s + "'");
    Code c;
    std::stringstream in(s.substr(1, s.size() - 2));
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            c.push_back(std::stoll(item, &used));
            if (used != item.size()) throw 0;
        } catch (...) {
            fail(ErrorKind::encoding, "bad integer '" + item + "' in '" + s + "'");
        }
    }
    return c;
}

}  // namespace

std::string ActionOracle::format_point(const Point& x) const { return format_code(x.code); }

Point ActionOracle::parse_point(std::string_view text) const {
    Point x{parse_code(text)};
    validate(x);
    return x;
}

std::string ActionOracle::format_element(const Element& g) const { return format_code(g.code); }

std::vector<Point> ActionOracle::folner_candidate(std::size_t) const { return {}; }

std::size_t ActionOracle::checked_generator(const Generator& g) const {
    if (g.index >= generator_count())
        fail(ErrorKind::config, "generator index " + std::to_string(g.index) + " out of range for " + name());
    return g.inverted ? inverse_generator(g.index) : g.index;
}

GroupWord ActionOracle::parse_word(std::string_view text) const {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (c == '*' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);

    std::unordered_map<std::string, std::size_t> by_name;
    bool single_char = true;
    for (std::size_t i = 0; i < generator_count(); ++i) {
        auto n = generator_name(i);
        by_name[n] = i;
        if (n.size() != 1) single_char = false;
    }
    GroupWord w;
    for (const auto& t : tokens) {
        if (t == "id" || (t == "e" && !by_name.count("e"))) continue;
        auto it = by_name.find(t);
        if (it != by_name.end()) {
            w.push_back({it->second, false});
            continue;
        }
        if (single_char) {
            for (char c : t) {
                auto jt = by_name.find(std::string(1, c));
                if (jt == by_name.end())
                    fail(ErrorKind::config, "unknown generator '" + std::string(1, c) + "' for " + name());
                w.push_back({jt->second, false});
            }
            continue;
        }
        fail(ErrorKind::config, "unknown generator '" + t + "' for " + name());
    }
    return w;
}

Element ActionOracle::evaluate(const GroupWord& w) const {
    Element g = identity();
    for (const auto& letter : w) right_multiply(g, generator(checked_generator(letter)));
    return g;
}

Point apply_word(const ActionOracle& oracle, const GroupWord& w, const Point& x) {
    oracle.validate(x);
    Point y = x;
    for (auto it = w.rbegin(); it != w.rend(); ++it) oracle.act_generator(oracle.checked_generator(*it), y);
    return y;
}

std::size_t SchreierBall::index_of(const Point& x) const {
    auto it = std::find(points.begin(), points.end(), x);
    return static_cast<std::size_t>(it - points.begin());
}

SchreierBall orbit_ball(const ActionOracle& oracle, const Point& base, std::size_t r, std::size_t cap) {
    oracle.validate(base);
    SchreierBall ball;
    ball.base = base;
    ball.radius = r;
    std::unordered_map<Point, std::size_t, PointHash> index;
    ball.points.push_back(base);
    ball.depth.push_back(0);
    index.emplace(base, 0);
    std::size_t head = 0;
    while (head < ball.points.size()) {
        std::size_t d = ball.depth[head];
        if (d == r) break;
        for (std::size_t g = 0; g < oracle.generator_count(); ++g) {
            Point y = ball.points[head];
            oracle.act_generator(g, y);
            if (!index.count(y)) {
                if (ball.points.size() >= cap)
                    fail(ErrorKind::resource_limit, "orbit ball exceeds cap of " + std::to_string(cap) + " points");
                index.emplace(y, ball.points.size());
                ball.points.push_back(std::move(y));
                ball.depth.push_back(d + 1);
            }
        }
        ++head;
    }
    for (std::size_t i = 0; i < ball.points.size(); ++i) {
        for (std::size_t g = 0; g < oracle.generator_count(); ++g) {
            Point y = ball.points[i];
            oracle.act_generator(g, y);
            auto it = index.find(y);
            if (it != index.end()) ball.edges.push_back({i, g, it->second});
        }
    }
    return ball;
}

std::string schreier_ball_csv(const ActionOracle& oracle, const SchreierBall& ball) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::string out = "src,generator,dst\n";
    for (const auto& e : ball.edges) {
        out += quote(oracle.format_point(ball.points[e.src])) + ',' + quote(oracle.generator_name(e.generator)) + ',' +
               quote(oracle.format_point(ball.points[e.dst])) + '\n';
    }
    return out;
}

ExhaustionSequence::ExhaustionSequence(OraclePtr oracle, Element t)
    : oracle_(std::move(oracle)), t_(std::move(t)) {
    oracle_->validate(t_);
    t_inv_ = oracle_->inverse(t_);
}

std::vector<Point> ExhaustionSequence::operator()(std::size_t n, const Point& x) const {
    std::set<Point> k{x};
    Point fwd = x, back = x;
    for (std::size_t i = 0; i < n; ++i) {
        oracle_->act(t_, fwd);
        oracle_->act(t_inv_, back);
        k.insert(fwd);
        k.insert(back);
    }
    return {k.begin(), k.end()};
}

}  // namespace rwlab
