#include "rwlab/relation_space.hpp"

#include "rwlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rwlab {

Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

Permutation parse_cycles(std::string_view text, std::size_t n) {
    Permutation p = identity_permutation(n);
    std::vector<bool> seen(n, false);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i == text.size()) fail(ErrorKind::config, "empty permutation");
    while (i < text.size()) {
        if (text[i] != '(') fail(ErrorKind::config, "expected '(' in cycle notation: " + std::string(text));
        ++i;
        std::vector<std::size_t> cyc;
        for (;;) {
            skip();
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) fail(ErrorKind::config, "bad cycle notation: " + std::string(text));
            std::size_t v = std::stoul(std::string(text.substr(start, i - start)));
            if (v >= n) fail(ErrorKind::config, "point " + std::to_string(v) + " out of range in cycle");
            if (seen[v]) fail(ErrorKind::config, "point " + std::to_string(v) + " repeated in cycles");
            seen[v] = true;
            cyc.push_back(v);
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) p[cyc[k]] = cyc[(k + 1) % cyc.size()];
        skip();
    }
    return p;
}

std::string format_cycles(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) continue;
        out += '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += ' ';
            out += std::to_string(j);
            first = false;
            j = p[j];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
    return c;
}

Permutation invert(const Permutation& p) {
    Permutation q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = i;
    return q;
}

FiniteRelationSpace::FiniteRelationSpace(std::vector<Rational> weights, Permutation t,
                                         std::vector<NamedPermutation> generators)
    : weights_(std::move(weights)), t_(std::move(t)), generators_(std::move(generators)) {
    const std::size_t n = weights_.size();
    if (n == 0) fail(ErrorKind::config, "relation space needs at least one point");
    Rational total = 0;
    for (const auto& w : weights_) {
        if (w <= 0) fail(ErrorKind::config, "point weights must be positive");
        total += w;
    }
    if (total != 1) fail(ErrorKind::config, "point weights sum to " + to_string(total) + ", not 1");
    auto check_perm = [n](const Permutation& p, const std::string& what) {
        if (p.size() != n) fail(ErrorKind::config, what + " has wrong size");
        std::vector<bool> hit(n, false);
        for (auto v : p) {
            if (v >= n || hit[v]) fail(ErrorKind::config, what + " is not a permutation");
            hit[v] = true;
        }
    };
    check_perm(t_, "T");
    orbit_of_.assign(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        if (orbit_of_[x] != n) continue;
        std::vector<std::size_t> orb;
        std::size_t y = x;
        do {
            orbit_of_[y] = orbits_.size();
            orb.push_back(y);
            y = t_[y];
        } while (y != x);
        std::sort(orb.begin(), orb.end());
        orbits_.push_back(std::move(orb));
    }
    for (const auto& g : generators_) {
        check_perm(g.perm, "generator " + g.name);
        if (!preserves_orbits(g.perm)) fail(ErrorKind::config, "generator " + g.name + " does not preserve the orbits of T");
    }
}

FiniteRelationSpace FiniteRelationSpace::cycle(std::size_t n, std::vector<Rational> weights) {
    if (n < 2) fail(ErrorKind::config, "cycle space needs at least 2 points");
    if (weights.empty()) weights.assign(n, Rational(1, static_cast<unsigned long>(n)));
    if (weights.size() != n) fail(ErrorKind::config, "weight count does not match point count");
    Permutation t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = (i + 1) % n;
    Permutation tau = identity_permutation(n);
    std::swap(tau[0], tau[1]);
    return FiniteRelationSpace(std::move(weights), t, {{"s", t}, {"t", tau}});
}

FiniteRelationSpace FiniteRelationSpace::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    std::vector<Rational> weights;
    bool uniform = false;
    std::string t_text;
    std::vector<std::pair<std::string, std::string>> gens;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::string rest;
        std::getline(ls, rest);
        if (key == "points") {
            n = std::stoul(rest);
        } else if (key == "weights") {
            std::istringstream ws(rest);
            std::string w;
            while (ws >> w) {
                if (w == "uniform")
                    uniform = true;
                else
                    weights.push_back(parse_rational(w));
            }
        } else if (key == "T") {
            t_text = rest;
        } else if (key == "generator") {
            std::istringstream gs(rest);
            std::string name;
            gs >> name;
            std::string cyc;
            std::getline(gs, cyc);
            gens.emplace_back(name, cyc);
        } else {
            fail(ErrorKind::config, "unknown key '" + key + "' in space file");
        }
    }
    if (n == 0) fail(ErrorKind::config, "space file must give 'points N'");
    if (uniform || weights.empty()) weights.assign(n, Rational(1, static_cast<unsigned long>(n)));
    if (weights.size() != n) fail(ErrorKind::config, "space file weight count does not match points");
    if (t_text.empty()) fail(ErrorKind::config, "space file must give T");
    std::vector<NamedPermutation> named;
    for (auto& [name, cyc] : gens) named.push_back({name, parse_cycles(cyc, n)});
    return FiniteRelationSpace(std::move(weights), parse_cycles(t_text, n), std::move(named));
}

std::vector<RelationPair> FiniteRelationSpace::relation_pairs() const {
    std::vector<RelationPair> out;
    for (std::size_t x = 0; x < size(); ++x)
        for (auto y : orbits_[orbit_of_[x]]) out.emplace_back(x, y);
    return out;
}

std::vector<RelationPair> FiniteRelationSpace::identity_graph() const {
    std::vector<RelationPair> out;
    for (std::size_t x = 0; x < size(); ++x) out.emplace_back(x, x);
    return out;
}

bool FiniteRelationSpace::preserves_orbits(const Permutation& g) const {
    if (g.size() != size()) return false;
    for (std::size_t x = 0; x < size(); ++x)
        if (orbit_of_[g[x]] != orbit_of_[x]) return false;
    return true;
}

Rational FiniteRelationSpace::left_count(const std::vector<RelationPair>& a) const {
    Rational m = 0;
    for (const auto& [x, y] : a) m += weights_[x];
    return m;
}

Rational FiniteRelationSpace::uniform_distance(const Permutation& g, const Permutation& h) const {
    Rational d = 0;
    for (std::size_t x = 0; x < size(); ++x)
        if (g[x] != h[x]) d += weights_[x];
    return d;
}

Rational FiniteRelationSpace::support_mass(const Permutation& g) const {
    return uniform_distance(g, identity_permutation(size()));
}

std::string FiniteRelationSpace::describe() const {
    std::string s = "points " + std::to_string(size()) + "\nweights";
    for (const auto& w : weights_) s += ' ' + to_string(w);
    s += "\nT " + format_cycles(t_) + '\n';
    for (const auto& g : generators_) s += "generator " + g.name + ' ' + format_cycles(g.perm) + '\n';
    return s;
}

}  // namespace rwlab
