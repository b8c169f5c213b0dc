#include "rwlab/measure.hpp"

#include <cstdio>
#include <set>
#include <sstream>

namespace rwlab {

FMeasure to_float(const RMeasure& nu) {
    FMeasure out;
    out.oracle = nu.oracle;
    for (const auto& [g, w] : nu.atoms) out.atoms.emplace(g, w.get_d());
    out.defect = nu.defect.get_d();
    return out;
}

FDistribution to_float(const RDistribution& d) {
    FDistribution out;
    out.oracle = d.oracle;
    for (const auto& [x, w] : d.mass) out.mass.emplace(x, w.get_d());
    out.defect = d.defect.get_d();
    return out;
}

std::vector<Element> element_ball(const ActionOracle& oracle, std::size_t r, std::size_t cap) {
    std::vector<Element> out{oracle.identity()};
    std::set<Element> seen{out.front()};
    std::size_t begin = 0;
    for (std::size_t d = 0; d < r; ++d) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t g = 0; g < oracle.generator_count(); ++g) {
                Element h = out[i];
                oracle.right_multiply(h, oracle.generator(g));
                if (seen.insert(h).second) {
                    if (out.size() >= cap) fail(ErrorKind::resource_limit, "element ball exceeds cap");
                    out.push_back(h);
                }
            }
        }
        begin = end;
    }
    return out;
}

RMeasure preset_measure(const ActionOracle& oracle, std::string_view name) {
    RMeasure nu;
    nu.oracle = oracle.name();
    if (name == "srw" || name == "lazy-srw") {
        const Rational w(1, static_cast<unsigned long>(oracle.generator_count()));
        for (std::size_t i = 0; i < oracle.generator_count(); ++i) nu.atoms[oracle.generator(i)] += w;
        return name == "srw" ? nu : lazify(oracle, nu);
    }
    const std::string_view ball = "uniform-ball:";
    if (name.substr(0, ball.size()) == ball) {
        std::size_t r = 0;
        try {
            r = std::stoul(std::string(name.substr(ball.size())));
        } catch (...) {
            fail(ErrorKind::config, "bad radius in '" + std::string(name) + "'");
        }
        auto elems = element_ball(oracle, r);
        const Rational w(1, static_cast<unsigned long>(elems.size()));
        for (auto& g : elems) nu.atoms.emplace(std::move(g), w);
        return nu;
    }
    fail(ErrorKind::config, "unknown measure preset '" + std::string(name) + "'");
}

RMeasure parse_measure(const ActionOracle& oracle, std::string_view spec) {
    std::string s(spec);
    if (s.find(':') == std::string::npos || s.rfind("uniform-ball:", 0) == 0) return preset_measure(oracle, s);
    for (auto& c : s)
        if (c == ';') c = '\n';
    RMeasure nu;
    nu.oracle = oracle.name();
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.rfind(':');
        if (colon == std::string::npos) fail(ErrorKind::config, "measure line '" + line + "' is not word:weight");
        Rational w = parse_rational(line.substr(colon + 1));
        if (w <= 0) fail(ErrorKind::config, "measure weights must be positive");
        nu.atoms[oracle.parse_element(line.substr(0, colon))] += w;
    }
    validate_measure(oracle, nu);
    return nu;
}

std::string format_measure(const ActionOracle& oracle, const RMeasure& nu) {
    std::string out;
    for (const auto& [g, w] : nu.atoms) out += oracle.format_element(g) + ":" + to_string(w) + "\n";
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string distribution_csv(const ActionOracle& oracle, const RDistribution& d) {
    std::string out = "point,probability\n";
    for (const auto& [x, w] : d.mass) out += csv_field(oracle.format_point(x)) + "," + to_string(w) + "\n";
    return out;
}

std::string distribution_csv(const ActionOracle& oracle, const FDistribution& d) {
    std::string out = "point,probability\n";
    for (const auto& [x, w] : d.mass) out += csv_field(oracle.format_point(x)) + "," + fmt_double(w) + "\n";
    return out;
}

}  // namespace rwlab
