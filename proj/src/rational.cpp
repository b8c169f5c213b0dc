#include "rwlab/rational.hpp"

#include "rwlab/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace rwlab {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&] { fail(ErrorKind::config, "not a rational number: '" + s + "'"); };
    if (s.empty()) bad();
    if (s.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0) bad();
        if (q.get_den() == 0) bad();
        q.canonicalize();
        return q;
    }
    // decimal with optional exponent, parsed exactly
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    mpz_class digits = 0;
    long scale = 0;
    bool any = false, dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            any = true;
            if (dot) --scale;
        } else if (c == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!any) bad();
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') bad();
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(s.substr(i + 1), &used);
        } catch (...) {
            bad();
        }
        if (used != s.size() - i - 1) bad();
        scale += e;
    }
    Rational q(digits);
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    if (scale >= 0)
        q *= ten;
    else
        q /= ten;
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

Rational pow(const Rational& base, unsigned long exponent) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    out.canonicalize();
    return out;
}

Rational exact_rational(double x) {
    if (!std::isfinite(x)) fail(ErrorKind::domain, "non-finite value has no rational form");
    return Rational(x);
}

ExpEnclosure exp_enclosure(double x) {
    double v = std::exp(x);
    double lo = v, hi = v;
    for (int k = 0; k < 4; ++k) {
        lo = std::nextafter(lo, 0.0);
        hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    }
    return {lo, hi};
}

}  // namespace rwlab
