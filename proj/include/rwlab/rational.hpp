#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rwlab {

using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1
std::string to_string(const Rational& q);

// Accepts "3", "-1/4", "0.25", "1e-3". Decimal input is read exactly.
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, unsigned long exponent);

// Exact binary value of a finite double.
Rational exact_rational(double x);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <class W> W weight_from(const Rational& q);
template <> inline Rational weight_from<Rational>(const Rational& q) { return q; }
template <> inline double weight_from<double>(const Rational& q) { return q.get_d(); }

// Closed interval around exp(x) computed in double and widened by a few ulps.
struct ExpEnclosure {
    double lo;
    double hi;
};
ExpEnclosure exp_enclosure(double x);

}  // namespace rwlab
