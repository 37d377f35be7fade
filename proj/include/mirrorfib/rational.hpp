#pragma once

// Exact rational scalars. Thin helpers around GMP's mpq_class: parsing of
// "p/q" strings, canonical formatting, small conversions. Everything in the
// algebraic modules runs over these; floating point only enters the
// fibration-numerics module.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mirrorfib {

using Rat = mpq_class;

// Parse an exact rational from "p", "-p", "p/q" (base 10). Rejects anything
// mpq_set_str does not fully consume, and zero denominators.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational parse: empty string");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rational parse: bad literal '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("rational parse: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

// Canonical "p/q" (or "p" when integral) form; used verbatim in JSON output.
inline std::string rat_str(const Rat& q) {
    return q.get_str();
}

inline Rat rat_of(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool rat_is_integer(const Rat& q) {
    return q.get_den() == 1;
}

// Exact conversion to long for small integers (throws if it does not fit).
inline long rat_to_long(const Rat& q) {
    if (!rat_is_integer(q)) throw std::invalid_argument("rational: not an integer: " + rat_str(q));
    if (!q.get_num().fits_slong_p()) throw std::overflow_error("rational: integer too large");
    return q.get_num().get_si();
}

inline double rat_to_double(const Rat& q) { return q.get_d(); }

}  // namespace mirrorfib
