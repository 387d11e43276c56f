#ifndef LOADOUT_RATIONAL_HPP
#define LOADOUT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "loadout/errors.hpp"

namespace loadout {

// Exact arbitrary-precision rationals, kept canonical (positive denominator,
// coprime) by GMP. Serialized as "p/q", with "/q" omitted when q == 1.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den) {
    if (den == 0) throw InvalidParams("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return sgn(r); }

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    try {
        Rational r(s);  // accepts "p" and "p/q"
        if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational literal '" + s + "'");
    }
}

inline Integer pow_int(const Integer& base, unsigned long exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline Rational pow_rat(const Rational& base, unsigned long exp) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), exp);
    return out;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

}  // namespace loadout

#endif
