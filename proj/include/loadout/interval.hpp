#ifndef LOADOUT_INTERVAL_HPP
#define LOADOUT_INTERVAL_HPP

#include <mpfr.h>

#include <functional>
#include <string>
#include <utility>

#include "loadout/errors.hpp"
#include "loadout/rational.hpp"

namespace loadout {

inline constexpr long kDefaultPrecisionBits = 128;
inline constexpr long kMaxPrecisionBits = 4096;

enum class SignResult { Negative = -1, Zero = 0, Positive = 1, Indeterminate = 2 };

/// Directed-rounding interval [lo, hi] at a fixed working precision.
/// Every operation rounds outward, so the result always encloses the exact
/// real value. Values are immutable in spirit: operations return new
/// intervals and never mutate operands.
class Interval {
public:
    explicit Interval(long bits = kDefaultPrecisionBits) : bits_(bits) {
        mpfr_init2(lo_, bits_);
        mpfr_init2(hi_, bits_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    Interval(const Rational& r, long bits) : Interval(bits) {
        mpfr_set_q(lo_, r.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, r.get_mpq_t(), MPFR_RNDU);
    }

    Interval(long v, long bits) : Interval(Rational(v), bits) {}

    Interval(const Interval& o) : Interval(o.bits_) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }

    Interval(Interval&& o) noexcept : bits_(o.bits_) {
        mpfr_init2(lo_, bits_);
        mpfr_init2(hi_, bits_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }

    Interval& operator=(Interval o) noexcept {
        std::swap(bits_, o.bits_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }

    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    long precision_bits() const { return bits_; }

    double lower_approx() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper_approx() const { return mpfr_get_d(hi_, MPFR_RNDU); }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.bits_, b.bits_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.bits_, b.bits_));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a) {
        Interval r(a.bits_);
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval& a, const Interval& b) {
        Interval r(std::max(a.bits_, b.bits_));
        mpfr_t c;
        mpfr_init2(c, r.bits_);
        // min/max over the four endpoint products, rounded outward per side.
        bool first = true;
        for (const mpfr_srcptr x : {static_cast<mpfr_srcptr>(a.lo_), static_cast<mpfr_srcptr>(a.hi_)}) {
            for (const mpfr_srcptr y : {static_cast<mpfr_srcptr>(b.lo_), static_cast<mpfr_srcptr>(b.hi_)}) {
                mpfr_mul(c, x, y, MPFR_RNDD);
                if (first || mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
                mpfr_mul(c, x, y, MPFR_RNDU);
                if (first || mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(c);
        return r;
    }

    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero())
            throw SingularMatrix("interval division by an enclosure of zero");
        Interval r(std::max(a.bits_, b.bits_));
        mpfr_t c;
        mpfr_init2(c, r.bits_);
        bool first = true;
        for (const mpfr_srcptr x : {static_cast<mpfr_srcptr>(a.lo_), static_cast<mpfr_srcptr>(a.hi_)}) {
            for (const mpfr_srcptr y : {static_cast<mpfr_srcptr>(b.lo_), static_cast<mpfr_srcptr>(b.hi_)}) {
                mpfr_div(c, x, y, MPFR_RNDD);
                if (first || mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
                mpfr_div(c, x, y, MPFR_RNDU);
                if (first || mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(c);
        return r;
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    /// Enclosure of sqrt; requires a nonnegative lower endpoint.
    static Interval sqrt(const Interval& a) {
        if (mpfr_sgn(a.lo_) < 0)
            throw InvalidParams("sqrt of an interval with negative lower endpoint");
        Interval r(a.bits_);
        mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    static Interval sqrt(const Rational& r, long bits) {
        return sqrt(Interval(r, bits));
    }

    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }

    bool contains(const Rational& r) const {
        return mpfr_cmp_q(lo_, r.get_mpq_t()) <= 0 &&
               mpfr_cmp_q(hi_, r.get_mpq_t()) >= 0;
    }

    /// Sign if the enclosure decides it, Indeterminate otherwise.
    SignResult sign() const {
        if (mpfr_sgn(lo_) > 0) return SignResult::Positive;
        if (mpfr_sgn(hi_) < 0) return SignResult::Negative;
        if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return SignResult::Zero;
        return SignResult::Indeterminate;
    }

    std::string lower_string() const { return endpoint_string(lo_, MPFR_RNDD); }
    std::string upper_string() const { return endpoint_string(hi_, MPFR_RNDU); }

private:
    static std::string endpoint_string(mpfr_srcptr v, mpfr_rnd_t rnd) {
        if (mpfr_zero_p(v)) return "0";
        mpfr_exp_t e;
        char* raw = mpfr_get_str(nullptr, &e, 10, 0, v, rnd);
        std::string digits(raw);
        mpfr_free_str(raw);
        std::string sgn_part;
        if (!digits.empty() && digits[0] == '-') {
            sgn_part = "-";
            digits.erase(0, 1);
        }
        // Render as d.ddd...e<exp-1> (normalized scientific form, trailing
        // zeros dropped).
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string out = sgn_part + digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(static_cast<long>(e) - 1);
        return out;
    }

    long bits_;
    mpfr_t lo_;
    mpfr_t hi_;
};

/// Sign determination with deterministic precision escalation: evaluate the
/// quantity at `start_bits`, and while the enclosure straddles zero double the
/// precision up to `cap_bits`. The evaluation callback must recompute the
/// whole quantity from scratch at the requested precision.
inline SignResult certified_sign(const std::function<Interval(long)>& eval,
                                 long start_bits = kDefaultPrecisionBits,
                                 long cap_bits = kMaxPrecisionBits) {
    for (long bits = start_bits; bits <= cap_bits; bits *= 2) {
        SignResult s = eval(bits).sign();
        if (s != SignResult::Indeterminate) return s;
    }
    return SignResult::Indeterminate;
}

}  // namespace loadout

#endif
