#pragma once

#include "tauto/numeric.hpp"

namespace tauto {

// Closed interval [lo, hi] with outward directed rounding on every
// operation, so the true result of an exact-input computation is always
// enclosed. Used by the nested-radical density solver to certify digits.
class Interval {
public:
    Interval() : Interval(kDefaultPrecision) {}
    explicit Interval(mpfr_prec_t prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(long v, mpfr_prec_t prec) : Interval(prec) {
        mpfr_set_si(lo_, v, MPFR_RNDD);
        mpfr_set_si(hi_, v, MPFR_RNDU);
    }
    Interval(const BigInt& v, mpfr_prec_t prec) : Interval(prec) {
        mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
    }
    Interval(const Interval& o) {
        mpfr_init2(lo_, o.precision());
        mpfr_init2(hi_, o.precision());
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept {
        mpfr_init2(lo_, o.precision());
        mpfr_init2(hi_, o.precision());
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(const Interval& o) {
        if (this != &o) {
            mpfr_set_prec(lo_, o.precision());
            mpfr_set_prec(hi_, o.precision());
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    Interval& operator=(Interval&& o) noexcept {
        if (this != &o) { mpfr_swap(lo_, o.lo_); mpfr_swap(hi_, o.hi_); }
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

    Real lower() const { Real r(precision()); mpfr_set(r.raw(), lo_, MPFR_RNDD); return r; }
    Real upper() const { Real r(precision()); mpfr_set(r.raw(), hi_, MPFR_RNDU); return r; }
    Real midpoint() const {
        Real r(precision());
        mpfr_add(r.raw(), lo_, hi_, MPFR_RNDN);
        mpfr_div_2ui(r.raw(), r.raw(), 1, MPFR_RNDN);
        return r;
    }
    Real width() const {
        Real r(precision());
        mpfr_sub(r.raw(), hi_, lo_, MPFR_RNDU);
        return r;
    }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool strictly_negative() const { return mpfr_sgn(hi_) < 0; }
    bool strictly_positive() const { return mpfr_sgn(lo_) > 0; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    Interval operator-() const {
        Interval r(precision());
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        return r;
    }
    Interval& operator+=(const Interval& b) { *this = *this + b; return *this; }
    Interval& operator-=(const Interval& b) { *this = *this - b; return *this; }

    friend Interval operator*(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_t t;
        mpfr_init2(t, r.precision());
        mpfr_srcptr as[2] = {a.lo_, a.hi_};
        mpfr_srcptr bs[2] = {b.lo_, b.hi_};
        bool first = true;
        for (auto av : as)
            for (auto bv : bs) {
                mpfr_mul(t, av, bv, MPFR_RNDD);
                if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_mul(t, av, bv, MPFR_RNDU);
                if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw std::domain_error("interval division by interval containing zero");
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_t t;
        mpfr_init2(t, r.precision());
        mpfr_srcptr as[2] = {a.lo_, a.hi_};
        mpfr_srcptr bs[2] = {b.lo_, b.hi_};
        bool first = true;
        for (auto av : as)
            for (auto bv : bs) {
                mpfr_div(t, av, bv, MPFR_RNDD);
                if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_div(t, av, bv, MPFR_RNDU);
                if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return r;
    }

    /// Enclosure of sqrt; requires lo >= 0.
    friend Interval sqrt(const Interval& a) {
        if (mpfr_sgn(a.lo_) < 0) throw std::domain_error("interval sqrt of negative lower bound");
        Interval r(a.precision());
        mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    /// Clamp a lower bound that dipped slightly below zero back to zero.
    void clamp_lower_to_zero() {
        if (mpfr_sgn(lo_) < 0) mpfr_set_zero(lo_, 1);
        if (mpfr_sgn(hi_) < 0) mpfr_set_zero(hi_, 1);
    }

private:
    mpfr_t lo_, hi_;
};

inline Interval sqrt_int_iv(long m, mpfr_prec_t prec) { return sqrt(Interval(m, prec)); }

}  // namespace tauto
