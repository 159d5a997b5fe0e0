#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tauto {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Thrown when a request is refused because its cost is out of the supported
/// range (e.g. the per-class table for m >= 4).
class ResourceRefusal : public std::runtime_error {
public:
    explicit ResourceRefusal(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an iterative solver hits its iteration cap before reaching
/// the requested tolerance.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

constexpr mpfr_prec_t kDefaultPrecision = 256;

// Value type over mpfr_t. Each value carries its own precision; binary
// operations round to the wider of the two operand precisions (RNDN).
class Real {
public:
    Real() : Real(kDefaultPrecision) {}
    explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(long v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }
    Real(int v, mpfr_prec_t prec) : Real(static_cast<long>(v), prec) {}
    Real(double v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_d(x_, v, MPFR_RNDN); }
    Real(const BigInt& v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_z(x_, v.get_mpz_t(), MPFR_RNDN); }
    Real(const Rational& v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_q(x_, v.get_mpq_t(), MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(x_, o.precision()); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, o.precision()); mpfr_swap(x_, o.x_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(x_, o.precision()); mpfr_set(x_, o.x_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    static Real from_string(const std::string& s, mpfr_prec_t prec) {
        Real r(prec);
        if (mpfr_set_str(r.x_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("unparseable real literal: " + s);
        return r;
    }
    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.x_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(x_); }
    mpfr_srcptr raw() const { return x_; }
    mpfr_ptr raw() { return x_; }

    int sign() const { return mpfr_sgn(x_); }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

    friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
    Real operator-() const {
        Real r(precision());
        mpfr_neg(r.x_, x_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& b) { mpfr_add(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& b) { mpfr_div(x_, x_, b.x_, MPFR_RNDN); return *this; }

    friend Real operator+(const Real& a, long b) { Real r(a.precision()); mpfr_add_si(r.x_, a.x_, b, MPFR_RNDN); return r; }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator-(const Real& a, long b) { Real r(a.precision()); mpfr_sub_si(r.x_, a.x_, b, MPFR_RNDN); return r; }
    friend Real operator-(long a, const Real& b) { Real r(b.precision()); mpfr_si_sub(r.x_, a, b.x_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, long b) { Real r(a.precision()); mpfr_mul_si(r.x_, a.x_, b, MPFR_RNDN); return r; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(const Real& a, long b) { Real r(a.precision()); mpfr_div_si(r.x_, a.x_, b, MPFR_RNDN); return r; }
    friend Real operator/(long a, const Real& b) { Real r(b.precision()); mpfr_si_div(r.x_, a, b.x_, MPFR_RNDN); return r; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) != 0; }

    friend Real sqrt(const Real& a) {
        if (a.sign() < 0) throw std::domain_error("sqrt of negative Real");
        Real r(a.precision());
        mpfr_sqrt(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    friend Real abs(const Real& a) {
        Real r(a.precision());
        mpfr_abs(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    friend Real pow_ui(const Real& a, unsigned long e) {
        Real r(a.precision());
        mpfr_pow_ui(r.x_, a.x_, e, MPFR_RNDN);
        return r;
    }
    friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
    friend Real min(const Real& a, const Real& b) { return a < b ? a : b; }

    // 2^e at this precision (exact), handy for tolerance thresholds.
    static Real pow2(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.x_, 1, e, MPFR_RNDN);
        return r;
    }

    /// Decimal rendering with `digits` significant digits, truncated toward
    /// zero so every printed digit is certified.
    std::string decimal(std::size_t digits) const;

private:
    using MpfrBinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Real bin(const Real& a, const Real& b, MpfrBinOp op) {
        Real r(std::max(a.precision(), b.precision()));
        op(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    mpfr_t x_;
};

/// sqrt(m) at the given precision.
inline Real sqrt_int(long m, mpfr_prec_t prec) { return sqrt(Real(m, prec)); }

/// Dominant singularity s0 = 1/(2*sqrt(m)+1) of the all-formulae series.
inline Real singularity_s0(long m, mpfr_prec_t prec) {
    return 1 / (2 * sqrt_int(m, prec) + 1);
}

}  // namespace tauto
