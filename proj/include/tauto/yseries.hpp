#pragma once

#include "tauto/numeric.hpp"
#include "tauto/quad.hpp"

#include <string>
#include <vector>

namespace tauto {

// Truncated Laurent series in y = m^(-1/2) with exact rational coefficients.
// `guaranteed` is the largest order whose coefficient is exact; arithmetic
// propagates it so results never claim more digits than they own.
class YSeries {
public:
    YSeries() = default;
    static YSeries zero(int guaranteed);
    static YSeries constant(const Rational& c, int guaranteed);
    static YSeries y_power(int k, int guaranteed);
    /// num(y)/den(y) for polynomial coefficient lists (index = power of y).
    static YSeries rational_fn(const std::vector<Rational>& num,
                               const std::vector<Rational>& den, int guaranteed);

    int min_order() const { return min_order_; }
    int guaranteed() const { return guaranteed_; }
    Rational coeff(int order) const;

    YSeries operator+(const YSeries& b) const;
    YSeries operator-(const YSeries& b) const;
    YSeries operator-() const;
    YSeries operator*(const YSeries& b) const;
    YSeries operator/(const YSeries& b) const;
    YSeries operator*(const Rational& c) const;
    YSeries inverse() const;
    /// Requires an even leading order and a rational-square leading
    /// coefficient.
    YSeries sqrt() const;
    YSeries truncated(int guaranteed) const;

    /// Drops known leading zeros (tightens min_order).
    YSeries trimmed() const;
    bool known_zero() const;

    Real eval_at_y(const Real& y) const;

    /// "1/m - 7/4*m^-3/2 + 5/4*m^-2 + O(m^-5/2)"
    std::string to_string() const;
    /// {"order_num":-5,"order_den":2,"coeffs":[["-2",1,1],...]} keyed by
    /// twice the m-exponent.
    std::string to_json() const;

    void set_coeff(int order, const Rational& c);

private:
    int min_order_ = 0;
    int guaranteed_ = -1;  // empty/invalid until constructed
    std::vector<Rational> c_;
};

// Quadratic system solved order by order at z = s0 in exact rationals; W is
// substituted as the known series 1/y, other members are unknowns seeded at
// order -1 from the spec.
struct SeriesSolution {
    std::vector<std::string> names;  // spec member names (W included)
    std::vector<YSeries> values;     // value series at s0 per member
};
SeriesSolution solve_system_series(const SystemSpec& spec, int order);

/// s0 = y/(2+y) as a series.
YSeries s0_series(int order);
/// Closed-form value series of the strict-first-kind set at s0.
YSeries sc_value_series(int order);
/// Closed-form value series of the first-kind set at s0.
YSeries s1_value_series(int order);

struct StrongValues {
    YSeries sc, taut, unknown, anti;
};
/// The strong triple via the closed radical forms (branch with vanishing
/// leading behavior); must agree with solve_system_series.
StrongValues strong_values_closed(int order);

enum class RatioTarget { S1, Sc, StrongT, WeakT, WeakB, CombinedB, CombinedT, CombinedU, CombinedA };

/// Limit-ratio series via the value/ratio linear relation with beta_W = 1.
YSeries ratio_series(RatioTarget target, int order);

struct BoundsReport {
    YSeries lower;  // combined T ratio
    YSeries upper;  // 1 - combined A ratio
    Real lower_at(int m, mpfr_prec_t prec = kDefaultPrecision) const;
    Real upper_at(int m, mpfr_prec_t prec = kDefaultPrecision) const;
};
BoundsReport bounds_report(int order);

}  // namespace tauto
