#pragma once

#include "tauto/formula.hpp"
#include "tauto/interval.hpp"
#include "tauto/numeric.hpp"

#include <string>
#include <vector>

namespace tauto {

/// Number of variables x with F_x in the block P_{-;B}, i.e. with
/// (var mask | B) covering every assignment.
int count_m_b(Mask B, int m);

// Signed linear combination expressing the block series of (A, B) over the
// top blocks: coefficient of index B' is (-1)^{|A|+|B'|} for B <= B' <= ~A.
struct LinCombTerm {
    Mask b_prime;
    int sign;  // +1 or -1
};
std::vector<LinCombTerm> lincomb_coeffs(Mask A, Mask B, int m);

struct AlphaBetaRecord {
    int m_b = 0;
    int sigma = 1;                 // (-1)^|B|
    Interval alpha_up, beta_up;    // signed strict-superset sums
    Interval d;                    // discriminant
    Interval alpha, beta;
};

/// Per-subset values of the block series at the singularity (alpha) and
/// their ratio weights (beta), solved in decreasing popcount order with
/// directed-rounding enclosures.
class AlphaBetaTable {
public:
    struct Options {
        mpfr_prec_t precision = kDefaultPrecision;
        // d below -tolerance is a hard error; a tiny straddle of zero is
        // clamped (the discriminant is nonnegative in exact arithmetic).
        double d_negative_tolerance = 1e-30;
        double degenerate_tolerance = 1e-30;
    };

    static AlphaBetaTable solve(int m, const Options& opts);
    static AlphaBetaTable solve(int m) { return solve(m, Options()); }

    int m() const { return m_; }
    mpfr_prec_t precision() const { return prec_; }
    Mask full() const { return full_; }
    const Real& s0() const { return s0_; }
    const AlphaBetaRecord& record(Mask B) const { return records_[B]; }
    Real alpha(Mask B) const { return records_[B].alpha.midpoint(); }
    Real beta(Mask B) const { return records_[B].beta.midpoint(); }

    /// Limit density of the class with falsity code A.
    Real density_of_class(Mask A) const;
    /// Value of the class series at the singularity, from the top-block values.
    Real class_value_at_s0(Mask A) const;

    int clamp_warnings() const { return clamp_warnings_; }
    const std::vector<std::string>& flags() const { return flags_; }
    /// Largest enclosure width seen across alpha and beta values.
    Real max_enclosure_width() const;

private:
    AlphaBetaTable() = default;
    int m_ = 0;
    mpfr_prec_t prec_ = kDefaultPrecision;
    Mask full_ = 0;
    Real s0_;
    std::vector<AlphaBetaRecord> records_;
    int clamp_warnings_ = 0;
    std::vector<std::string> flags_;
};

/// JSON report with decimal strings carrying precision/4 significant digits.
std::string density_report_json(const AlphaBetaTable& table, bool all_classes);

}  // namespace tauto
