#pragma once

#include "tauto/formula.hpp"
#include "tauto/numeric.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tauto {

/// Coefficients w_1..w_n_max of the all-formulae series; index 0 is zero.
/// w_n = [n=1]*m + w_{n-1} + sum_{i+j=n-1} w_i w_j.
std::vector<BigInt> w_coefficients(int m, int n_max);

/// Closed-form growth estimate sqrt((2m+sqrt(m))/(4 pi n^3)) (2 sqrt(m)+1)^n.
Real w_asymptotic_estimate(int m, long n, mpfr_prec_t prec = kDefaultPrecision);

/// Sum_{n<=s} coeffs[n] r^n evaluated by Horner.
Real truncated_eval(std::span<const BigInt> coeffs, const Real& r, int s);

struct CoeffTableOptions {
    int n_max = 50;
    // Raw per-class rows are kept for n <= dense_upto plus the checkpoint
    // lengths; the deep build needs the transform tables of every length
    // regardless, so this only controls queryable rows.
    int dense_upto = -1;  // -1: keep everything
    std::vector<int> checkpoints;
    int threads = 1;
};

// Exact per-class counts: counts[A][n] = number of length-n formulas whose
// falsity set has integer code A. Class 0 is the tautologies, class
// 2^(2^m)-1 the antilogies.
class CoeffTable {
public:
    static CoeffTable build(int m, const CoeffTableOptions& opts);
    static CoeffTable build(int m, int n_max) {
        CoeffTableOptions o;
        o.n_max = n_max;
        return build(m, o);
    }

    int m() const { return m_; }
    int n_max() const { return n_max_; }
    int num_classes() const { return 1 << (1 << m_); }
    Mask full() const { return static_cast<Mask>(num_classes() - 1); }

    bool has_row(int n) const {
        return n >= 1 && n <= n_max_ && !rows_[n].empty();
    }
    const std::vector<BigInt>& row(int n) const;
    const BigInt& count(Mask cls, int n) const { return row(n)[cls]; }
    const BigInt& total(int n) const;  // w_n

    Real ratio_at(Mask cls, int n, mpfr_prec_t prec = kDefaultPrecision) const;
    /// Sum_{n<=s} counts[cls][n] r^n; requires rows 1..s.
    Real truncated_class_eval(Mask cls, const Real& r, int s) const;

    // Binary cache (dense tables only): magic "TAUT1", u32 m, u32 n_max,
    // then rows in n-major order, each big integer as a little-endian
    // length-prefixed byte string.
    void save(const std::string& path) const;
    static CoeffTable load(const std::string& path);

private:
    CoeffTable() = default;
    int m_ = 0;
    int n_max_ = 0;
    std::vector<std::vector<BigInt>> rows_;  // [n] -> per-class counts (may be empty)
    std::vector<BigInt> w_;                  // [n] -> total
};

enum class CategoryKind { StrongS1, WeakS1, CombinedS1S2 };

struct CategorySeries {
    CategoryKind kind;
    int m = 0;
    int n_max = 0;
    std::vector<BigInt> taut, unknown, anti, basis;  // index by length, [0] unused
    std::vector<std::vector<BigInt>> basis_parts;    // combined only: B1..B5
};

/// Aggregate T/U/A/basis counts from the category recursions; every row
/// satisfies taut+unknown+anti = w_n.
CategorySeries category_coefficients(int m, int n_max, CategoryKind kind);

/// Substitutes the truncated tautology and all-formulae series for m=1 into
/// the degree-eight polynomial relation and returns the first order with a
/// nonzero residual coefficient (s+1 when all of 0..s vanish).
int octic_residual_first_nonzero(std::span<const BigInt> taut, std::span<const BigInt> w, int s);

}  // namespace tauto
