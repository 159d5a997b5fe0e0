#pragma once

#include "tauto/numeric.hpp"
#include "tauto/series.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace tauto {

// Monomial c * m^m_exp * z^z_deg; polynomials with m-dependent coefficients
// are stored symbolically so the same system description drives both the
// numeric solvers and the series expansions in y = m^(-1/2).
struct MTerm {
    int z_deg = 0;
    Rational coeff = 0;
    int m_exp = 0;
};
using MPoly = std::vector<MTerm>;

MPoly mpoly_z(int deg, long coeff = 1, int m_exp = 0);
Real mpoly_eval(const MPoly& p, int m, const Real& z);
/// Exact per-z-degree coefficients with the integer m substituted.
std::map<int, Rational> mpoly_collect(const MPoly& p, int m);

struct LinearEntry {
    int i, j;
    MPoly poly;  // g_ij
};
struct QuadEntry {
    int i, j, k;
    MPoly poly;  // h_ijk (multiplied by the base h in the equations)
};

// At-most-quadratic system A_i = f_i + sum_j g_ij A_j + sum_jk h h_ijk A_j A_k
// over the base Z = f + g Z + h Z^2 (Z is the all-formulae series in scope).
struct SystemSpec {
    int m = 0;
    std::vector<std::string> names;
    int w_index = -1;  // member whose series is Z itself, if present
    MPoly base_f, base_g, base_h;
    std::vector<MPoly> f;
    std::vector<LinearEntry> linear;
    std::vector<QuadEntry> quad;
    std::vector<Rational> seed_minus1;  // leading Laurent coefficients at s0
    bool natural_partition = false;
    int size() const { return static_cast<int>(names.size()); }
};

SystemSpec falsity_system_spec(int m);
SystemSpec category_system_spec(int m, CategoryKind kind);
SystemSpec simple_s1_spec(int m);  // members {W, S1}
SystemSpec simple_sc_spec(int m);  // members {W, Sc}

struct NaturalPartitionReport {
    bool ok = true;
    std::string detail;
};
/// Checks sum_i f_i = f, sum_i g_ij = g for every j, and
/// sum_i (h_ijk + h_ikj) = 2 for every (j, k), exactly over rationals.
NaturalPartitionReport validate_natural_partition(const SystemSpec& spec);

// Numeric base data: radius r, gamma = lim f_n/Z_n, coefficient vectors.
struct BaseSpec {
    mpfr_prec_t prec = kDefaultPrecision;
    Real r, gamma;
    std::vector<Real> f;  // power-series coefficients of f
    std::vector<Real> g, h;  // polynomial coefficients
    std::vector<Real> z;  // Z_0..Z_depth
};

Real poly_eval(std::span<const Real> coeffs, const Real& x);
/// zeta_s = 1 - gamma - g(r) - 2 h(r) Z^{<=s}(r).
Real zeta_s(const BaseSpec& base, int s);
/// sqrt((1-g(r))^2 - 4 f(r) h(r)) - gamma, the limit of zeta_s.
Real impurity(const BaseSpec& base);
/// Rewrites the equation so the new f has ratio new_gamma; requires gamma != 1.
BaseSpec gamma_convert(const BaseSpec& base, const Real& new_gamma);
/// f += delta Z, g -= delta; gamma moves by delta(r), zeta_s is unchanged.
BaseSpec delta_convert(const BaseSpec& base, std::span<const Real> delta);

class QuadSystem {
public:
    SystemSpec spec;
    mpfr_prec_t prec = kDefaultPrecision;
    BaseSpec base;
    std::vector<std::vector<BigInt>> member_series;  // exact truncations, index 0..depth
    std::vector<Real> gamma_i;
    int depth() const { return member_series.empty() ? 0 : static_cast<int>(member_series[0].size()) - 1; }
    int size() const { return spec.size(); }
};

/// Falsity-class partition as a quadratic system; member order is the class
/// code, truncations from the table (needs rows 1..depth).
QuadSystem build_falsity_system(const CoeffTable& table, int depth,
                                mpfr_prec_t prec = kDefaultPrecision);
QuadSystem build_category_system(int m, CategoryKind kind, int depth,
                                 mpfr_prec_t prec = kDefaultPrecision);

// Evaluated coefficients for one cut depth s.
struct CutContext {
    int s = 0;
    Real zeta, sigma_standard;
    std::vector<Real> member_trunc_at_r;  // A_j^{<=s}(r)
    struct Lin { int i, j; Real value; };
    struct Quad { int i, j, k; Real hj, hk, zeta_coef; };  // hj = h(r)h_ijk(r)A_j^{<=s}(r), etc.
    std::vector<Lin> lin;
    std::vector<Quad> quad;
};
CutContext make_cut_context(const QuadSystem& sys, int s);

std::vector<Real> apply_cut_operator(const QuadSystem& sys, const CutContext& ctx,
                                     std::span<const Real> x);
/// Closed form 1 - zeta_s - gamma + 2 zeta_s sum(x) for nonnegative systems.
Real jacobian_one_norm(const QuadSystem& sys, const CutContext& ctx, std::span<const Real> x);

// Contraction diagnostics for the standard shift at a point: the sufficient
// entrywise certificate, and the actual 1-norm of the shifted Jacobian. The
// certificate is sufficient only; the iteration regularly converges without it.
struct ContractionReport {
    Real max_entry;         // largest Jacobian entry
    Real entry_bound;       // certificate threshold
    Real shifted_one_norm;  // measured 1-norm of J - sigma*ones
    bool certified = false;
    bool norm_contracts = false;
};
ContractionReport contraction_report(const QuadSystem& sys, const CutContext& ctx,
                                     std::span<const Real> x);

enum class ShiftMode { None, Standard, Custom };

struct CutConfig {
    int s = 50;
    ShiftMode shift = ShiftMode::Standard;
    Real sigma_custom;
    Real tolerance = Real::from_string("1e-30", kDefaultPrecision);
    long max_iterations = 1000000;
    std::vector<Real> start;  // empty: 1 at the class of x0 (falsity) or member 0
    bool throw_on_divergence = false;
};

struct IterationResult {
    std::vector<Real> solution;
    long iterations = 0;
    bool converged = false;
    Real last_step;
    Real fixed_point_residual;  // infinity norm of C_s(x) - x, unshifted
    Real zeta;
    Real sigma;
    /// Which hyperplane the solution landed on: sum(x) value.
    Real coordinate_sum;
};

IterationResult shifted_iterate(const QuadSystem& sys, const CutConfig& cfg);

struct Normalization {
    enum Kind { None, SumToOne, Pin } kind = None;
    int pin_index = 0;
    Real pin_value;
};

/// Linear ratio extraction: solves beta_i = gamma_i + sum_j g_ij(r) beta_j
/// + sum_jk h(r) h_ijk(r) (A_j(r) beta_k + A_k(r) beta_j) given the member
/// values at r. Homogeneous systems need a normalization row.
std::vector<Real> ratio_linear_solve(const QuadSystem& sys, std::span<const Real> values_at_r,
                                     const Normalization& norm);

std::string scut_report_json(const QuadSystem& sys, const IterationResult& res,
                             const std::string& system_name, int s);

}  // namespace tauto
