#include "tauto/quad.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tauto {

MPoly mpoly_z(int deg, long coeff, int m_exp) { return {MTerm{deg, Rational(coeff), m_exp}}; }

Real mpoly_eval(const MPoly& p, int m, const Real& z) {
    Real acc(z.precision());
    for (const MTerm& t : p) {
        Real term(t.coeff, z.precision());
        for (int e = 0; e < t.m_exp; ++e) term = term * m;
        if (t.z_deg > 0) term = term * pow_ui(z, static_cast<unsigned long>(t.z_deg));
        acc += term;
    }
    return acc;
}

std::map<int, Rational> mpoly_collect(const MPoly& p, int m) {
    std::map<int, Rational> out;
    for (const MTerm& t : p) {
        Rational c = t.coeff;
        for (int e = 0; e < t.m_exp; ++e) c *= m;
        out[t.z_deg] += c;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0) it = out.erase(it);
        else ++it;
    }
    return out;
}

// ---------------------------------------------------------------------------
// system descriptions

SystemSpec falsity_system_spec(int m) {
    const int bits = 1 << m;
    const std::size_t K = std::size_t{1} << bits;
    const Mask full = static_cast<Mask>(K - 1);
    SystemSpec spec;
    spec.m = m;
    spec.natural_partition = true;
    spec.base_f = mpoly_z(1, m);
    spec.base_g = mpoly_z(1);
    spec.base_h = mpoly_z(1);
    spec.names.reserve(K);
    spec.f.resize(K);
    for (std::size_t A = 0; A < K; ++A) spec.names.push_back("class" + std::to_string(A));
    for (int i = 0; i < m; ++i) {
        Mask cls = var_falsity_mask(i, m);
        MPoly& f = spec.f[cls];
        if (f.empty()) f = mpoly_z(1, 1);
        else f[0].coeff += 1;
    }
    // negation: class A references class ~A linearly
    for (std::size_t A = 0; A < K; ++A)
        spec.linear.push_back({static_cast<int>(A), static_cast<int>(full ^ A), mpoly_z(1)});
    // implication: premise class j, conclusion class k lands in k & ~j
    for (std::size_t j = 0; j < K; ++j)
        for (std::size_t k = 0; k < K; ++k) {
            Mask target = static_cast<Mask>(k) & ~static_cast<Mask>(j) & full;
            spec.quad.push_back({static_cast<int>(target), static_cast<int>(j),
                                 static_cast<int>(k), mpoly_z(0)});
        }
    return spec;
}

namespace {

void add_w_member(SystemSpec& spec) {
    spec.w_index = static_cast<int>(spec.names.size());
    spec.names.push_back("W");
    spec.f.push_back(mpoly_z(1, 1, 1));  // m z
    spec.linear.push_back({spec.w_index, spec.w_index, mpoly_z(1)});
    spec.quad.push_back({spec.w_index, spec.w_index, spec.w_index, mpoly_z(0)});
    spec.seed_minus1.push_back(Rational(1));  // W(s0) = sqrt(m) = 1/y
}

}  // namespace

SystemSpec simple_s1_spec(int m) {
    SystemSpec spec;
    spec.m = m;
    spec.base_f = mpoly_z(1, 1, 1);
    spec.base_g = mpoly_z(1);
    spec.base_h = mpoly_z(1);
    add_w_member(spec);
    int s1 = static_cast<int>(spec.names.size());
    spec.names.push_back("S1");
    // S1 = m z^3 + (m-1) z^2 S1 + z(1+z+z^2) W S1
    spec.f.push_back(mpoly_z(3, 1, 1));
    spec.linear.push_back({s1, s1, {MTerm{2, 1, 1}, MTerm{2, -1, 0}}});
    spec.quad.push_back({s1, spec.w_index, s1, {MTerm{0, 1, 0}, MTerm{1, 1, 0}, MTerm{2, 1, 0}}});
    spec.seed_minus1.push_back(Rational(0));
    return spec;
}

SystemSpec simple_sc_spec(int m) {
    SystemSpec spec;
    spec.m = m;
    spec.base_f = mpoly_z(1, 1, 1);
    spec.base_g = mpoly_z(1);
    spec.base_h = mpoly_z(1);
    add_w_member(spec);
    int sc = static_cast<int>(spec.names.size());
    spec.names.push_back("Sc");
    // Sc = m z^3 - z^2 Sc + z Sc W
    spec.f.push_back(mpoly_z(3, 1, 1));
    spec.linear.push_back({sc, sc, mpoly_z(2, -1)});
    spec.quad.push_back({sc, sc, spec.w_index, mpoly_z(0)});
    spec.seed_minus1.push_back(Rational(0));
    return spec;
}

SystemSpec category_system_spec(int m, CategoryKind kind) {
    SystemSpec spec;
    spec.m = m;
    spec.base_f = mpoly_z(1, 1, 1);
    spec.base_g = mpoly_z(1);
    spec.base_h = mpoly_z(1);
    add_w_member(spec);
    const int W = spec.w_index;
    auto member = [&spec](const std::string& name, Rational seed) {
        spec.names.push_back(name);
        spec.f.push_back({});
        spec.seed_minus1.push_back(std::move(seed));
        return static_cast<int>(spec.names.size()) - 1;
    };

    if (kind == CategoryKind::StrongS1) {
        int B = member("B", 0), T = member("T", 0), U = member("U", 1), A = member("A", 0);
        // B (= Sc) = m z^3 - z^2 B + z B W
        spec.f[B] = mpoly_z(3, 1, 1);
        spec.linear.push_back({B, B, mpoly_z(2, -1)});
        spec.quad.push_back({B, B, W, mpoly_z(0)});
        // T = B + z A + z T W
        spec.linear.push_back({T, B, mpoly_z(0)});
        spec.linear.push_back({T, A, mpoly_z(1)});
        spec.quad.push_back({T, T, W, mpoly_z(0)});
        // U = m z - B + z U + z (U W + A W - A T)
        spec.f[U] = mpoly_z(1, 1, 1);
        spec.linear.push_back({U, B, mpoly_z(0, -1)});
        spec.linear.push_back({U, U, mpoly_z(1)});
        spec.quad.push_back({U, U, W, mpoly_z(0)});
        spec.quad.push_back({U, A, W, mpoly_z(0)});
        spec.quad.push_back({U, A, T, mpoly_z(0, -1)});
        // A = z T + z A T
        spec.linear.push_back({A, T, mpoly_z(1)});
        spec.quad.push_back({A, A, T, mpoly_z(0)});
        return spec;
    }
    if (kind == CategoryKind::WeakS1) {
        int B = member("B", 0), T = member("T", 0), U = member("U", 1), A = member("A", 0);
        // B = m z^3 - z^2 B + z (B W - B A)
        spec.f[B] = mpoly_z(3, 1, 1);
        spec.linear.push_back({B, B, mpoly_z(2, -1)});
        spec.quad.push_back({B, B, W, mpoly_z(0)});
        spec.quad.push_back({B, B, A, mpoly_z(0, -1)});
        // T = B + z A + z (T W + A W - A T)
        spec.linear.push_back({T, B, mpoly_z(0)});
        spec.linear.push_back({T, A, mpoly_z(1)});
        spec.quad.push_back({T, T, W, mpoly_z(0)});
        spec.quad.push_back({T, A, W, mpoly_z(0)});
        spec.quad.push_back({T, A, T, mpoly_z(0, -1)});
        // U = m z - B + z U + z U W
        spec.f[U] = mpoly_z(1, 1, 1);
        spec.linear.push_back({U, B, mpoly_z(0, -1)});
        spec.linear.push_back({U, U, mpoly_z(1)});
        spec.quad.push_back({U, U, W, mpoly_z(0)});
        // A = z T + z A T
        spec.linear.push_back({A, T, mpoly_z(1)});
        spec.quad.push_back({A, A, T, mpoly_z(0)});
        return spec;
    }
    // combined S1 u S2, weak sense
    int B1 = member("B1", 0), B2 = member("B2", Rational(1, 4)), B3 = member("B3", Rational(1, 4)),
        B4 = member("B4", 0), B5 = member("B5", 0), B = member("B", 0), T = member("T", 0),
        U = member("U", 1), A = member("A", 0);
    auto basis_part = [&](int Bi, int f_deg, bool extra_z3_self) {
        // Bi = m(m-1) z^d + m z^d (W - A) - (z^2 [+ z^3]) Bi + z (W Bi - A Bi)
        // for d = 3; the d = 4 parts have self-coefficient z^3 [+ z^2]
        spec.f[Bi] = {MTerm{f_deg, 1, 2}, MTerm{f_deg, -1, 1}};
        spec.linear.push_back({Bi, W, mpoly_z(f_deg, 1, 1)});
        spec.linear.push_back({Bi, A, mpoly_z(f_deg, -1, 1)});
        MPoly self = f_deg == 3 ? mpoly_z(2, -1) : mpoly_z(3, -1);
        if (extra_z3_self) {
            if (f_deg == 3) self.push_back(MTerm{3, -1, 0});
            else self.push_back(MTerm{2, -1, 0});
        }
        spec.linear.push_back({Bi, Bi, std::move(self)});
        spec.quad.push_back({Bi, Bi, W, mpoly_z(0)});
        spec.quad.push_back({Bi, Bi, A, mpoly_z(0, -1)});
    };
    // B1 = m z^3 - z^2 B1 + z (W B1 - A B1)
    spec.f[B1] = mpoly_z(3, 1, 1);
    spec.linear.push_back({B1, B1, mpoly_z(2, -1)});
    spec.quad.push_back({B1, B1, W, mpoly_z(0)});
    spec.quad.push_back({B1, B1, A, mpoly_z(0, -1)});
    basis_part(B2, 3, false);
    basis_part(B3, 3, true);
    basis_part(B4, 4, false);
    basis_part(B5, 4, true);
    // B = B1 + B2 - B3 + B4 - B5
    spec.linear.push_back({B, B1, mpoly_z(0)});
    spec.linear.push_back({B, B2, mpoly_z(0)});
    spec.linear.push_back({B, B3, mpoly_z(0, -1)});
    spec.linear.push_back({B, B4, mpoly_z(0)});
    spec.linear.push_back({B, B5, mpoly_z(0, -1)});
    // T = B + z A + z (T W + A W - A T)
    spec.linear.push_back({T, B, mpoly_z(0)});
    spec.linear.push_back({T, A, mpoly_z(1)});
    spec.quad.push_back({T, T, W, mpoly_z(0)});
    spec.quad.push_back({T, A, W, mpoly_z(0)});
    spec.quad.push_back({T, A, T, mpoly_z(0, -1)});
    // U = m z - B + z U + z U W
    spec.f[U] = mpoly_z(1, 1, 1);
    spec.linear.push_back({U, B, mpoly_z(0, -1)});
    spec.linear.push_back({U, U, mpoly_z(1)});
    spec.quad.push_back({U, U, W, mpoly_z(0)});
    // A = z T + z A T
    spec.linear.push_back({A, T, mpoly_z(1)});
    spec.quad.push_back({A, A, T, mpoly_z(0)});
    return spec;
}

NaturalPartitionReport validate_natural_partition(const SystemSpec& spec) {
    NaturalPartitionReport report;
    const int N = spec.size();
    auto fail = [&report](const std::string& why) {
        report.ok = false;
        if (!report.detail.empty()) report.detail += "; ";
        report.detail += why;
    };

    // sum_i f_i = f
    {
        MPoly total;
        for (const MPoly& fi : spec.f)
            total.insert(total.end(), fi.begin(), fi.end());
        if (mpoly_collect(total, spec.m) != mpoly_collect(spec.base_f, spec.m))
            fail("sum of f_i differs from base f");
    }
    // sum_i g_ij = g for every j
    {
        std::vector<MPoly> col(N);
        for (const LinearEntry& e : spec.linear)
            col[e.j].insert(col[e.j].end(), e.poly.begin(), e.poly.end());
        auto g = mpoly_collect(spec.base_g, spec.m);
        for (int j = 0; j < N; ++j)
            if (mpoly_collect(col[j], spec.m) != g) {
                fail("column " + std::to_string(j) + " of g_ij does not sum to g");
                break;
            }
    }
    // sum_i (h_ijk + h_ikj) = 2 for every (j,k)
    {
        std::map<std::pair<int, int>, MPoly> pairs;
        for (const QuadEntry& e : spec.quad) {
            MPoly& p = pairs[{std::min(e.j, e.k), std::max(e.j, e.k)}];
            p.insert(p.end(), e.poly.begin(), e.poly.end());
        }
        const std::map<int, Rational> two{{0, Rational(2)}};
        const std::map<int, Rational> one{{0, Rational(1)}};
        for (int j = 0; j < N; ++j)
            for (int k = j; k < N; ++k) {
                auto it = pairs.find({j, k});
                auto got = it == pairs.end() ? std::map<int, Rational>{} : mpoly_collect(it->second, spec.m);
                // diagonal pairs appear once as (j,j): h_ijj + h_ijj = 2 h_ijj
                if (j == k ? got != one : got != two) {
                    fail("pair (" + std::to_string(j) + "," + std::to_string(k) +
                         ") violates the h identity");
                    j = N;
                    break;
                }
            }
    }
    return report;
}

// ---------------------------------------------------------------------------
// numeric base

Real poly_eval(std::span<const Real> coeffs, const Real& x) {
    Real acc(x.precision());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Real zeta_s(const BaseSpec& base, int s) {
    if (s >= static_cast<int>(base.z.size()))
        throw std::invalid_argument("zeta_s needs the base truncated to depth >= s");
    Real ztrunc(base.prec);
    for (int n = s; n >= 0; --n) ztrunc = ztrunc * base.r + base.z[n];
    return 1 - base.gamma - poly_eval(base.g, base.r) - 2 * poly_eval(base.h, base.r) * ztrunc;
}

Real impurity(const BaseSpec& base) {
    Real f_at_r(base.prec);
    for (auto it = base.f.rbegin(); it != base.f.rend(); ++it) f_at_r = f_at_r * base.r + *it;
    Real gr = poly_eval(base.g, base.r);
    Real disc = (1 - gr) * (1 - gr) - 4 * f_at_r * poly_eval(base.h, base.r);
    Real tol = Real::pow2(-static_cast<long>(base.prec) / 2, base.prec);
    if (disc.sign() < 0) {
        if (-disc > tol) throw std::domain_error("impurity: negative discriminant beyond tolerance");
        disc = Real(base.prec);
    }
    return sqrt(disc) - base.gamma;
}

BaseSpec gamma_convert(const BaseSpec& base, const Real& new_gamma) {
    Real one_minus(1 - base.gamma);
    if (one_minus.is_zero()) throw std::domain_error("gamma conversion undefined at gamma = 1");
    Real c = (1 - new_gamma) / one_minus;
    Real mix = (new_gamma - base.gamma) / one_minus;
    BaseSpec out = base;
    out.gamma = new_gamma;
    std::size_t len = std::max(base.f.size(), base.z.size());
    out.f.assign(len, Real(base.prec));
    for (std::size_t n = 0; n < len; ++n) {
        Real v(base.prec);
        if (n < base.f.size()) v += c * base.f[n];
        if (n < base.z.size()) v += mix * base.z[n];
        out.f[n] = v;
    }
    for (auto& gc : out.g) gc = c * gc;
    for (auto& hc : out.h) hc = c * hc;
    return out;
}

BaseSpec delta_convert(const BaseSpec& base, std::span<const Real> delta) {
    BaseSpec out = base;
    out.gamma = base.gamma + poly_eval(delta, base.r);
    // f += delta * Z, to the available depth
    std::size_t len = std::max(base.f.size(), base.z.size());
    out.f.assign(len, Real(base.prec));
    for (std::size_t n = 0; n < len; ++n)
        if (n < base.f.size()) out.f[n] = base.f[n];
    for (std::size_t d = 0; d < delta.size(); ++d)
        for (std::size_t n = 0; n + d < len; ++n)
            if (n < base.z.size()) out.f[n + d] += delta[d] * base.z[n];
    // g -= delta
    if (out.g.size() < delta.size()) out.g.resize(delta.size(), Real(base.prec));
    for (std::size_t d = 0; d < delta.size(); ++d) out.g[d] -= delta[d];
    return out;
}

// ---------------------------------------------------------------------------
// numeric systems

namespace {

std::vector<Real> real_poly(const MPoly& p, int m, mpfr_prec_t prec) {
    auto collected = mpoly_collect(p, m);
    int deg = collected.empty() ? 0 : collected.rbegin()->first;
    std::vector<Real> out(deg + 1, Real(prec));
    for (const auto& [d, c] : collected) out[d] = Real(c, prec);
    return out;
}

BaseSpec make_base(const SystemSpec& spec, std::span<const BigInt> w, mpfr_prec_t prec) {
    BaseSpec base;
    base.prec = prec;
    base.r = singularity_s0(spec.m, prec);
    base.gamma = Real(prec);
    base.f = real_poly(spec.base_f, spec.m, prec);
    base.g = real_poly(spec.base_g, spec.m, prec);
    base.h = real_poly(spec.base_h, spec.m, prec);
    base.z.reserve(w.size());
    for (const BigInt& v : w) base.z.emplace_back(v, prec);
    return base;
}

}  // namespace

QuadSystem build_falsity_system(const CoeffTable& table, int depth, mpfr_prec_t prec) {
    if (depth > table.n_max()) throw std::invalid_argument("depth exceeds table depth");
    QuadSystem sys;
    sys.spec = falsity_system_spec(table.m());
    sys.prec = prec;
    const std::size_t K = static_cast<std::size_t>(sys.spec.size());
    sys.member_series.resize(K);
    for (std::size_t cls = 0; cls < K; ++cls) {
        auto& series = sys.member_series[cls];
        series.resize(depth + 1);
        for (int n = 1; n <= depth; ++n) series[n] = table.count(static_cast<Mask>(cls), n);
    }
    std::vector<BigInt> w(depth + 1);
    for (int n = 1; n <= depth; ++n) w[n] = table.total(n);
    sys.base = make_base(sys.spec, w, prec);
    sys.gamma_i.assign(K, Real(prec));
    auto report = validate_natural_partition(sys.spec);
    if (!report.ok)
        throw std::logic_error("falsity system failed partition validation: " + report.detail);
    return sys;
}

QuadSystem build_category_system(int m, CategoryKind kind, int depth, mpfr_prec_t prec) {
    QuadSystem sys;
    sys.spec = category_system_spec(m, kind);
    sys.prec = prec;
    CategorySeries cs = category_coefficients(m, depth, kind);
    std::vector<BigInt> w = w_coefficients(m, depth);
    const int N = sys.spec.size();
    sys.member_series.assign(N, std::vector<BigInt>(depth + 1));
    auto fill = [&](const std::string& name, const std::vector<BigInt>& src) {
        for (int i = 0; i < N; ++i)
            if (sys.spec.names[i] == name) {
                for (int n = 1; n <= depth; ++n) sys.member_series[i][n] = src[n];
                return;
            }
        throw std::logic_error("missing member " + name);
    };
    fill("W", w);
    fill("B", cs.basis);
    fill("T", cs.taut);
    fill("U", cs.unknown);
    fill("A", cs.anti);
    if (kind == CategoryKind::CombinedS1S2)
        for (int p = 0; p < 5; ++p) fill("B" + std::to_string(p + 1), cs.basis_parts[p]);
    sys.base = make_base(sys.spec, w, prec);
    sys.gamma_i.assign(N, Real(prec));
    return sys;
}

CutContext make_cut_context(const QuadSystem& sys, int s) {
    if (s > sys.depth())
        throw std::invalid_argument("cut depth exceeds member truncations");
    CutContext ctx;
    ctx.s = s;
    ctx.zeta = zeta_s(sys.base, s);
    const Real& r = sys.base.r;
    const int N = sys.size();
    ctx.member_trunc_at_r.reserve(N);
    for (int j = 0; j < N; ++j) {
        Real acc(sys.prec);
        const auto& series = sys.member_series[j];
        for (int n = s; n >= 0; --n) acc = acc * r + Real(series[n], sys.prec);
        ctx.member_trunc_at_r.push_back(acc);
    }
    ctx.sigma_standard = (1 - sys.base.gamma + ctx.zeta) / N;
    for (const LinearEntry& e : sys.spec.linear)
        ctx.lin.push_back({e.i, e.j, mpoly_eval(e.poly, sys.spec.m, r)});
    const Real h_at_r = poly_eval(sys.base.h, r);
    for (const QuadEntry& e : sys.spec.quad) {
        Real hh = h_at_r * mpoly_eval(e.poly, sys.spec.m, r);
        ctx.quad.push_back({e.i, e.j, e.k, hh * ctx.member_trunc_at_r[e.j],
                            hh * ctx.member_trunc_at_r[e.k],
                            ctx.zeta * mpoly_eval(e.poly, sys.spec.m, r)});
    }
    return ctx;
}

std::vector<Real> apply_cut_operator(const QuadSystem& sys, const CutContext& ctx,
                                     std::span<const Real> x) {
    const int N = sys.size();
    if (static_cast<int>(x.size()) != N) throw std::invalid_argument("dimension mismatch");
    std::vector<Real> c(sys.gamma_i.begin(), sys.gamma_i.end());
    for (const auto& e : ctx.lin) {
        c[e.i] += e.value * x[e.j];
    }
    for (const auto& e : ctx.quad) {
        // h(r)h_ijk(r) (A_j x_k + A_k x_j) + zeta h_ijk(r) x_j x_k
        c[e.i] += e.hj * x[e.k] + e.hk * x[e.j] + e.zeta_coef * x[e.j] * x[e.k];
    }
    return c;
}

Real jacobian_one_norm(const QuadSystem& sys, const CutContext& ctx, std::span<const Real> x) {
    Real sum(sys.prec);
    for (const Real& xi : x) sum += xi;
    return 1 - ctx.zeta - sys.base.gamma + 2 * ctx.zeta * sum;
}

ContractionReport contraction_report(const QuadSystem& sys, const CutContext& ctx,
                                     std::span<const Real> x) {
    const int N = sys.size();
    if (static_cast<int>(x.size()) != N) throw std::invalid_argument("dimension mismatch");
    std::vector<std::vector<Real>> J(N, std::vector<Real>(N, Real(sys.prec)));
    for (const auto& e : ctx.lin) J[e.i][e.j] += e.value;
    for (const auto& e : ctx.quad) {
        J[e.i][e.k] += e.hj + e.zeta_coef * x[e.j];
        J[e.i][e.j] += e.hk + e.zeta_coef * x[e.k];
    }
    ContractionReport rep;
    rep.max_entry = Real(sys.prec);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) rep.max_entry = max(rep.max_entry, J[i][j]);
    const Real one_gz = 1 - sys.base.gamma + ctx.zeta;
    const Real denom = 1 - 2 * sys.base.gamma + 2 * ctx.zeta;
    rep.entry_bound = one_gz / N;
    if (denom.sign() > 0)
        rep.entry_bound += max(one_gz / (N * denom), Real(1L, sys.prec) / (2 * (N - 1)));
    rep.certified = denom.sign() > 0 && rep.max_entry < rep.entry_bound;
    rep.shifted_one_norm = Real(sys.prec);
    for (int j = 0; j < N; ++j) {
        Real col(sys.prec);
        for (int i = 0; i < N; ++i) col += abs(J[i][j] - ctx.sigma_standard);
        rep.shifted_one_norm = max(rep.shifted_one_norm, col);
    }
    rep.norm_contracts = rep.shifted_one_norm < Real(1L, sys.prec);
    return rep;
}

IterationResult shifted_iterate(const QuadSystem& sys, const CutConfig& cfg) {
    const int N = sys.size();
    CutContext ctx = make_cut_context(sys, cfg.s);
    Real sigma(sys.prec);
    switch (cfg.shift) {
        case ShiftMode::None: break;
        case ShiftMode::Standard: sigma = ctx.sigma_standard; break;
        case ShiftMode::Custom: sigma = cfg.sigma_custom; break;
    }

    std::vector<Real> x;
    if (!cfg.start.empty()) {
        if (static_cast<int>(cfg.start.size()) != N)
            throw std::invalid_argument("start vector dimension mismatch");
        x.assign(cfg.start.begin(), cfg.start.end());
    } else {
        x.assign(N, Real(sys.prec));
        int hot = sys.spec.natural_partition
                      ? static_cast<int>(var_falsity_mask(0, sys.spec.m))
                      : 0;
        x[hot] = Real(1L, sys.prec);
    }

    IterationResult res;
    res.zeta = ctx.zeta;
    res.sigma = sigma;
    Real tol = cfg.tolerance;
    long it = 0;
    Real step(sys.prec);
    for (; it < cfg.max_iterations; ++it) {
        std::vector<Real> next = apply_cut_operator(sys, ctx, x);
        if (cfg.shift != ShiftMode::None) {
            Real sum(sys.prec);
            for (const Real& xi : x) sum += xi;
            Real shift = sigma * (sum - 1);
            for (Real& ni : next) ni -= shift;
        }
        step = Real(sys.prec);
        for (int i = 0; i < N; ++i) step = max(step, abs(next[i] - x[i]));
        x = std::move(next);
        if (step < tol) {
            ++it;
            res.converged = true;
            break;
        }
    }
    res.iterations = it;
    res.last_step = step;
    res.solution = x;
    std::vector<Real> fx = apply_cut_operator(sys, ctx, x);
    Real resid(sys.prec);
    Real sum(sys.prec);
    for (int i = 0; i < N; ++i) {
        resid = max(resid, abs(fx[i] - x[i]));
        sum += x[i];
    }
    res.fixed_point_residual = resid;
    res.coordinate_sum = sum;
    if (!res.converged && cfg.throw_on_divergence)
        throw NonConvergence("s-cut iteration did not reach tolerance; last step " +
                             res.last_step.decimal(6));
    return res;
}

std::vector<Real> ratio_linear_solve(const QuadSystem& sys, std::span<const Real> values_at_r,
                                     const Normalization& norm) {
    const int N = sys.size();
    if (static_cast<int>(values_at_r.size()) != N)
        throw std::invalid_argument("values_at_r dimension mismatch");
    const Real& r = sys.base.r;
    const Real h_at_r = poly_eval(sys.base.h, r);

    // M beta = rhs with M = I - L
    std::vector<std::vector<Real>> M(N, std::vector<Real>(N, Real(sys.prec)));
    std::vector<Real> rhs(sys.gamma_i.begin(), sys.gamma_i.end());
    for (int i = 0; i < N; ++i) M[i][i] = Real(1L, sys.prec);
    for (const LinearEntry& e : sys.spec.linear)
        M[e.i][e.j] -= mpoly_eval(e.poly, sys.spec.m, r);
    for (const QuadEntry& e : sys.spec.quad) {
        Real hh = h_at_r * mpoly_eval(e.poly, sys.spec.m, r);
        M[e.i][e.k] -= hh * values_at_r[e.j];
        M[e.i][e.j] -= hh * values_at_r[e.k];
    }

    switch (norm.kind) {
        case Normalization::None:
            break;
        case Normalization::SumToOne: {
            // the row sums of M vanish for a natural partition, so one
            // equation is redundant; replace the first by the normalization
            for (int j = 0; j < N; ++j) M[0][j] = Real(1L, sys.prec);
            rhs[0] = Real(1L, sys.prec);
            break;
        }
        case Normalization::Pin: {
            for (int j = 0; j < N; ++j) M[norm.pin_index][j] = Real(sys.prec);
            M[norm.pin_index][norm.pin_index] = Real(1L, sys.prec);
            rhs[norm.pin_index] = norm.pin_value;
            break;
        }
    }

    // gaussian elimination with partial pivoting
    std::vector<int> perm(N);
    for (int i = 0; i < N; ++i) perm[i] = i;
    for (int col = 0; col < N; ++col) {
        int best = col;
        Real best_mag = abs(M[col][col]);
        for (int row = col + 1; row < N; ++row) {
            Real mag = abs(M[row][col]);
            if (mag > best_mag) {
                best = row;
                best_mag = mag;
            }
        }
        if (best_mag.is_zero()) throw std::domain_error("singular linear system in ratio solve");
        std::swap(M[col], M[best]);
        std::swap(rhs[col], rhs[best]);
        for (int row = col + 1; row < N; ++row) {
            if (M[row][col].is_zero()) continue;
            Real f = M[row][col] / M[col][col];
            for (int j = col; j < N; ++j) M[row][j] -= f * M[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<Real> beta(N, Real(sys.prec));
    for (int row = N - 1; row >= 0; --row) {
        Real acc = rhs[row];
        for (int j = row + 1; j < N; ++j) acc -= M[row][j] * beta[j];
        beta[row] = acc / M[row][row];
    }
    return beta;
}

std::string scut_report_json(const QuadSystem& sys, const IterationResult& res,
                             const std::string& system_name, int s) {
    const std::size_t digits = static_cast<std::size_t>(sys.prec / 4);
    std::ostringstream out;
    out << "{\"system\":\"" << system_name << "\",\"s\":" << s
        << ",\"sigma\":\"" << res.sigma.decimal(digits) << "\""
        << ",\"zeta_s\":\"" << res.zeta.decimal(digits) << "\""
        << ",\"iterations\":" << res.iterations
        << ",\"converged\":" << (res.converged ? "true" : "false")
        << ",\"residual\":\"" << res.fixed_point_residual.decimal(8) << "\""
        << ",\"solution\":{";
    for (int i = 0; i < sys.size(); ++i) {
        if (i) out << ",";
        out << "\"" << sys.spec.names[i] << "\":\"" << res.solution[i].decimal(digits) << "\"";
    }
    out << "}}";
    return out.str();
}

}  // namespace tauto
