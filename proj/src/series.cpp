#include "tauto/series.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace tauto {

std::vector<BigInt> w_coefficients(int m, int n_max) {
    if (m < 1) throw std::invalid_argument("variable count must be >= 1");
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    std::vector<BigInt> w(n_max + 1);
    w[1] = m;
    for (int n = 2; n <= n_max; ++n) {
        BigInt acc = w[n - 1];
        for (int i = 1; i + 1 < n; ++i)
            mpz_addmul(acc.get_mpz_t(), w[i].get_mpz_t(), w[n - 1 - i].get_mpz_t());
        w[n] = acc;
    }
    return w;
}

Real w_asymptotic_estimate(int m, long n, mpfr_prec_t prec) {
    Real sm = sqrt_int(m, prec);
    Real base = 2 * sm + 1;
    Real amp = sqrt((2 * Real(static_cast<long>(m), prec) + sm) /
                    (4 * Real::pi(prec) * Real(n, prec) * Real(n, prec) * Real(n, prec)));
    return amp * pow_ui(base, static_cast<unsigned long>(n));
}

Real truncated_eval(std::span<const BigInt> coeffs, const Real& r, int s) {
    if (s >= static_cast<int>(coeffs.size()))
        throw std::invalid_argument("truncation order exceeds available coefficients");
    Real acc(r.precision());
    for (int n = s; n >= 0; --n) acc = acc * r + Real(coeffs[n], r.precision());
    return acc;
}

// ---------------------------------------------------------------------------
// class table

namespace {

// In-place subset zeta transform over the 2^m assignment bits of the class
// index: out[S] = sum_{C subset of S} in[C].
void subset_zeta(std::vector<BigInt>& v, int bits) {
    const std::size_t K = v.size();
    for (int b = 0; b < bits; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        for (std::size_t S = 0; S < K; ++S)
            if (S & bit) v[S] += v[S ^ bit];
    }
}

// out[S] = sum_{D superset of S} in[D].
void superset_zeta(std::vector<BigInt>& v, int bits) {
    const std::size_t K = v.size();
    for (int b = 0; b < bits; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        for (std::size_t S = 0; S < K; ++S)
            if (!(S & bit)) v[S] += v[S | bit];
    }
}

// Inverse of superset_zeta: out[A] = sum_{S superset of A} (-1)^|S\A| in[S].
void superset_moebius(std::vector<BigInt>& v, int bits) {
    const std::size_t K = v.size();
    for (int b = 0; b < bits; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        for (std::size_t S = 0; S < K; ++S)
            if (!(S & bit)) v[S] -= v[S | bit];
    }
}

void accumulate_products(std::vector<BigInt>& acc,
                         const std::vector<std::vector<BigInt>>& premise_avoid,
                         const std::vector<std::vector<BigInt>>& conclusion_super,
                         int n, std::size_t begin, std::size_t end) {
    for (int i = 1; i + 1 < n; ++i) {
        const auto& p = premise_avoid[i];
        const auto& q = conclusion_super[n - 1 - i];
        for (std::size_t S = begin; S < end; ++S)
            mpz_addmul(acc[S].get_mpz_t(), p[S].get_mpz_t(), q[S].get_mpz_t());
    }
}

}  // namespace

CoeffTable CoeffTable::build(int m, const CoeffTableOptions& opts) {
    if (m < 1) throw std::invalid_argument("variable count must be >= 1");
    if (m > 3)
        throw ResourceRefusal("per-class coefficient table refused for m >= 4 "
                              "(the class-pair convolution is 2^32 pairs per step)");
    const int bits = 1 << m;
    const std::size_t K = std::size_t{1} << bits;
    const Mask full = static_cast<Mask>(K - 1);
    const int n_max = opts.n_max;
    const int dense_upto = opts.dense_upto < 0 ? n_max : opts.dense_upto;

    auto keep_row = [&](int n) {
        if (n <= dense_upto) return true;
        for (int c : opts.checkpoints)
            if (c == n) return true;
        return false;
    };

    CoeffTable table;
    table.m_ = m;
    table.n_max_ = n_max;
    table.rows_.resize(n_max + 1);
    table.w_ = w_coefficients(m, n_max);

    // premise_avoid[i][S] = sum over classes C avoiding S of counts (stored
    // as the subset zeta of the row, read at the complement index);
    // conclusion_super[j][S] = sum over classes D containing S.
    std::vector<std::vector<BigInt>> premise_avoid(n_max + 1), conclusion_super(n_max + 1);

    std::vector<BigInt> row(K);
    for (int i = 0; i < m; ++i) row[var_falsity_mask(i, m)] += 1;

    const int threads = std::max(1, opts.threads);
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) {
            std::vector<BigInt> acc(K);
            if (threads > 1 && n > 64) {
                std::vector<std::thread> pool;
                std::size_t chunk = (K + threads - 1) / threads;
                for (int t = 0; t < threads; ++t) {
                    std::size_t b = t * chunk, e = std::min(K, b + chunk);
                    if (b >= e) break;
                    pool.emplace_back(accumulate_products, std::ref(acc),
                                      std::cref(premise_avoid), std::cref(conclusion_super),
                                      n, b, e);
                }
                for (auto& th : pool) th.join();
            } else {
                accumulate_products(acc, premise_avoid, conclusion_super, n, 0, K);
            }
            superset_moebius(acc, bits);
            // negation: every class A gains the previous row's complement class
            const auto& prev = row;
            std::vector<BigInt> next(K);
            for (std::size_t A = 0; A < K; ++A) next[A] = std::move(acc[A]) + prev[full ^ A];
            row = std::move(next);
        }

        // transforms of the finished row, kept for the deeper convolutions
        {
            std::vector<BigInt> ss = row;
            subset_zeta(ss, bits);
            std::vector<BigInt> pa(K);
            for (std::size_t S = 0; S < K; ++S) pa[S] = ss[full ^ S];
            premise_avoid[n] = std::move(pa);
            std::vector<BigInt> qs = row;
            superset_zeta(qs, bits);
            conclusion_super[n] = std::move(qs);
        }

        if (keep_row(n)) table.rows_[n] = row;

        // mass conservation, checked on the fly: transforms at S=0 both give
        // the row total
        if (premise_avoid[n][0] != table.w_[n])
            throw std::logic_error("class table row total diverged from w_n at n=" + std::to_string(n));
    }
    return table;
}

const std::vector<BigInt>& CoeffTable::row(int n) const {
    if (n < 1 || n > n_max_) throw std::out_of_range("row index out of range");
    if (rows_[n].empty()) throw std::out_of_range("row " + std::to_string(n) + " not materialized");
    return rows_[n];
}

const BigInt& CoeffTable::total(int n) const {
    if (n < 1 || n > n_max_) throw std::out_of_range("row index out of range");
    return w_[n];
}

Real CoeffTable::ratio_at(Mask cls, int n, mpfr_prec_t prec) const {
    const BigInt& num = count(cls, n);
    const BigInt& den = total(n);
    if (den == 0) throw std::domain_error("no formulas of the requested length");
    return Real(num, prec) / Real(den, prec);
}

Real CoeffTable::truncated_class_eval(Mask cls, const Real& r, int s) const {
    if (s > n_max_) throw std::invalid_argument("truncation exceeds table depth");
    Real acc(r.precision());
    for (int n = s; n >= 1; --n) acc = acc * r + Real(count(cls, n), r.precision());
    return acc * r;
}

// ---------------------------------------------------------------------------
// binary cache

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("truncated cache file");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void CoeffTable::save(const std::string& path) const {
    for (int n = 1; n <= n_max_; ++n)
        if (rows_[n].empty())
            throw std::logic_error("cannot cache a table with discarded rows");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open cache file for writing: " + path);
    out.write("TAUT1", 5);
    put_u32(out, static_cast<std::uint32_t>(m_));
    put_u32(out, static_cast<std::uint32_t>(n_max_));
    std::vector<unsigned char> buf;
    for (int n = 1; n <= n_max_; ++n) {
        for (const BigInt& v : rows_[n]) {
            std::size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
            if (v == 0) bytes = 0;
            buf.resize(bytes);
            std::size_t written = 0;
            if (bytes) mpz_export(buf.data(), &written, -1, 1, -1, 0, v.get_mpz_t());
            put_u32(out, static_cast<std::uint32_t>(written));
            if (written) out.write(reinterpret_cast<const char*>(buf.data()), written);
        }
    }
    if (!out) throw std::runtime_error("failed writing cache file: " + path);
}

CoeffTable CoeffTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open cache file: " + path);
    char magic[5];
    in.read(magic, 5);
    if (!in || std::memcmp(magic, "TAUT1", 5) != 0)
        throw std::runtime_error("bad cache magic in " + path);
    CoeffTable table;
    table.m_ = static_cast<int>(get_u32(in));
    table.n_max_ = static_cast<int>(get_u32(in));
    if (table.m_ < 1 || table.m_ > 3 || table.n_max_ < 1 || table.n_max_ > 1000000)
        throw std::runtime_error("implausible cache header in " + path);
    const std::size_t K = std::size_t{1} << (1 << table.m_);
    table.rows_.resize(table.n_max_ + 1);
    std::vector<unsigned char> buf;
    for (int n = 1; n <= table.n_max_; ++n) {
        std::vector<BigInt> row(K);
        for (std::size_t c = 0; c < K; ++c) {
            std::uint32_t len = get_u32(in);
            if (len) {
                buf.resize(len);
                in.read(reinterpret_cast<char*>(buf.data()), len);
                if (!in) throw std::runtime_error("truncated cache file");
                mpz_import(row[c].get_mpz_t(), len, -1, 1, -1, 0, buf.data());
            }
        }
        table.rows_[n] = std::move(row);
    }
    table.w_.assign(table.n_max_ + 1, 0);
    for (int n = 1; n <= table.n_max_; ++n)
        for (const auto& v : table.rows_[n]) table.w_[n] += v;
    return table;
}

// ---------------------------------------------------------------------------
// category counts

namespace {

// sum_{i+j=n-1, i,j>=1} a_i b_j
BigInt conv_at(const std::vector<BigInt>& a, const std::vector<BigInt>& b, int n) {
    BigInt acc = 0;
    for (int i = 1; i + 1 < n; ++i)
        mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[n - 1 - i].get_mpz_t());
    return acc;
}

const BigInt& at_or_zero(const std::vector<BigInt>& a, int idx) {
    static const BigInt zero = 0;
    return idx >= 1 && idx < static_cast<int>(a.size()) ? a[idx] : zero;
}

}  // namespace

CategorySeries category_coefficients(int m, int n_max, CategoryKind kind) {
    if (m < 1) throw std::invalid_argument("variable count must be >= 1");
    CategorySeries out;
    out.kind = kind;
    out.m = m;
    out.n_max = n_max;
    std::vector<BigInt> w = w_coefficients(m, n_max);
    auto& T = out.taut;
    auto& U = out.unknown;
    auto& A = out.anti;
    auto& B = out.basis;
    T.assign(n_max + 1, 0);
    U.assign(n_max + 1, 0);
    A.assign(n_max + 1, 0);
    B.assign(n_max + 1, 0);

    if (kind == CategoryKind::CombinedS1S2) out.basis_parts.assign(5, std::vector<BigInt>(n_max + 1, 0));

    for (int n = 1; n <= n_max; ++n) {
        // antilogies first: depend on strictly shorter prefixes only
        A[n] = at_or_zero(T, n - 1) + conv_at(A, T, n);

        switch (kind) {
            case CategoryKind::StrongS1:
                // basis = strict simple tautologies: B = mz^3 - z^2 B + z B W
                B[n] = (n == 3 ? BigInt(m) : BigInt(0)) - at_or_zero(B, n - 2) + conv_at(B, w, n);
                T[n] = B[n] + at_or_zero(A, n - 1) + conv_at(T, w, n);
                U[n] = (n == 1 ? BigInt(m) : BigInt(0)) - B[n] + at_or_zero(U, n - 1) +
                       conv_at(U, w, n) + conv_at(A, w, n) - conv_at(A, T, n);
                break;
            case CategoryKind::WeakS1:
                B[n] = (n == 3 ? BigInt(m) : BigInt(0)) - at_or_zero(B, n - 2) +
                       conv_at(B, w, n) - conv_at(B, A, n);
                T[n] = B[n] + at_or_zero(A, n - 1) + conv_at(T, w, n) + conv_at(A, w, n) -
                       conv_at(A, T, n);
                U[n] = (n == 1 ? BigInt(m) : BigInt(0)) - B[n] + at_or_zero(U, n - 1) +
                       conv_at(U, w, n);
                break;
            case CategoryKind::CombinedS1S2: {
                auto& b1 = out.basis_parts[0];
                auto& b2 = out.basis_parts[1];
                auto& b3 = out.basis_parts[2];
                auto& b4 = out.basis_parts[3];
                auto& b5 = out.basis_parts[4];
                const BigInt mm1 = BigInt(m) * (m - 1);
                BigInt wa3 = BigInt(m) * (at_or_zero(w, n - 3) - at_or_zero(A, n - 3));
                BigInt wa4 = BigInt(m) * (at_or_zero(w, n - 4) - at_or_zero(A, n - 4));
                b1[n] = (n == 3 ? BigInt(m) : BigInt(0)) - at_or_zero(b1, n - 2) +
                        conv_at(b1, w, n) - conv_at(b1, A, n);
                b2[n] = (n == 3 ? mm1 : BigInt(0)) + wa3 - at_or_zero(b2, n - 2) +
                        conv_at(b2, w, n) - conv_at(b2, A, n);
                b3[n] = (n == 3 ? mm1 : BigInt(0)) + wa3 - at_or_zero(b3, n - 2) -
                        at_or_zero(b3, n - 3) + conv_at(b3, w, n) - conv_at(b3, A, n);
                b4[n] = (n == 4 ? mm1 : BigInt(0)) + wa4 - at_or_zero(b4, n - 3) +
                        conv_at(b4, w, n) - conv_at(b4, A, n);
                b5[n] = (n == 4 ? mm1 : BigInt(0)) + wa4 - at_or_zero(b5, n - 2) -
                        at_or_zero(b5, n - 3) + conv_at(b5, w, n) - conv_at(b5, A, n);
                B[n] = b1[n] + b2[n] - b3[n] + b4[n] - b5[n];
                T[n] = B[n] + at_or_zero(A, n - 1) + conv_at(T, w, n) + conv_at(A, w, n) -
                       conv_at(A, T, n);
                U[n] = (n == 1 ? BigInt(m) : BigInt(0)) - B[n] + at_or_zero(U, n - 1) +
                       conv_at(U, w, n);
                break;
            }
        }
        if (T[n] + U[n] + A[n] != w[n])
            throw std::logic_error("category counts do not partition w_n at n=" + std::to_string(n));
    }
    return out;
}

// ---------------------------------------------------------------------------
// octic residual (m = 1)

namespace {

using ZSeries = std::vector<BigInt>;  // index = power of z, truncated

ZSeries zmul(const ZSeries& a, const ZSeries& b, int s) {
    ZSeries r(s + 1);
    for (int i = 0; i <= s; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= s; ++j)
            if (b[j] != 0) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return r;
}

ZSeries zadd(const ZSeries& a, const ZSeries& b) {
    ZSeries r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

ZSeries zscale(const ZSeries& a, long c) {
    ZSeries r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

// polynomial given as coefficient list (constant first)
ZSeries zpoly(std::initializer_list<long> coeffs, int s) {
    ZSeries r(s + 1);
    int i = 0;
    for (long c : coeffs) {
        if (i > s) break;
        r[i++] = c;
    }
    return r;
}

}  // namespace

int octic_residual_first_nonzero(std::span<const BigInt> taut, std::span<const BigInt> w, int s) {
    if (static_cast<int>(taut.size()) <= s || static_cast<int>(w.size()) <= s)
        throw std::invalid_argument("series too shallow for requested order");
    ZSeries I(s + 1), W(s + 1);
    for (int n = 0; n <= s; ++n) {
        I[n] = taut[n];
        W[n] = w[n];
    }
    // (1-z) W appears in every W-linear coefficient
    ZSeries zW = zmul(zpoly({1, -1}, s), W, s);

    auto coef = [&](std::initializer_list<long> zs, std::initializer_list<long> wfac) {
        // zs + wfac * (1-z) W, both polynomials in z
        return zadd(zpoly(zs, s), zmul(zpoly(wfac, s), zW, s));
    };

    // degree-8 relation for the one-variable tautology series
    std::vector<ZSeries> c;
    c.resize(9, ZSeries(s + 1));
    c[8] = zpoly({0, 0, 0, 0, 0, 0, 0, 1}, s);                        // z^7
    c[7] = zpoly({0, 0, 0, 0, 0, 0, -8}, s);                          // -8 z^6
    c[6] = zmul(zpoly({0, 0, 0, 0, 0, 1}, s), coef({27, 2, -2}, {0, 1}), s);
    c[5] = zscale(zmul(zpoly({0, 0, 0, 0, 1}, s), coef({50, 12, -12}, {0, 6}), s), -1);
    c[4] = zmul(zpoly({0, 0, 0, 1}, s), coef({55, 28, -28, -4, 1}, {0, 15, 2}), s);
    c[3] = zscale(zmul(zpoly({0, 0, 1}, s), coef({36, 32, -32, -16, 4}, {0, 20, 8}), s), -1);
    c[2] = zmul(zpoly({0, 1}, s), coef({13, 18, -19, -22, 4}, {0, 15, 12, 1}), s);
    c[1] = zscale(coef({2, 4, -6, -12}, {0, 6, 8, 2}), -1);
    c[0] = zadd(zpoly({0, -1, -2}, s), zmul(zpoly({1, 2, 1}, s), zW, s));

    ZSeries acc = c[0];
    ZSeries Ipow = zpoly({1}, s);
    for (int k = 1; k <= 8; ++k) {
        Ipow = zmul(Ipow, I, s);
        acc = zadd(acc, zmul(c[k], Ipow, s));
    }
    for (int n = 0; n <= s; ++n)
        if (acc[n] != 0) return n;
    return s + 1;
}

}  // namespace tauto
