#include "tauto/density.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace tauto {

namespace {

int popcount(Mask v) { return std::popcount(v); }

}  // namespace

int count_m_b(Mask B, int m) {
    const Mask full = full_mask(m);
    int count = 0;
    for (int i = 0; i < m; ++i)
        if ((var_falsity_mask(i, m) | B) == full) ++count;
    return count;
}

std::vector<LinCombTerm> lincomb_coeffs(Mask A, Mask B, int m) {
    if (A & B) throw std::invalid_argument("lincomb_coeffs requires disjoint A and B");
    const Mask full = full_mask(m);
    const Mask comp = full ^ A;
    const int sign_a = popcount(A) % 2 == 0 ? 1 : -1;
    std::vector<LinCombTerm> terms;
    // enumerate B' with B <= B' <= ~A: B' = B | t, t a submask of ~A & ~B
    const Mask rest = comp & ~B;
    Mask t = rest;
    while (true) {
        Mask bp = B | t;
        int sign = popcount(bp) % 2 == 0 ? sign_a : -sign_a;
        terms.push_back({bp, sign});
        if (t == 0) break;
        t = (t - 1) & rest;
    }
    return terms;
}

AlphaBetaTable AlphaBetaTable::solve(int m, const Options& opts) {
    if (m < 1) throw std::invalid_argument("variable count must be >= 1");
    if (m > 4)
        throw ResourceRefusal("exact densities refused for m >= 5 "
                              "(2^(2^m) subsets is out of range)");
    const mpfr_prec_t prec = opts.precision;
    const int bits = 1 << m;
    const std::size_t K = std::size_t{1} << bits;
    const Mask full = static_cast<Mask>(K - 1);

    AlphaBetaTable table;
    table.m_ = m;
    table.prec_ = prec;
    table.full_ = full;
    table.s0_ = singularity_s0(m, prec);
    table.records_.resize(K);

    const Interval sqm = sqrt_int_iv(m, prec);
    const Interval two_sqm_plus_1 = sqm + sqm + Interval(1L, prec);
    const Real d_neg_tol(opts.d_negative_tolerance, prec);
    const Real degen_tol(opts.degenerate_tolerance, prec);

    std::vector<Mask> order(K);
    for (std::size_t i = 0; i < K; ++i) order[i] = static_cast<Mask>(i);
    std::sort(order.begin(), order.end(), [](Mask a, Mask b) {
        int pa = popcount(a), pb = popcount(b);
        return pa != pb ? pa > pb : a < b;
    });

    std::vector<int> mb_cache(K);
    for (std::size_t B = 0; B < K; ++B) mb_cache[B] = count_m_b(static_cast<Mask>(B), m);

    for (Mask B : order) {
        AlphaBetaRecord rec;
        rec.m_b = mb_cache[B];
        rec.sigma = popcount(B) % 2 == 0 ? 1 : -1;
        rec.alpha_up = Interval(0L, prec);
        rec.beta_up = Interval(0L, prec);

        if (B == full) {
            rec.alpha = sqm;
            rec.beta = sqrt(Interval(2 * static_cast<long>(m), prec) + sqm);
            rec.d = Interval(0L, prec);
            table.records_[B] = std::move(rec);
            continue;
        }

        const Mask rest = full ^ B;
        Mask t = rest;
        while (t) {
            Mask bp = B | t;
            const AlphaBetaRecord& up = table.records_[bp];
            if (popcount(bp) % 2 == 0) {
                rec.alpha_up += up.alpha;
                rec.beta_up += up.beta;
            } else {
                rec.alpha_up -= up.alpha;
                rec.beta_up -= up.beta;
            }
            t = (t - 1) & rest;
        }

        const Interval sigma(static_cast<long>(rec.sigma), prec);
        const Interval c = two_sqm_plus_1 - sigma - rec.alpha_up;
        Interval d = c * c - Interval(4L, prec) * sigma *
                                 (Interval(static_cast<long>(rec.m_b), prec) + rec.alpha_up);
        if (d.upper() < -d_neg_tol)
            throw std::runtime_error("negative discriminant beyond tolerance at B=" +
                                     std::to_string(B));
        if (d.lower().sign() < 0) {
            d.clamp_lower_to_zero();
            ++table.clamp_warnings_;
        }
        rec.d = d;

        // d near zero away from the top block: the closed form for beta
        // degenerates; it only happens when beta_up vanishes as well
        Real d_hi = d.upper();
        if (d_hi < degen_tol) {
            Real bu_mag = max(abs(rec.beta_up.lower()), abs(rec.beta_up.upper()));
            if (bu_mag < degen_tol) {
                rec.alpha = (c - sqrt(d)) / (sigma + sigma);
                rec.beta = Interval(0L, prec);
                table.flags_.push_back("degenerate pairing at B=" + std::to_string(B) +
                                      ": d ~ 0 with vanishing beta_up; beta forced to 0");
                table.records_[B] = std::move(rec);
                continue;
            }
            throw std::runtime_error("discriminant ~ 0 with nonvanishing beta_up at B=" +
                                     std::to_string(B));
        }

        const Interval sd = sqrt(d);
        rec.alpha = (c - sd) / (sigma + sigma);
        rec.beta = rec.beta_up * ((two_sqm_plus_1 + sigma - rec.alpha_up) / sd - Interval(1L, prec)) /
                   (sigma + sigma);

        // generating-function values at s0 are bounded by W(s0) = sqrt(m)
        if (rec.alpha.upper() < -degen_tol || rec.alpha.lower() > sqm.upper() + degen_tol)
            throw std::runtime_error("alpha out of [0, sqrt(m)] at B=" + std::to_string(B));
        table.records_[B] = std::move(rec);
    }
    return table;
}

Real AlphaBetaTable::density_of_class(Mask A) const {
    const Mask comp = full_ ^ A;
    Interval sum(0L, prec_);
    Mask t = comp;
    while (true) {
        const AlphaBetaRecord& rec = records_[t];
        if (popcount(t) % 2 == 0) sum += rec.beta;
        else sum -= rec.beta;
        if (t == 0) break;
        t = (t - 1) & comp;
    }
    if (popcount(A) % 2 != 0) sum = -sum;
    Interval density = sum / records_[full_].beta;
    return density.midpoint();
}

Real AlphaBetaTable::class_value_at_s0(Mask A) const {
    Interval sum(0L, prec_);
    for (const LinCombTerm& term : lincomb_coeffs(A, 0, m_)) {
        if (term.sign > 0) sum += records_[term.b_prime].alpha;
        else sum -= records_[term.b_prime].alpha;
    }
    return sum.midpoint();
}

Real AlphaBetaTable::max_enclosure_width() const {
    Real w(prec_);
    for (const auto& rec : records_) {
        w = max(w, rec.alpha.width());
        w = max(w, rec.beta.width());
    }
    return w;
}

std::string density_report_json(const AlphaBetaTable& table, bool all_classes) {
    const std::size_t digits = static_cast<std::size_t>(table.precision() / 4);
    std::ostringstream out;
    out << "{\"m\":" << table.m() << ",\"precision_bits\":" << table.precision();
    out << ",\"densities\":{";
    bool first = true;
    auto emit = [&](Mask A) {
        if (!first) out << ",";
        first = false;
        out << "\"" << A << "\":\"" << table.density_of_class(A).decimal(digits) << "\"";
    };
    if (all_classes) {
        for (Mask A = 0; A <= table.full(); ++A) emit(A);
    } else {
        emit(0);
        emit(table.full());
    }
    out << "},\"alpha\":{";
    first = true;
    for (Mask B = 0; B <= table.full(); ++B) {
        if (!first) out << ",";
        first = false;
        out << "\"" << B << "\":\"" << table.alpha(B).decimal(digits) << "\"";
    }
    out << "},\"beta\":{";
    first = true;
    for (Mask B = 0; B <= table.full(); ++B) {
        if (!first) out << ",";
        first = false;
        out << "\"" << B << "\":\"" << table.beta(B).decimal(digits) << "\"";
    }
    out << "},\"flags\":[";
    first = true;
    for (const auto& f : table.flags()) {
        if (!first) out << ",";
        first = false;
        out << "\"" << f << "\"";
    }
    out << "]}";
    return out.str();
}

}  // namespace tauto
