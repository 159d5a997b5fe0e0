#include "tauto/yseries.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tauto {

namespace {
constexpr int kMinOrderFloor = -2;
constexpr int kGuard = 8;  // extra orders carried internally
}

YSeries YSeries::zero(int guaranteed) {
    YSeries s;
    s.min_order_ = 0;
    s.guaranteed_ = guaranteed;
    s.c_.assign(static_cast<std::size_t>(guaranteed + 1), Rational(0));
    return s;
}

YSeries YSeries::constant(const Rational& c, int guaranteed) {
    YSeries s = zero(guaranteed);
    s.c_[0] = c;
    return s;
}

YSeries YSeries::y_power(int k, int guaranteed) {
    if (k < kMinOrderFloor) throw std::invalid_argument("order below the supported floor");
    YSeries s;
    s.min_order_ = k;
    s.guaranteed_ = guaranteed;
    s.c_.assign(static_cast<std::size_t>(guaranteed - k + 1), Rational(0));
    s.c_[0] = 1;
    return s;
}

Rational YSeries::coeff(int order) const {
    if (order < min_order_) return Rational(0);
    if (order > guaranteed_)
        throw std::out_of_range("coefficient beyond the guaranteed order");
    return c_[static_cast<std::size_t>(order - min_order_)];
}

void YSeries::set_coeff(int order, const Rational& v) {
    if (order < min_order_ || order > guaranteed_)
        throw std::out_of_range("coefficient outside the stored range");
    c_[static_cast<std::size_t>(order - min_order_)] = v;
}

YSeries YSeries::trimmed() const {
    YSeries s = *this;
    std::size_t drop = 0;
    while (drop < s.c_.size() && s.c_[drop] == 0 && s.min_order_ + static_cast<int>(drop) < s.guaranteed_)
        ++drop;
    if (drop) {
        s.c_.erase(s.c_.begin(), s.c_.begin() + static_cast<long>(drop));
        s.min_order_ += static_cast<int>(drop);
    }
    return s;
}

bool YSeries::known_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& v) { return v == 0; });
}

YSeries YSeries::operator+(const YSeries& b) const {
    YSeries r;
    r.min_order_ = std::min(min_order_, b.min_order_);
    r.guaranteed_ = std::min(guaranteed_, b.guaranteed_);
    r.c_.assign(static_cast<std::size_t>(r.guaranteed_ - r.min_order_ + 1), Rational(0));
    for (int o = r.min_order_; o <= r.guaranteed_; ++o) {
        Rational v = 0;
        if (o >= min_order_ && o <= guaranteed_) v += c_[o - min_order_];
        if (o >= b.min_order_ && o <= b.guaranteed_) v += b.c_[o - b.min_order_];
        r.c_[o - r.min_order_] = v;
    }
    return r;
}

YSeries YSeries::operator-() const {
    YSeries r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

YSeries YSeries::operator-(const YSeries& b) const { return *this + (-b); }

YSeries YSeries::operator*(const YSeries& rhs) const {
    YSeries a = trimmed();
    YSeries b = rhs.trimmed();
    YSeries r;
    r.min_order_ = a.min_order_ + b.min_order_;
    r.guaranteed_ = std::min(a.guaranteed_ + b.min_order_, b.guaranteed_ + a.min_order_);
    if (r.min_order_ < kMinOrderFloor) {
        // trimmed operands carry a genuine leading coefficient, so this only
        // triggers for products that really escape the supported window
        if (!(a.known_zero() || b.known_zero()))
            throw std::domain_error("product order below the supported floor");
        r.min_order_ = kMinOrderFloor;
    }
    if (r.guaranteed_ < r.min_order_) throw std::domain_error("product lost all guaranteed orders");
    r.c_.assign(static_cast<std::size_t>(r.guaranteed_ - r.min_order_ + 1), Rational(0));
    for (int i = a.min_order_; i <= a.guaranteed_; ++i) {
        const Rational& av = a.c_[i - a.min_order_];
        if (av == 0) continue;
        for (int j = b.min_order_; j <= b.guaranteed_ && i + j <= r.guaranteed_; ++j) {
            const Rational& bv = b.c_[j - b.min_order_];
            if (bv == 0) continue;
            r.c_[i + j - r.min_order_] += av * bv;
        }
    }
    return r;
}

YSeries YSeries::operator*(const Rational& c) const {
    YSeries r = *this;
    for (auto& v : r.c_) v *= c;
    return r;
}

YSeries YSeries::inverse() const {
    YSeries a = trimmed();
    if (a.c_.empty() || a.c_[0] == 0)
        throw std::domain_error("division by a zero series");
    YSeries r;
    r.min_order_ = -a.min_order_;
    r.guaranteed_ = a.guaranteed_ - 2 * a.min_order_;
    r.c_.assign(static_cast<std::size_t>(r.guaranteed_ - r.min_order_ + 1), Rational(0));
    const Rational& lead = a.c_[0];
    r.c_[0] = 1 / lead;
    for (std::size_t k = 1; k < r.c_.size(); ++k) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= k && j < a.c_.size(); ++j)
            acc += a.c_[j] * r.c_[k - j];
        r.c_[k] = -acc / lead;
    }
    return r;
}

YSeries YSeries::operator/(const YSeries& b) const { return *this * b.inverse(); }

YSeries YSeries::sqrt() const {
    YSeries a = trimmed();
    if (a.c_.empty() || a.c_[0] == 0) throw std::domain_error("sqrt of a zero series");
    if (a.min_order_ % 2 != 0)
        throw std::domain_error("sqrt needs an even leading order");
    const Rational& lead = a.c_[0];
    if (lead < 0) throw std::domain_error("sqrt of a negative leading coefficient");
    BigInt num_root, den_root;
    if (mpz_perfect_square_p(lead.get_num_mpz_t()) == 0 ||
        mpz_perfect_square_p(lead.get_den_mpz_t()) == 0)
        throw std::domain_error("sqrt leading coefficient is not a rational square");
    mpz_sqrt(num_root.get_mpz_t(), lead.get_num_mpz_t());
    mpz_sqrt(den_root.get_mpz_t(), lead.get_den_mpz_t());
    Rational root(num_root, den_root);

    YSeries r;
    r.min_order_ = a.min_order_ / 2;
    r.guaranteed_ = a.guaranteed_ - a.min_order_ + r.min_order_;
    r.c_.assign(static_cast<std::size_t>(r.guaranteed_ - r.min_order_ + 1), Rational(0));
    r.c_[0] = root;
    // (sum r_k)^2 = a, solved coefficient by coefficient
    for (std::size_t k = 1; k < r.c_.size(); ++k) {
        Rational acc = 0;
        for (std::size_t i = 1; i < k; ++i) acc += r.c_[i] * r.c_[k - i];
        Rational want = (a.min_order_ + static_cast<int>(k) <= a.guaranteed_ && k < a.c_.size())
                            ? a.c_[k]
                            : Rational(0);
        r.c_[k] = (want - acc) / (2 * root);
    }
    return r;
}

YSeries YSeries::truncated(int guaranteed) const {
    if (guaranteed >= guaranteed_) return *this;
    YSeries r = *this;
    r.guaranteed_ = guaranteed;
    if (guaranteed < r.min_order_) {
        r.min_order_ = guaranteed;
        r.c_.clear();
        r.c_.push_back(Rational(0));
    } else {
        r.c_.resize(static_cast<std::size_t>(guaranteed - r.min_order_ + 1));
    }
    return r;
}

YSeries YSeries::rational_fn(const std::vector<Rational>& num, const std::vector<Rational>& den,
                             int guaranteed) {
    YSeries a = zero(guaranteed + kGuard);
    YSeries b = zero(guaranteed + kGuard);
    for (std::size_t i = 0; i < num.size(); ++i) a.set_coeff(static_cast<int>(i), num[i]);
    for (std::size_t i = 0; i < den.size(); ++i) b.set_coeff(static_cast<int>(i), den[i]);
    return (a / b).truncated(guaranteed);
}

Real YSeries::eval_at_y(const Real& y) const {
    Real acc(y.precision());
    for (int o = guaranteed_; o >= min_order_; --o)
        acc = acc * y + Real(coeff(o), y.precision());
    if (min_order_ > 0) acc = acc * pow_ui(y, static_cast<unsigned long>(min_order_));
    else
        for (int k = 0; k < -min_order_; ++k) acc = acc / y;
    return acc;
}

std::string YSeries::to_string() const {
    YSeries t = trimmed();
    std::ostringstream out;
    bool first = true;
    for (int o = t.min_order_; o <= t.guaranteed_; ++o) {
        Rational v = t.coeff(o);
        if (v == 0) continue;
        bool neg = v < 0;
        Rational mag = neg ? Rational(-v) : v;
        out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        // exponent of m is -o/2
        if (o == 0) {
            out << mag;
        } else if (o == -2) {
            if (mag == 1) out << "m";
            else out << mag << "*m";
        } else if (o == 2 && mag == 1) {
            out << "1/m";
        } else {
            out << mag << "*m^";
            if (o % 2 == 0) out << -o / 2;
            else out << -o << "/2";
        }
    }
    if (first) out << "0";
    int err = t.guaranteed_ + 1;
    out << " + O(m^";
    if (err % 2 == 0) out << -err / 2;
    else out << -err << "/2";
    out << ")";
    return out.str();
}

std::string YSeries::to_json() const {
    YSeries t = trimmed();
    std::ostringstream out;
    int err = t.guaranteed_ + 1;
    out << "{\"order_num\":" << (err % 2 == 0 ? -err / 2 : -err)
        << ",\"order_den\":" << (err % 2 == 0 ? 1 : 2) << ",\"coeffs\":[";
    bool first = true;
    for (int o = t.min_order_; o <= t.guaranteed_; ++o) {
        Rational v = t.coeff(o);
        if (v == 0) continue;
        if (!first) out << ",";
        first = false;
        out << "[\"" << -o << "\"," << v.get_num() << "," << v.get_den() << "]";
    }
    out << "]}";
    return out.str();
}

// ---------------------------------------------------------------------------
// known series

YSeries s0_series(int order) {
    return YSeries::rational_fn({0, 1}, {2, 1}, order);
}

namespace {

YSeries w_at_s0(int order) { return YSeries::y_power(-1, order); }
YSeries m_series(int order) { return YSeries::y_power(-2, order); }

YSeries mpoly_at_s0(const MPoly& p, int order) {
    const int work = order + kGuard;
    YSeries acc = YSeries::zero(work);
    const YSeries z = s0_series(work);
    for (const MTerm& t : p) {
        // z factors first: every in-scope monomial has z_deg >= 2*m_exp - 2,
        // so interleaving keeps intermediate orders above the Laurent floor
        YSeries term = YSeries::constant(t.coeff, work);
        int z_left = t.z_deg;
        for (int e = 0; e < t.m_exp; ++e) {
            for (int d = 0; d < 2 && z_left > 0; ++d, --z_left) term = term * z;
            term = term * m_series(work);
        }
        for (; z_left > 0; --z_left) term = term * z;
        acc = acc + term;
    }
    return acc;
}

// gaussian elimination over exact rationals
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> M,
                                     std::vector<Rational> rhs, int at_order) {
    const std::size_t n = rhs.size();
    std::vector<std::size_t> piv(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && M[sel][col] == 0) ++sel;
        if (sel == n)
            throw std::domain_error("singular linear step at order " + std::to_string(at_order));
        std::swap(M[col], M[sel]);
        std::swap(rhs[col], rhs[sel]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || M[row][col] == 0) continue;
            Rational f = M[row][col] / M[col][col];
            for (std::size_t j = col; j < n; ++j) M[row][j] -= f * M[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / M[i][i];
    return x;
}

}  // namespace

SeriesSolution solve_system_series(const SystemSpec& spec, int order) {
    const int work = order + kGuard / 2;
    const int N = spec.size();

    // unknown indices: every member except W, which is the known 1/y
    std::vector<int> unknown;
    for (int i = 0; i < N; ++i)
        if (i != spec.w_index) unknown.push_back(i);
    const int V = static_cast<int>(unknown.size());
    std::vector<int> member_to_unknown(N, -1);
    for (int v = 0; v < V; ++v) member_to_unknown[unknown[v]] = v;

    // coefficient series evaluated at s0; the quadratic coefficient carries
    // the base h factor
    std::vector<YSeries> f_at(N);
    for (int i = 0; i < N; ++i) f_at[i] = mpoly_at_s0(spec.f[i], work);
    struct Lin { int i, j; YSeries cf; };
    struct Quad { int i, j, k; YSeries cf; };
    std::vector<Lin> lin;
    std::vector<Quad> quad;
    const YSeries h_at = mpoly_at_s0(spec.base_h, work);
    for (const LinearEntry& e : spec.linear)
        lin.push_back({e.i, e.j, mpoly_at_s0(e.poly, work)});
    for (const QuadEntry& e : spec.quad)
        quad.push_back({e.i, e.j, e.k, h_at * mpoly_at_s0(e.poly, work)});

    std::vector<YSeries> value(N);
    for (int i = 0; i < N; ++i) {
        if (i == spec.w_index) {
            value[i] = w_at_s0(work);
        } else {
            // Laurent slot from order -1 with the seed coefficient in it
            value[i] = YSeries::y_power(-1, work) * spec.seed_minus1[i];
        }
    }

    auto residual = [&](int i) {
        YSeries r = value[i] - f_at[i];
        for (const Lin& e : lin)
            if (e.i == i) r = r - e.cf * value[e.j];
        for (const Quad& e : quad)
            if (e.i == i) r = r - e.cf * value[e.j] * value[e.k];
        return r;
    };

    for (int k = 0; k <= work; ++k) {
        std::vector<std::vector<Rational>> M(V, std::vector<Rational>(V, Rational(0)));
        std::vector<Rational> rhs(V, Rational(0));
        int row = 0;
        for (int i : unknown) {
            M[row][member_to_unknown[i]] += 1;
            for (const Lin& e : lin) {
                if (e.i != i || member_to_unknown[e.j] < 0) continue;
                M[row][member_to_unknown[e.j]] -= e.cf.coeff(0);
            }
            for (const Quad& e : quad) {
                if (e.i != i) continue;
                // d/dU_j: cf * U_k, d/dU_k: cf * U_j; order-0 coefficients
                if (member_to_unknown[e.j] >= 0)
                    M[row][member_to_unknown[e.j]] -= (e.cf * value[e.k]).coeff(0);
                if (member_to_unknown[e.k] >= 0)
                    M[row][member_to_unknown[e.k]] -= (e.cf * value[e.j]).coeff(0);
            }
            rhs[row] = -residual(i).coeff(k);
            ++row;
        }
        std::vector<Rational> delta = solve_rational(std::move(M), std::move(rhs), k);
        for (int v = 0; v < V; ++v) value[unknown[v]].set_coeff(k, delta[v]);
    }

    // the solved series must satisfy every equation to the verifiable order
    for (int i : unknown) {
        YSeries r = residual(i);
        int upto = std::min(r.guaranteed(), work);
        for (int o = r.min_order(); o <= upto; ++o)
            if (r.coeff(o) != 0)
                throw std::logic_error("series solution residual nonzero at order " +
                                       std::to_string(o) + " in " + spec.names[i]);
    }

    SeriesSolution sol;
    sol.names = spec.names;
    for (int i = 0; i < N; ++i) sol.values.push_back(value[i].truncated(order));
    return sol;
}

YSeries sc_value_series(int order) {
    const int work = order + kGuard;
    const YSeries z = s0_series(work);
    const YSeries one = YSeries::constant(1, work);
    const YSeries W = w_at_s0(work);
    const YSeries m = m_series(work);
    return (m * z * z * z / (one + z * z - z * W)).truncated(order);
}

YSeries s1_value_series(int order) {
    const int work = order + kGuard;
    const YSeries z = s0_series(work);
    const YSeries one = YSeries::constant(1, work);
    const YSeries W = w_at_s0(work);
    const YSeries m = m_series(work);
    return (m * z * z * z / ((one + z * z - z * W) * (one - z * W))).truncated(order);
}

StrongValues strong_values_closed(int order) {
    const int work = order + kGuard;
    const YSeries z = s0_series(work);
    const YSeries one = YSeries::constant(1, work);
    const YSeries W = w_at_s0(work);
    const YSeries m = m_series(work);
    const YSeries sc = m * z * z * z / (one + z * z - z * W);

    const YSeries lin = one - z * z + z * sc - z * W;
    const YSeries disc = lin * lin - YSeries::constant(4, work) * z * sc * (one - z * W);
    // branch with the vanishing value at the origin
    const YSeries taut = (lin - disc.sqrt()) / (YSeries::constant(2, work) * z * (one - z * W));
    const YSeries anti = z * taut / (one - z * taut);
    const YSeries unknown = (m * z - sc + z * anti * (W - taut)) / (one - z - z * W);

    StrongValues out;
    out.sc = sc.truncated(order);
    out.taut = taut.truncated(order);
    out.anti = anti.truncated(order);
    out.unknown = unknown.truncated(order);
    return out;
}

namespace {

// value/ratio relation solved over series with beta_W pinned to 1
std::vector<YSeries> ratio_solve_series(const SystemSpec& spec, const std::vector<YSeries>& values,
                                        int order) {
    const int work = order + kGuard / 2;
    const int N = spec.size();
    const YSeries h_at = mpoly_at_s0(spec.base_h, work);

    std::vector<std::vector<YSeries>> L(N, std::vector<YSeries>(N, YSeries::zero(work)));
    for (const LinearEntry& e : spec.linear)
        L[e.i][e.j] = L[e.i][e.j] + mpoly_at_s0(e.poly, work);
    for (const QuadEntry& e : spec.quad) {
        YSeries hh = h_at * mpoly_at_s0(e.poly, work);
        L[e.i][e.k] = L[e.i][e.k] + hh * values[e.j];
        L[e.i][e.j] = L[e.i][e.j] + hh * values[e.k];
    }

    // unknowns: all members but W; beta_W = 1
    std::vector<int> unknown;
    for (int i = 0; i < N; ++i)
        if (i != spec.w_index) unknown.push_back(i);
    const int V = static_cast<int>(unknown.size());

    std::vector<std::vector<YSeries>> M(V, std::vector<YSeries>(V, YSeries::zero(work)));
    std::vector<YSeries> rhs(V, YSeries::zero(work));
    for (int r = 0; r < V; ++r) {
        int i = unknown[r];
        for (int cidx = 0; cidx < V; ++cidx) {
            int j = unknown[cidx];
            M[r][cidx] = (i == j ? YSeries::constant(1, work) : YSeries::zero(work)) - L[i][j];
        }
        rhs[r] = L[i][spec.w_index];
    }

    // gaussian elimination over series; pivot on the lowest leading order
    for (int col = 0; col < V; ++col) {
        int best = -1;
        int best_order = 0;
        for (int row = col; row < V; ++row) {
            YSeries t = M[row][col].trimmed();
            if (t.known_zero()) continue;
            if (best < 0 || t.min_order() < best_order) {
                best = row;
                best_order = t.min_order();
            }
        }
        if (best < 0) throw std::domain_error("singular ratio system over series");
        std::swap(M[col], M[best]);
        std::swap(rhs[col], rhs[best]);
        YSeries inv = M[col][col].inverse();
        for (int j = col; j < V; ++j) M[col][j] = M[col][j] * inv;
        rhs[col] = rhs[col] * inv;
        for (int row = 0; row < V; ++row) {
            if (row == col) continue;
            YSeries f = M[row][col];
            if (f.trimmed().known_zero()) continue;
            for (int j = col; j < V; ++j) M[row][j] = M[row][j] - f * M[col][j];
            rhs[row] = rhs[row] - f * rhs[col];
        }
    }

    std::vector<YSeries> beta(N, YSeries::zero(work));
    beta[spec.w_index] = YSeries::constant(1, work);
    for (int v = 0; v < V; ++v) beta[unknown[v]] = rhs[v];
    return beta;
}

int find_member(const SystemSpec& spec, const std::string& name) {
    for (int i = 0; i < spec.size(); ++i)
        if (spec.names[i] == name) return i;
    throw std::logic_error("missing member " + name);
}

}  // namespace

YSeries ratio_series(RatioTarget target, int order) {
    const int work = order + kGuard / 2;
    switch (target) {
        case RatioTarget::S1: {
            SystemSpec spec = simple_s1_spec(1);
            std::vector<YSeries> values = {YSeries::y_power(-1, work), s1_value_series(work)};
            return ratio_solve_series(spec, values, work)[1].truncated(order);
        }
        case RatioTarget::Sc: {
            SystemSpec spec = simple_sc_spec(1);
            std::vector<YSeries> values = {YSeries::y_power(-1, work), sc_value_series(work)};
            return ratio_solve_series(spec, values, work)[1].truncated(order);
        }
        case RatioTarget::StrongT: {
            SystemSpec spec = category_system_spec(1, CategoryKind::StrongS1);
            SeriesSolution sol = solve_system_series(spec, work);
            auto beta = ratio_solve_series(spec, sol.values, work);
            return beta[find_member(spec, "T")].truncated(order);
        }
        case RatioTarget::WeakT:
        case RatioTarget::WeakB: {
            SystemSpec spec = category_system_spec(1, CategoryKind::WeakS1);
            SeriesSolution sol = solve_system_series(spec, work);
            auto beta = ratio_solve_series(spec, sol.values, work);
            return beta[find_member(spec, target == RatioTarget::WeakT ? "T" : "B")].truncated(order);
        }
        default: {
            SystemSpec spec = category_system_spec(1, CategoryKind::CombinedS1S2);
            SeriesSolution sol = solve_system_series(spec, work);
            auto beta = ratio_solve_series(spec, sol.values, work);
            const char* name = target == RatioTarget::CombinedB   ? "B"
                               : target == RatioTarget::CombinedT ? "T"
                               : target == RatioTarget::CombinedU ? "U"
                                                                  : "A";
            return beta[find_member(spec, name)].truncated(order);
        }
    }
}

Real BoundsReport::lower_at(int m, mpfr_prec_t prec) const {
    return lower.eval_at_y(1 / sqrt_int(m, prec));
}

Real BoundsReport::upper_at(int m, mpfr_prec_t prec) const {
    return upper.eval_at_y(1 / sqrt_int(m, prec));
}

BoundsReport bounds_report(int order) {
    BoundsReport report;
    report.lower = ratio_series(RatioTarget::CombinedT, order);
    report.upper = YSeries::constant(1, order) - ratio_series(RatioTarget::CombinedA, order);
    return report;
}

}  // namespace tauto
