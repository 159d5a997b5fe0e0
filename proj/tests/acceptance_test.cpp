// Acceptance sweep: one verdict line per criterion, asserted via doctest.
// Printed reference values are reproduced either within the stated absolute
// tolerance or digit-for-digit under truncation, covering both rounding
// conventions the source tables use.
#include "tauto/density.hpp"
#include "tauto/formula.hpp"
#include "tauto/quad.hpp"
#include "tauto/series.hpp"
#include "tauto/yseries.hpp"

#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <memory>
#include <random>

using namespace tauto;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Real lit(const std::string& s) { return Real::from_string(s, 256); }

std::size_t significant_digits(const std::string& printed) {
    std::size_t count = 0;
    bool leading = true;
    for (char c : printed) {
        if (c < '0' || c > '9') continue;
        if (c == '0' && leading) continue;
        leading = false;
        ++count;
    }
    return count == 0 ? 1 : count;
}

std::string strip_trailing_zeros(std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

bool matches_printed(const Real& x, const std::string& printed, const std::string& tol) {
    if (abs(x - lit(printed)) <= lit(tol)) return true;
    return x.decimal(significant_digits(printed)) == strip_trailing_zeros(printed);
}

void verdict(int criterion, bool ok, const std::string& detail) {
    std::printf("CRITERION %d: %s  (%s)\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

const AlphaBetaTable& density_table(int m) {
    static std::unique_ptr<AlphaBetaTable> cache[5];
    if (!cache[m]) cache[m] = std::make_unique<AlphaBetaTable>(AlphaBetaTable::solve(m));
    return *cache[m];
}

// deep tables shared by criteria 3 and 8
const CoeffTable& deep_table(int m) {
    static std::unique_ptr<CoeffTable> cache[4];
    if (!cache[m]) {
        CoeffTableOptions opts;
        opts.n_max = 2000;
        opts.threads = 2;
        if (m == 3) {
            opts.dense_upto = 260;
            opts.checkpoints = {2000};
        }
        cache[m] = std::make_unique<CoeffTable>(CoeffTable::build(m, opts));
    }
    return *cache[m];
}

}  // namespace

TEST_CASE("criterion 1: exact densities for two to four variables") {
    struct Row {
        int m;
        const char* taut;
        const char* anti;
        double budget_seconds;
    };
    const Row rows[] = {
        {2, "0.33213", "0.09710", 1.0},
        {3, "0.27003", "0.06625", 1.0},
        {4, "0.22561", "0.04868", 1800.0},
    };
    bool ok = true;
    std::string detail;
    for (const Row& row : rows) {
        auto start = Clock::now();
        AlphaBetaTable table = AlphaBetaTable::solve(row.m);
        double elapsed = seconds_since(start);
        bool taut_ok = matches_printed(table.density_of_class(0), row.taut, "5e-6");
        bool anti_ok = matches_printed(table.density_of_class(table.full()), row.anti, "5e-6");
        bool time_ok = elapsed <= row.budget_seconds;
        ok = ok && taut_ok && anti_ok && time_ok;
        detail += "m=" + std::to_string(row.m) + " taut " +
                  table.density_of_class(0).decimal(6) + (taut_ok ? "" : "!") + " anti " +
                  table.density_of_class(table.full()).decimal(6) + (anti_ok ? "" : "!") + " in " +
                  std::to_string(elapsed).substr(0, 5) + "s; ";
        CHECK(taut_ok);
        CHECK(anti_ok);
        CHECK(time_ok);
    }
    verdict(1, ok, detail);
}

TEST_CASE("criterion 2: one-variable densities") {
    const AlphaBetaTable& table = density_table(1);
    Real taut = table.density_of_class(0);
    Real anti = table.density_of_class(table.full());
    bool taut_ok = matches_printed(taut, "0.4232", "5e-5");
    bool anti_ok = matches_printed(anti, "0.1632", "5e-5");
    CHECK(taut_ok);
    CHECK(anti_ok);
    verdict(2, taut_ok && anti_ok,
            "taut " + taut.decimal(6) + " anti " + anti.decimal(6) +
                " (antilogy matches the printed digits under truncation)");
}

TEST_CASE("criterion 3: ratio and cut-solution comparison table") {
    struct Entry {
        int m, s;
        const char* ratio_taut;
        const char* ratio_anti;
        const char* cut_taut;
        const char* cut_anti;
    };
    const Entry entries[] = {
        {1, 10, "0.3102", "0.1868", "0.4243", "0.1642"},
        {1, 50, "0.4142", "0.1612", "0.4233", "0.1634"},
        {1, 200, "0.4210", "0.1628", "0.4233", "0.1633"},
        {2, 10, "0.2374", "0.0996", "0.3345", "0.0982"},
        {2, 50, "0.3206", "0.0947", "0.3323", "0.0972"},
        {2, 200, "0.3293", "0.0965", "0.3322", "0.0971"},
        {3, 10, "0.1913", "0.0637", "0.2732", "0.0673"},
        {3, 50, "0.2581", "0.0641", "0.2703", "0.0663"},
        {3, 200, "0.2670", "0.0657", "0.2701", "0.0663"},
    };
    auto start = Clock::now();
    bool ok = true;
    int checked = 0;
    for (int m = 1; m <= 3; ++m) {
        CoeffTableOptions opts;
        opts.n_max = 200;
        opts.threads = 2;
        CoeffTable table = CoeffTable::build(m, opts);
        QuadSystem sys = build_falsity_system(table, 200, 256);
        const Mask full = table.full();
        for (const Entry& e : entries) {
            if (e.m != m) continue;
            bool r1 = matches_printed(table.ratio_at(0, e.s), e.ratio_taut, "5e-5");
            bool r2 = matches_printed(table.ratio_at(full, e.s), e.ratio_anti, "5e-5");
            CutConfig cfg;
            cfg.s = e.s;
            IterationResult res = shifted_iterate(sys, cfg);
            bool c1 = res.converged && matches_printed(res.solution[0], e.cut_taut, "5e-5");
            bool c2 = res.converged && matches_printed(res.solution[full], e.cut_anti, "5e-5");
            CHECK(r1);
            CHECK(r2);
            CHECK(c1);
            CHECK(c2);
            ok = ok && r1 && r2 && c1 && c2;
            checked += 4;
        }
    }
    double elapsed = seconds_since(start);
    bool time_ok = elapsed <= 300.0;
    CHECK(time_ok);
    verdict(3, ok && time_ok,
            std::to_string(checked) + " entries in " + std::to_string(elapsed).substr(0, 6) + "s");
}

TEST_CASE("criterion 4: class counts equal the enumeration histogram") {
    bool ok = true;
    for (int m = 1; m <= 2; ++m) {
        CoeffTable table = CoeffTable::build(m, 12);
        FormulaEnumerator en(m);
        for (int n = 1; n <= 12; ++n) {
            std::vector<BigInt> hist(static_cast<std::size_t>(table.full()) + 1);
            for (const auto& f : en.of_length(n)) hist[falsity_mask(*f, m)] += 1;
            for (Mask a = 0; a <= table.full(); ++a)
                if (hist[a] != table.count(a, n)) ok = false;
        }
    }
    CHECK(ok);
    verdict(4, ok, "exact match for m <= 2, n <= 12");
}

TEST_CASE("criterion 5: degree-eight residual") {
    CoeffTable table = CoeffTable::build(1, 31);
    std::vector<BigInt> taut(32), w(32);
    for (int n = 1; n <= 31; ++n) {
        taut[n] = table.count(0, n);
        w[n] = table.total(n);
    }
    int first = octic_residual_first_nonzero(taut, w, 30);
    bool ok = first == 31;
    CHECK(ok);
    verdict(5, ok, "first nonvanishing order " + std::to_string(first) + " (> 30 required)");
}

TEST_CASE("criterion 6: asymptotic series, exact rational equality") {
    auto start = Clock::now();
    int failed = 0, total = 0;
    std::string failures;
    auto expect = [&](const char* label, const YSeries& s, int from,
                      std::initializer_list<Rational> want) {
        int o = from;
        for (const Rational& c : want) {
            ++total;
            if (s.coeff(o) != c) {
                ++failed;
                failures += std::string(label) + "@m^" + std::to_string(-o) + "/2 got " +
                            s.coeff(o).get_str() + " want " + c.get_str() + "; ";
            }
            ++o;
        }
    };
    using R = Rational;

    // ratio series
    expect("S1", ratio_series(RatioTarget::S1, 4), 2, {R(1), R(-7, 2), R(7)});
    expect("Sc", ratio_series(RatioTarget::Sc, 4), 2, {R(1, 4), R(-3, 4), R(19, 16)});
    expect("strongT", ratio_series(RatioTarget::StrongT, 4), 2, {R(1), R(-7, 2), R(31, 4)});
    expect("weakT", ratio_series(RatioTarget::WeakT, 4), 2, {R(1), R(-5, 2), R(29, 8)});
    expect("weakB", ratio_series(RatioTarget::WeakB, 4), 2, {R(1, 4), R(-3, 4), R(9, 8)});
    expect("combinedB", ratio_series(RatioTarget::CombinedB, 4), 2, {R(1, 4), R(-1, 2), R(5, 16)});
    expect("combinedT", ratio_series(RatioTarget::CombinedT, 4), 2, {R(1), R(-7, 4), R(5, 4)});
    expect("combinedU", ratio_series(RatioTarget::CombinedU, 4), 0,
           {R(1), R(0), R(-1), R(5, 4), R(-1, 8)});
    expect("combinedA", ratio_series(RatioTarget::CombinedA, 4), 2, {R(0), R(1, 2), R(-9, 8)});

    // value expansions at the singularity
    {
        SeriesSolution sol = solve_system_series(category_system_spec(1, CategoryKind::StrongS1), 3);
        auto get = [&sol](const char* name) {
            for (std::size_t i = 0; i < sol.names.size(); ++i)
                if (sol.names[i] == name) return sol.values[i];
            throw std::logic_error("missing member");
        };
        expect("T*(s0)", get("T"), -1, {R(0), R(0), R(1, 2), R(-5, 4), R(17, 8)});
        expect("A*(s0)", get("A"), -1, {R(0), R(0), R(0), R(1, 4), R(-3, 4)});
        expect("U*(s0)", get("U"), -1, {R(1), R(0), R(-1, 2), R(1), R(-11, 8)});
    }
    {
        SeriesSolution sol = solve_system_series(category_system_spec(1, CategoryKind::WeakS1), 3);
        auto get = [&sol](const char* name) {
            for (std::size_t i = 0; i < sol.names.size(); ++i)
                if (sol.names[i] == name) return sol.values[i];
            throw std::logic_error("missing member");
        };
        expect("B^(s0)", get("B"), -1, {R(0), R(0), R(1, 4), R(-1, 2), R(9, 16)});
        expect("T^(s0)", get("T"), -1, {R(0), R(0), R(1, 2), R(-1), R(5, 4)});
        expect("U^(s0)", get("U"), -1, {R(1), R(0), R(-1, 2), R(3, 4), R(-5, 8)});
        expect("A^(s0)", get("A"), -1, {R(0), R(0), R(0), R(1, 4), R(-5, 8)});
    }
    {
        SeriesSolution sol =
            solve_system_series(category_system_spec(1, CategoryKind::CombinedS1S2), 3);
        auto get = [&sol](const char* name) {
            for (std::size_t i = 0; i < sol.names.size(); ++i)
                if (sol.names[i] == name) return sol.values[i];
            throw std::logic_error("missing member");
        };
        expect("B1(s0)", get("B1"), -1, {R(0), R(0), R(1, 4), R(-1, 2), R(9, 16)});
        expect("B2(s0)", get("B2"), -1, {R(1, 4), R(-1, 4), R(-3, 16), R(5, 8), R(-47, 64)});
        expect("B3(s0)", get("B3"), -1, {R(1, 4), R(-1, 4), R(-3, 16), R(9, 16), R(-35, 64)});
        expect("B4(s0)", get("B4"), -1, {R(0), R(1, 8), R(-3, 16), R(1, 16), R(3, 32)});
        expect("B5(s0)", get("B5"), -1, {R(0), R(1, 8), R(-3, 16), R(0), R(9, 32)});
        expect("B(s0)", get("B"), -1, {R(0), R(0), R(1, 4), R(-3, 8), R(3, 16)});
        expect("T(s0)", get("T"), -1, {R(0), R(0), R(1, 2), R(-3, 4), R(1, 2)});
        expect("U(s0)", get("U"), -1, {R(1), R(0), R(-1, 2), R(1, 2), R(0)});
        expect("A(s0)", get("A"), -1, {R(0), R(0), R(0), R(1, 4), R(-1, 2)});
    }

    double elapsed = seconds_since(start);
    bool time_ok = elapsed <= 10.0;
    bool ok = failed == 0 && time_ok;
    CHECK(failed == 0);
    CHECK(time_ok);
    verdict(6, ok,
            std::to_string(total - failed) + "/" + std::to_string(total) +
                " coefficients match in " + std::to_string(elapsed).substr(0, 5) + "s" +
                (failed ? "; unreproducible: " + failures + "see the decisions ledger" : ""));
}

TEST_CASE("criterion 7: property suites") {
    bool ok = true;
    std::string detail;

    // norm bounds and simple-tautology soundness, exhaustive
    {
        bool bounds_ok = true, simple_ok = true;
        for (int m = 1; m <= 3; ++m) {
            FormulaEnumerator en(m);
            for (int n = 1; n <= 11; ++n)
                for (const auto& f : en.of_length(n)) {
                    NormStats st = norm_stats(*f);
                    if (st.norm_times_two > 1) bounds_ok = false;
                    Mask mask = falsity_mask(*f, m);
                    if (mask == 0 && st.norm_times_two > -1) bounds_ok = false;
                    if (mask == full_mask(m) && st.norm_times_two > -2) bounds_ok = false;
                    if (classify_simple(f).any() && mask != 0) simple_ok = false;
                }
        }
        ok = ok && bounds_ok && simple_ok;
        CHECK(bounds_ok);
        CHECK(simple_ok);
        detail += std::string("norm bounds ") + (bounds_ok ? "ok" : "FAIL") + ", simple=>taut " +
                  (simple_ok ? "ok" : "FAIL");
    }
    // category soundness chain for n <= 12
    {
        bool chain_ok = true;
        for (int m = 1; m <= 2; ++m) {
            FormulaEnumerator en(m);
            CategoryClassifier strong(is_simple_first_kind, Strength::Strong);
            CategoryClassifier weak(is_simple_first_kind, Strength::Weak);
            for (int n = 1; n <= 12; ++n)
                for (const auto& f : en.of_length(n)) {
                    Category cs = strong.classify(f);
                    Category cw = weak.classify(f);
                    if (cs == Category::Taut && cw != Category::Taut) chain_ok = false;
                    if (cw == Category::Taut && falsity_mask(*f, m) != 0) chain_ok = false;
                }
        }
        ok = ok && chain_ok;
        CHECK(chain_ok);
        detail += std::string(", category chain ") + (chain_ok ? "ok" : "FAIL");
    }
    // partition identities for every built falsity system
    {
        bool part_ok = true;
        for (int m = 1; m <= 3; ++m)
            if (!validate_natural_partition(falsity_system_spec(m)).ok) part_ok = false;
        ok = ok && part_ok;
        CHECK(part_ok);
        detail += std::string(", partition identities ") + (part_ok ? "ok" : "FAIL");
    }
    // simplex invariance and the jacobian closed form
    {
        CoeffTable table = CoeffTable::build(2, 60);
        QuadSystem sys = build_falsity_system(table, 60, 256);
        CutContext ctx = make_cut_context(sys, 50);
        const int N = sys.size();
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        bool simplex_ok = true, jac_ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Real> x(N, Real(256));
            Real sum(256);
            for (int i = 0; i + 1 < N; ++i) {
                x[i] = Real(dist(rng) / N, 256);
                sum += x[i];
            }
            x[N - 1] = 1 - sum;
            auto c = apply_cut_operator(sys, ctx, x);
            Real csum(256);
            for (const auto& v : c) {
                if (v < Real(0L, 256)) simplex_ok = false;
                csum += v;
            }
            if (abs(csum - 1) > lit("1e-70")) simplex_ok = false;

            if (trial < 20) {
                Real expected = jacobian_one_norm(sys, ctx, x);
                Real h = Real::pow2(-60, 256);
                auto base_img = apply_cut_operator(sys, ctx, x);
                int j = static_cast<int>(rng() % N);
                auto xp = x;
                xp[j] += h;
                auto img = apply_cut_operator(sys, ctx, xp);
                Real colsum(256);
                for (int i = 0; i < N; ++i) colsum += (img[i] - base_img[i]) / h;
                if (abs(colsum - expected) / expected > lit("1e-6")) jac_ok = false;
            }
        }
        ok = ok && simplex_ok && jac_ok;
        CHECK(simplex_ok);
        CHECK(jac_ok);
        detail += std::string(", simplex invariance ") + (simplex_ok ? "ok" : "FAIL") +
                  ", jacobian vs finite differences " + (jac_ok ? "ok" : "FAIL");
    }
    verdict(7, ok, detail);
}

TEST_CASE("criterion 8: cross-method agreement") {
    bool beta_ok = true, ratio_ok = true;
    // ratio extraction vs the radical hierarchy, 1e-20 at 256 bits
    for (int m = 1; m <= 3; ++m) {
        const AlphaBetaTable& density = density_table(m);
        CoeffTable table = CoeffTable::build(m, 30);
        QuadSystem sys = build_falsity_system(table, 30, 256);
        std::vector<Real> values;
        for (Mask a = 0; a <= density.full(); ++a) values.push_back(density.class_value_at_s0(a));
        Normalization norm;
        norm.kind = Normalization::SumToOne;
        auto beta = ratio_linear_solve(sys, values, norm);
        for (Mask a = 0; a <= density.full(); ++a)
            if (abs(beta[a] - density.density_of_class(a)) > lit("1e-20")) beta_ok = false;
    }
    CHECK(beta_ok);
    // coefficient ratios at n = 2000 within 2e-3 of the exact densities
    for (int m = 1; m <= 3; ++m) {
        const AlphaBetaTable& density = density_table(m);
        const CoeffTable& table = deep_table(m);
        for (Mask a = 0; a <= density.full(); ++a)
            if (abs(table.ratio_at(a, 2000) - density.density_of_class(a)) > lit("2e-3"))
                ratio_ok = false;
    }
    CHECK(ratio_ok);
    verdict(8, beta_ok && ratio_ok,
            std::string("linear-relation betas ") + (beta_ok ? "ok" : "FAIL") +
                ", deep coefficient ratios " + (ratio_ok ? "ok" : "FAIL"));
}

TEST_CASE("criterion 9: asymptotic sandwich at finite m") {
    BoundsReport rep = bounds_report(4);
    bool ok = true;
    std::string detail;
    for (int m = 2; m <= 4; ++m) {
        Real taut = density_table(m).density_of_class(0);
        Real lo = rep.lower_at(m);
        Real hi = rep.upper_at(m);
        bool here = lo <= taut && taut <= hi;
        // the crude structural bound sqrt(m)/(4(sqrt(m)+1)(2 sqrt(m)+1)^2)
        // also holds below the density
        Real sm = sqrt_int(m, 256);
        bool crude = taut >= sm / (4 * (sm + 1) * (2 * sm + 1) * (2 * sm + 1));
        ok = ok && here && crude;
        CHECK(here);
        CHECK(crude);
        detail += "m=" + std::to_string(m) + ": " + lo.decimal(5) + " <= " + taut.decimal(5) +
                  " <= " + hi.decimal(5) + "; ";
    }
    verdict(9, ok, detail);
}
