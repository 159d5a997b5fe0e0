#include "tauto/density.hpp"
#include "tauto/formula.hpp"
#include "tauto/quad.hpp"
#include "tauto/series.hpp"
#include "tauto/yseries.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace tauto;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitVerification = 3;
constexpr int kExitNonConvergence = 4;

struct GlobalOptions {
    long precision = kDefaultPrecision;
    std::string tolerance = "1e-30";
    long max_iterations = 1000000;
    std::string format = "table";
    std::string cache_path;
    std::size_t digits() const { return static_cast<std::size_t>(precision / 4); }
};

void add_common(CLI::App* cmd, GlobalOptions& g) {
    cmd->add_option("--precision", g.precision, "working precision in bits (>= 64)")
        ->envname("TAUTODENSITY_PRECISION")
        ->check(CLI::Range(64L, 65536L));
    cmd->add_option("--tolerance", g.tolerance, "iteration tolerance")
        ->envname("TAUTODENSITY_TOLERANCE");
    cmd->add_option("--max-iterations", g.max_iterations, "iteration cap")
        ->envname("TAUTODENSITY_MAX_ITERATIONS");
    cmd->add_option("--format", g.format, "output format: table, json or csv")
        ->envname("TAUTODENSITY_FORMAT")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--cache", g.cache_path, "coefficient table cache path")
        ->envname("TAUTODENSITY_CACHE");
}

int cmd_density(int m, bool all_classes, const GlobalOptions& g) {
    AlphaBetaTable::Options opts;
    opts.precision = static_cast<mpfr_prec_t>(g.precision);
    AlphaBetaTable table = AlphaBetaTable::solve(m, opts);
    if (g.format == "json") {
        std::cout << density_report_json(table, all_classes) << "\n";
        return kExitOk;
    }
    if (g.format == "csv") {
        std::cout << "m,class,n_or_s,method,value\n";
        if (all_classes) {
            for (Mask a = 0; a <= table.full(); ++a)
                std::cout << m << "," << a << ",,exact," << table.density_of_class(a).decimal(g.digits()) << "\n";
        } else {
            std::cout << m << ",0,,exact," << table.density_of_class(0).decimal(g.digits()) << "\n";
            std::cout << m << "," << table.full() << ",,exact,"
                      << table.density_of_class(table.full()).decimal(g.digits()) << "\n";
        }
        return kExitOk;
    }
    std::cout << "exact limit densities for m = " << m << " (precision " << g.precision << " bits)\n";
    if (all_classes) {
        for (Mask a = 0; a <= table.full(); ++a)
            std::cout << "  class " << a << ": " << table.density_of_class(a).decimal(g.digits()) << "\n";
    } else {
        std::cout << "  tautologies: " << table.density_of_class(0).decimal(g.digits()) << "\n";
        std::cout << "  antilogies:  " << table.density_of_class(table.full()).decimal(g.digits()) << "\n";
    }
    if (!table.flags().empty()) {
        std::cout << "flags:\n";
        for (const auto& f : table.flags()) std::cout << "  " << f << "\n";
    }
    return kExitOk;
}

int cmd_count(int m, int n_max, std::optional<long> cls, const GlobalOptions& g) {
    CoeffTable table = [&] {
        if (!g.cache_path.empty()) {
            try {
                CoeffTable cached = CoeffTable::load(g.cache_path);
                if (cached.m() == m && cached.n_max() >= n_max) return cached;
            } catch (const std::exception&) {
                // fall through to a fresh build
            }
        }
        CoeffTableOptions opts;
        opts.n_max = n_max;
        opts.threads = 2;
        CoeffTable fresh = CoeffTable::build(m, opts);
        if (!g.cache_path.empty()) fresh.save(g.cache_path);
        return fresh;
    }();

    if (cls && (*cls < 0 || *cls >= table.num_classes())) {
        std::cerr << "class index must be in [0, " << table.num_classes() << ")\n";
        return kExitUsage;
    }
    const std::size_t digits = g.digits();
    if (g.format == "csv") {
        std::cout << "m,class,n_or_s,method,value\n";
        for (int n = 1; n <= n_max; ++n) {
            if (cls)
                std::cout << m << "," << *cls << "," << n << ",count," << table.count(static_cast<Mask>(*cls), n) << "\n";
            else
                std::cout << m << ",," << n << ",count," << table.total(n) << "\n";
        }
        return kExitOk;
    }
    if (g.format == "json") {
        std::cout << "{\"m\":" << m << ",\"n_max\":" << n_max << ",\"counts\":[";
        for (int n = 1; n <= n_max; ++n) {
            if (n > 1) std::cout << ",";
            if (cls) std::cout << "\"" << table.count(static_cast<Mask>(*cls), n) << "\"";
            else std::cout << "\"" << table.total(n) << "\"";
        }
        std::cout << "]}\n";
        return kExitOk;
    }
    if (cls) {
        std::cout << "per-length counts of class " << *cls << " for m = " << m << "\n";
        for (int n = 1; n <= n_max; ++n) {
            std::cout << "  n=" << n << ": " << table.count(static_cast<Mask>(*cls), n);
            if (table.total(n) != 0)
                std::cout << "  (ratio " << table.ratio_at(static_cast<Mask>(*cls), n, 64).decimal(6) << ")";
            std::cout << "\n";
        }
    } else {
        std::cout << "formula counts for m = " << m << "\n";
        for (int n = 1; n <= n_max; ++n)
            std::cout << "  n=" << n << ": " << table.total(n) << "\n";
    }
    (void)digits;
    return kExitOk;
}

int cmd_scut(int m, int s, const std::string& system, const std::string& shift,
             const GlobalOptions& g) {
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(g.precision);
    QuadSystem sys;
    std::optional<CoeffTable> table;
    if (system == "falsity") {
        CoeffTableOptions opts;
        opts.n_max = s;
        opts.threads = 2;
        table = CoeffTable::build(m, opts);
        sys = build_falsity_system(*table, s, prec);
    } else {
        CategoryKind kind = system == "strong-s1" ? CategoryKind::StrongS1
                            : system == "weak-s1" ? CategoryKind::WeakS1
                                                  : CategoryKind::CombinedS1S2;
        sys = build_category_system(m, kind, s, prec);
    }

    CutConfig cfg;
    cfg.s = s;
    cfg.shift = shift == "none" ? ShiftMode::None : ShiftMode::Standard;
    if (system != "falsity") cfg.shift = ShiftMode::None;
    cfg.tolerance = Real::from_string(g.tolerance, prec);
    cfg.max_iterations = g.max_iterations;
    IterationResult res = shifted_iterate(sys, cfg);

    if (g.format == "json") {
        std::cout << scut_report_json(sys, res, system, s) << "\n";
        return res.converged ? kExitOk : kExitNonConvergence;
    }
    if (g.format == "csv") {
        std::cout << "m,class,n_or_s,method,value\n";
        const std::size_t digits = g.digits();
        if (system == "falsity") {
            Mask full = static_cast<Mask>(sys.size() - 1);
            std::cout << m << ",0," << s << ",cut-sol," << res.solution[0].decimal(digits) << "\n";
            std::cout << m << "," << full << "," << s << ",cut-sol," << res.solution[full].decimal(digits) << "\n";
            std::cout << m << ",0," << s << ",ratio," << table->ratio_at(0, s, prec).decimal(digits) << "\n";
            std::cout << m << "," << full << "," << s << ",ratio," << table->ratio_at(full, s, prec).decimal(digits) << "\n";
        } else {
            for (int i = 0; i < sys.size(); ++i)
                std::cout << m << "," << sys.spec.names[i] << "," << s << ",cut-sol,"
                          << res.solution[i].decimal(digits) << "\n";
        }
        return res.converged ? kExitOk : kExitNonConvergence;
    }
    const std::size_t digits = g.digits();
    std::cout << "s-cut solve: system=" << system << " m=" << m << " s=" << s << "\n";
    std::cout << "  zeta_s = " << res.zeta.decimal(digits) << "\n";
    std::cout << "  sigma  = " << res.sigma.decimal(digits) << "\n";
    std::cout << "  iterations = " << res.iterations << (res.converged ? "" : " (not converged)")
              << ", fixed-point residual = " << res.fixed_point_residual.decimal(8) << "\n";
    std::cout << "  coordinate sum = " << res.coordinate_sum.decimal(12) << "\n";
    {
        CutContext ctx = make_cut_context(sys, s);
        ContractionReport rep = contraction_report(sys, ctx, res.solution);
        std::cout << "  contraction: certificate " << (rep.certified ? "yes" : "no")
                  << ", shifted 1-norm " << rep.shifted_one_norm.decimal(6)
                  << (rep.norm_contracts ? " (< 1)" : " (>= 1)") << "\n";
    }
    if (system == "falsity") {
        Mask full = static_cast<Mask>(sys.size() - 1);
        std::cout << "  cut-sol tautology = " << res.solution[0].decimal(digits) << "\n";
        std::cout << "  cut-sol antilogy  = " << res.solution[full].decimal(digits) << "\n";
        std::cout << "  ratio at s: taut = " << table->ratio_at(0, s, prec).decimal(digits)
                  << ", anti = " << table->ratio_at(full, s, prec).decimal(digits) << "\n";
    } else {
        for (int i = 0; i < sys.size(); ++i)
            std::cout << "  " << sys.spec.names[i] << " = " << res.solution[i].decimal(digits) << "\n";
    }
    return res.converged ? kExitOk : kExitNonConvergence;
}

int cmd_asympt(const std::string& target, int order, const std::vector<int>& at_m,
               const GlobalOptions& g) {
    struct Item {
        std::string label;
        YSeries series;
    };
    std::vector<Item> items;
    if (target == "s1") {
        items.push_back({"S1 ratio", ratio_series(RatioTarget::S1, order)});
    } else if (target == "sc") {
        items.push_back({"Sc ratio", ratio_series(RatioTarget::Sc, order)});
    } else if (target == "strong") {
        items.push_back({"T", ratio_series(RatioTarget::StrongT, order)});
    } else if (target == "weak") {
        items.push_back({"B", ratio_series(RatioTarget::WeakB, order)});
        items.push_back({"T", ratio_series(RatioTarget::WeakT, order)});
    } else if (target == "combined") {
        items.push_back({"B", ratio_series(RatioTarget::CombinedB, order)});
        items.push_back({"T", ratio_series(RatioTarget::CombinedT, order)});
        items.push_back({"U", ratio_series(RatioTarget::CombinedU, order)});
        items.push_back({"A", ratio_series(RatioTarget::CombinedA, order)});
    } else if (target == "bounds") {
        BoundsReport rep = bounds_report(order);
        items.push_back({"lower", rep.lower});
        items.push_back({"upper", rep.upper});
    } else {
        std::cerr << "unknown target '" << target << "'\n";
        return kExitUsage;
    }

    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(g.precision);
    if (g.format == "json") {
        std::cout << "{";
        bool first = true;
        for (const auto& item : items) {
            if (!first) std::cout << ",";
            first = false;
            std::cout << "\"" << item.label << "\":" << item.series.to_json();
        }
        std::cout << "}\n";
        return kExitOk;
    }
    for (const auto& item : items) {
        std::cout << item.label << ": " << item.series.to_string() << "\n";
        for (int m : at_m) {
            Real v = item.series.eval_at_y(1 / sqrt_int(m, prec));
            std::cout << "    at m=" << m << ": " << v.decimal(10) << "\n";
        }
    }
    return kExitOk;
}

int cmd_classify(const std::string& text, int m, const std::string& basis,
                 const GlobalOptions& g) {
    FormulaPtr f = parse_formula(text, m);
    Mask mask = falsity_mask(*f, m);
    SimpleKinds kinds = classify_simple(f);
    NormStats st = norm_stats(*f);
    auto basis_test = basis == "s1s2" ? is_simple_tautology : is_simple_first_kind;
    CategoryClassifier strong(basis_test, Strength::Strong);
    CategoryClassifier weak(basis_test, Strength::Weak);
    auto cat_name = [](Category c) {
        return c == Category::Taut ? "T" : c == Category::Anti ? "A" : "U";
    };
    auto norm_str = [&st]() {
        return st.norm_times_two % 2 == 0 ? std::to_string(st.norm_times_two / 2)
                                          : std::to_string(st.norm_times_two) + "/2";
    };

    if (g.format == "json") {
        std::cout << "{\"formula\":\"" << render_formula(f) << "\",\"m\":" << m
                  << ",\"falsity_mask\":" << mask
                  << ",\"tautology\":" << (mask == 0 ? "true" : "false")
                  << ",\"antilogy\":" << (mask == full_mask(m) ? "true" : "false")
                  << ",\"simple\":{\"first\":" << (kinds.first_kind ? "true" : "false")
                  << ",\"strict_first\":" << (kinds.strict_first_kind ? "true" : "false")
                  << ",\"second\":" << (kinds.second_kind ? "true" : "false") << "}"
                  << ",\"basis\":\"" << basis << "\""
                  << ",\"category_strong\":\"" << cat_name(strong.classify(f)) << "\""
                  << ",\"category_weak\":\"" << cat_name(weak.classify(f)) << "\""
                  << ",\"type\":\"" << render_formula(type_of(*f)) << "\""
                  << ",\"norm\":\"" << norm_str() << "\"}\n";
        return kExitOk;
    }
    std::cout << "formula: " << render_formula(f) << "  (m = " << m << ")\n";
    std::cout << "  falsity mask: " << mask << (mask == 0 ? "  [tautology]" : "")
              << (mask == full_mask(m) ? "  [antilogy]" : "") << "\n";
    std::cout << "  simple kinds:";
    if (kinds.strict_first_kind) std::cout << " strict-first";
    else if (kinds.first_kind) std::cout << " first";
    if (kinds.second_kind) std::cout << " second";
    if (!kinds.any()) std::cout << " none";
    std::cout << "\n";
    std::cout << "  category (" << (basis == "s1s2" ? "S1 u S2" : "S1") << " seed): strong "
              << cat_name(strong.classify(f)) << ", weak " << cat_name(weak.classify(f)) << "\n";
    std::cout << "  type formula: " << render_formula(type_of(*f)) << "\n";
    std::cout << "  norm |phi| = " << norm_str() << "  (distinct " << st.distinct_vars << ", length "
              << st.length << ", repeats " << st.repeats << ", negations " << st.negations << ")\n";
    return kExitOk;
}

// Cross-solver consistency checks; `full` adds the m=4 density table and the
// deep-truncation comparisons.
int cmd_verify(bool full, const GlobalOptions& g) {
    int failures = 0;
    auto check = [&failures](const std::string& name, bool ok) {
        std::printf("%-64s %s\n", name.c_str(), ok ? "ok" : "FAIL");
        if (!ok) ++failures;
    };
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(g.precision);

    // exact densities against the solved radical hierarchy
    {
        struct Expect { int m; const char* taut; const char* anti; };
        const Expect expected[] = {
            {1, "0.423238538401941", "0.163295676827467"},
            {2, "0.332130539615807", "0.097100910512621"},
            {3, "0.270034225407569", "0.066247249851947"},
        };
        for (const auto& e : expected) {
            AlphaBetaTable::Options opts;
            opts.precision = prec;
            AlphaBetaTable table = AlphaBetaTable::solve(e.m, opts);
            Real tol = Real::from_string("1e-14", prec);
            bool ok = abs(table.density_of_class(0) - Real::from_string(e.taut, prec)) < tol &&
                      abs(table.density_of_class(table.full()) - Real::from_string(e.anti, prec)) < tol;
            Real sum(prec);
            for (Mask a = 0; a <= table.full(); ++a) sum += table.density_of_class(a);
            ok = ok && abs(sum - 1) < Real::from_string("1e-30", prec);
            check("density hierarchy m=" + std::to_string(e.m), ok);
        }
        if (full) {
            AlphaBetaTable::Options opts;
            opts.precision = prec;
            AlphaBetaTable table = AlphaBetaTable::solve(4, opts);
            bool ok = table.density_of_class(0).decimal(5).substr(0, 7) == "0.22561" &&
                      table.density_of_class(table.full()).decimal(5).substr(0, 7) == "0.04868";
            check("density hierarchy m=4", ok);
        }
    }
    // enumeration vs class table
    {
        bool ok = true;
        for (int m = 1; m <= 2 && ok; ++m) {
            const int depth = 10;
            CoeffTable table = CoeffTable::build(m, depth);
            FormulaEnumerator en(m);
            for (int n = 1; n <= depth && ok; ++n) {
                std::vector<BigInt> hist(static_cast<std::size_t>(table.num_classes()));
                for (const auto& f : en.of_length(n)) hist[falsity_mask(*f, m)] += 1;
                for (int c = 0; c < table.num_classes(); ++c)
                    if (hist[c] != table.count(static_cast<Mask>(c), n)) ok = false;
            }
        }
        check("class counts match exhaustive enumeration (m<=2, n<=10)", ok);
    }
    // octic residual
    {
        CoeffTable table = CoeffTable::build(1, 31);
        std::vector<BigInt> taut(32), w(32);
        for (int n = 1; n <= 31; ++n) {
            taut[n] = table.count(0, n);
            w[n] = table.total(n);
        }
        check("degree-8 residual vanishes through order 30",
              octic_residual_first_nonzero(taut, w, 30) == 31);
    }
    // series expansions: closed forms vs order-by-order solving
    {
        StrongValues closed = strong_values_closed(4);
        SeriesSolution sol = solve_system_series(category_system_spec(1, CategoryKind::StrongS1), 4);
        bool ok = true;
        const char* names[] = {"B", "T", "U", "A"};
        const YSeries* vals[] = {&closed.sc, &closed.taut, &closed.unknown, &closed.anti};
        for (int i = 0; i < 4; ++i) {
            int idx = -1;
            for (int j = 0; j < static_cast<int>(sol.names.size()); ++j)
                if (sol.names[j] == names[i]) idx = j;
            for (int o = -1; o <= 4 && ok; ++o)
                if (vals[i]->coeff(o) != sol.values[idx].coeff(o)) ok = false;
        }
        check("strong values: radical route equals series route", ok);
        YSeries s1 = ratio_series(RatioTarget::S1, 4);
        ok = s1.coeff(2) == 1 && s1.coeff(3) == Rational(-7, 2) && s1.coeff(4) == 7;
        check("first-kind ratio series", ok);
        YSeries sum = ratio_series(RatioTarget::CombinedT, 4) + ratio_series(RatioTarget::CombinedU, 4) +
                      ratio_series(RatioTarget::CombinedA, 4);
        ok = sum.coeff(0) == 1;
        for (int o = 1; o <= 4; ++o) ok = ok && sum.coeff(o) == 0;
        check("combined ratio series sum to 1", ok);
    }
    // s-cut spot checks against the density solver
    {
        AlphaBetaTable::Options opts;
        opts.precision = prec;
        AlphaBetaTable density = AlphaBetaTable::solve(1, opts);
        CoeffTable table = CoeffTable::build(1, full ? 200 : 50);
        QuadSystem sys = build_falsity_system(table, full ? 200 : 50, prec);
        CutConfig cfg;
        cfg.s = full ? 200 : 50;
        cfg.tolerance = Real::from_string("1e-25", prec);
        IterationResult res = shifted_iterate(sys, cfg);
        Real gap = abs(res.solution[0] - density.density_of_class(0));
        check("s-cut solution near the exact density (m=1)",
              res.converged && gap < Real::from_string(full ? "2e-4" : "1e-3", prec));
    }
    if (full) {
        // deep coefficient ratios vs exact densities
        AlphaBetaTable::Options opts;
        opts.precision = prec;
        AlphaBetaTable density = AlphaBetaTable::solve(2, opts);
        CoeffTable table = CoeffTable::build(2, 2000);
        bool ok = abs(table.ratio_at(0, 2000, prec) - density.density_of_class(0)) <
                  Real::from_string("2e-3", prec);
        check("coefficient ratio at n=2000 near the density (m=2)", ok);
    }

    if (failures) {
        std::printf("%d verification failure(s)\n", failures);
        return kExitVerification;
    }
    std::printf("all checks passed\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"density of tautologies and semantic classes of implication-negation formulas"};
    app.require_subcommand(1);
    GlobalOptions g;

    int density_m = 2;
    bool density_full = false;
    CLI::App* density = app.add_subcommand("density", "exact limit densities per class");
    density->add_option("--vars", density_m, "number of variables (1..4)")
        ->required()
        ->envname("TAUTODENSITY_VARS");
    density->add_flag("--full", density_full, "print every class, not just tautologies/antilogies")
        ->envname("TAUTODENSITY_FULL");
    add_common(density, g);

    int count_m = 1, count_n = 20;
    long count_class = -1;
    CLI::App* count = app.add_subcommand("count", "exact per-length formula counts");
    count->add_option("--vars", count_m, "number of variables (1..3 for per-class counts)")
        ->required()
        ->envname("TAUTODENSITY_VARS");
    count->add_option("--max-len", count_n, "maximum length")
        ->required()
        ->envname("TAUTODENSITY_MAX_LEN");
    count->add_option("--class", count_class, "restrict to one falsity class")
        ->envname("TAUTODENSITY_CLASS");
    add_common(count, g);

    int scut_m = 1, scut_s = 50;
    std::string scut_system = "falsity", scut_shift = "standard";
    CLI::App* scut = app.add_subcommand("scut", "fixed-point solve of the cut operator");
    scut->add_option("--vars", scut_m, "number of variables")
        ->required()
        ->envname("TAUTODENSITY_VARS");
    scut->add_option("--s", scut_s, "cut depth")
        ->required()
        ->envname("TAUTODENSITY_S");
    scut->add_option("--system", scut_system, "falsity, strong-s1, weak-s1 or combined")
        ->check(CLI::IsMember({"falsity", "strong-s1", "weak-s1", "combined"}))
        ->envname("TAUTODENSITY_SYSTEM");
    scut->add_option("--shift", scut_shift, "standard or none")
        ->check(CLI::IsMember({"standard", "none"}))
        ->envname("TAUTODENSITY_SHIFT");
    add_common(scut, g);

    std::string asympt_target = "combined";
    int asympt_order = 4;
    std::vector<int> asympt_at;
    CLI::App* asympt = app.add_subcommand("asympt", "asymptotic ratio series in the variable count");
    asympt->add_option("--target", asympt_target, "s1, sc, strong, weak, combined or bounds")
        ->required()
        ->envname("TAUTODENSITY_TARGET");
    asympt->add_option("--order", asympt_order, "truncation order (powers of m^-1/2)")
        ->envname("TAUTODENSITY_ORDER");
    asympt->add_option("--at", asympt_at, "also evaluate numerically at these m")
        ->envname("TAUTODENSITY_AT");
    add_common(asympt, g);

    std::string classify_text;
    int classify_m = 1;
    std::string classify_basis = "s1";
    CLI::App* classify = app.add_subcommand("classify", "classify a single formula");
    classify->add_option("--formula", classify_text, "formula text, e.g. 'x0->[~x0->x1]'")
        ->required()
        ->envname("TAUTODENSITY_FORMULA");
    classify->add_option("--vars", classify_m, "number of variables")
        ->required()
        ->envname("TAUTODENSITY_VARS");
    classify->add_option("--basis", classify_basis, "category seed set: s1 or s1s2")
        ->check(CLI::IsMember({"s1", "s1s2"}))
        ->envname("TAUTODENSITY_BASIS");
    add_common(classify, g);

    std::string verify_level = "quick";
    CLI::App* verify = app.add_subcommand("verify", "run the cross-solver consistency suite");
    verify->add_option("level", verify_level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    add_common(verify, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (density->parsed()) {
            if (density_m < 1 || density_m > 4) {
                std::cerr << "density supports 1 <= m <= 4\n";
                return kExitResource;
            }
            return cmd_density(density_m, density_full, g);
        }
        if (count->parsed())
            return cmd_count(count_m, count_n,
                             count_class >= 0 ? std::optional<long>(count_class) : std::nullopt, g);
        if (scut->parsed()) return cmd_scut(scut_m, scut_s, scut_system, scut_shift, g);
        if (asympt->parsed()) return cmd_asympt(asympt_target, asympt_order, asympt_at, g);
        if (classify->parsed()) return cmd_classify(classify_text, classify_m, classify_basis, g);
        if (verify->parsed()) return cmd_verify(verify_level == "full", g);
    } catch (const ResourceRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitResource;
    } catch (const NonConvergence& e) {
        std::cerr << "solver did not converge: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
