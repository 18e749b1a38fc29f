// twistmoment -- numerical laboratory for second moments of L'(1/2) over
// quadratic twist families of a level-1 Hecke eigenform.
//
// Subcommands:
//   coeffs     build/serialize the exact Fourier coefficient table
//   lvalue     completed values Lambda(1/2+alpha) and L'(1/2) for one twist
//   constants  L(1,sym^2 f), Z_1(0,0), Mellin/Stieltjes data, C_i and c_i
//   moment     family sweeps of sum L'(1/2)^2 Phi(8d/X) vs the main term,
//              or a shifted completed moment at (alpha, beta)
//   verify     deterministic oracle suites

#include "CLI11.hpp"
#include "json.hpp"

#include "twistmoment/arith.hpp"
#include "twistmoment/config.hpp"
#include "twistmoment/eigenform.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/eulerprod.hpp"
#include "twistmoment/harness.hpp"
#include "twistmoment/lvalue.hpp"
#include "twistmoment/mainterm.hpp"
#include "twistmoment/specfun.hpp"
#include "twistmoment/verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

using namespace twistmoment;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string cache_dir;
    int threads = 0;  // 0 = keep config value
};

config::Config effective_config(const GlobalOpts& g) {
    config::Config cfg;
    if (!g.config_path.empty()) cfg = config::load_config(g.config_path);
    if (!g.cache_dir.empty()) cfg.cache_dir = g.cache_dir;
    cfg.cache_dir = config::resolve_cache_dir(cfg.cache_dir);
    if (g.threads > 0) cfg.threads = g.threads;
    return cfg;
}

eigenform::EigenformTable load_table(const config::Config& cfg, int weight,
                                     std::int64_t limit) {
    std::fprintf(stderr, "[twistmoment] table weight %d limit %lld (cache %s)\n", weight,
                 (long long)limit, cfg.cache_dir.c_str());
    return eigenform::build_or_load(weight, limit, cfg.cache_dir);
}

int cmd_coeffs(const GlobalOpts& g, int weight, std::int64_t limit, const std::string& out) {
    auto cfg = effective_config(g);
    auto table = eigenform::build_table(weight, limit);
    if (!out.empty()) {
        eigenform::write_cache(table, out);
        std::printf("wrote %s\n", out.c_str());
    } else {
        eigenform::write_cache(table, cfg.cache_dir + "/coeffs_w" + std::to_string(weight) +
                                          "_N" + std::to_string(limit) + ".bin");
    }
    std::printf("weight %d  limit %lld  a(2) = %s\n", weight, (long long)limit,
                limit >= 2 ? table.a(2).to_string().c_str() : "-");
    return 0;
}

int cmd_lvalue(const GlobalOpts& g, std::int64_t d, double alpha, bool deriv,
               const std::string& method, bool as_json) {
    auto cfg = effective_config(g);
    lvalue::require_family_member(d);
    std::int64_t need = lvalue::series_cutoff(d, 18, cfg.target_eps);
    auto table = load_table(cfg, 18, need);

    ordered_json j;
    j["d"] = d;
    if (deriv) {
        if (method == "series" || method == "both") {
            auto r = lvalue::derivative_central(table, d, cfg.target_eps);
            j["Lprime_series"] = {{"value", r.value},
                                  {"truncation_bound", r.truncation_bound},
                                  {"terms_used", r.terms_used}};
        }
        if (method == "contour" || method == "both") {
            auto r = lvalue::derivative_contour(table, d, 0.25, cfg.target_eps);
            j["Lprime_contour"] = {{"value", r.value},
                                   {"truncation_bound", r.truncation_bound},
                                   {"terms_used", r.terms_used}};
        }
    } else {
        auto r = lvalue::completed_lambda(table, d, alpha, cfg.target_eps);
        j["alpha"] = alpha;
        j["Lambda"] = {{"value", r.value},
                       {"truncation_bound", r.truncation_bound},
                       {"terms_used", r.terms_used}};
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        for (auto& [k, v] : j.items()) std::cout << k << " = " << v.dump() << "\n";
    }
    return 0;
}

int cmd_constants(const GlobalOpts& g, std::int64_t primes_P, double smoothing_T,
                  bool coefficients, const std::string& out) {
    auto cfg = effective_config(g);
    std::int64_t need = std::max<std::int64_t>((std::int64_t)std::ceil(25.0 * smoothing_T),
                                               primes_P);
    auto table = load_table(cfg, 18, need);
    auto bundle = eulerprod::constants_bundle(table, primes_P, smoothing_T);

    ordered_json j;
    j["kappa"] = bundle.kappa;
    j["phi"] = "exp(-1/((x-1)(2-x))) on (1,2)";
    j["L1_sym2"] = {{"value", bundle.L1sym2.value},
                    {"error", bundle.L1sym2.error},
                    {"provenance", bundle.L1sym2.provenance}};
    j["Z1_00"] = {{"value", bundle.Z1_00.value},
                  {"error", bundle.Z1_00.error},
                  {"provenance", bundle.Z1_00.provenance}};
    j["gamma0"] = {{"value", bundle.gamma0},
                   {"error", 1e-12},
                   {"provenance", "euler-maclaurin zeta, cauchy circle"}};
    j["gamma1"] = {{"value", bundle.gamma1},
                   {"error", 1e-11},
                   {"provenance", "euler-maclaurin zeta, cauchy circle"}};
    j["phi_tilde_1"] = {{"value", bundle.phi_tilde_1},
                        {"error", 1e-12},
                        {"provenance", "gauss-legendre panels"}};

    if (coefficients) {
        mainterm::MainTerm mt(table, primes_P, smoothing_T);
        auto C = mt.extract_C();
        auto tc = mt.theorem_coefficients();
        double worst = 0.0;
        for (double X : {100.0, 10000.0}) {
            double lx = std::log(X);
            double poly = X * (C.C0 + lx * (C.C1 + lx * (C.C2 + lx * C.C3)));
            double numeric = mt.residue_numeric(X, 32, 16);
            worst = std::max(worst, std::abs(numeric - poly) / std::abs(poly));
        }
        j["C"] = {{"C3", C.C3},
                  {"C2", C.C2},
                  {"C1", C.C1},
                  {"C0", C.C0},
                  {"dual_route_max_rel", worst},
                  {"provenance", "laurent residue of M^{(0,1)}(s,0) e^{s^2}/s^2"}};
        j["c"] = {{"c3", tc.c3},
                  {"c2", tc.c2},
                  {"c1", tc.c1},
                  {"c3_closed_form", tc.c3_closed_form},
                  {"c3_closed_form_rel_diff",
                   std::abs(tc.c3 - tc.c3_closed_form) / std::abs(tc.c3_closed_form)},
                  {"provenance", "c_i = 4 Gamma(kappa/2)^{-2} C_i"}};
    }
    std::string text = j.dump(2) + "\n";
    if (!out.empty()) {
        std::ofstream f(out, std::ios::trunc);
        f << text;
        std::printf("wrote %s\n", out.c_str());
    } else {
        std::cout << text;
    }
    return 0;
}

int cmd_moment(const GlobalOpts& g, double xmin, double xmax, int steps, bool shifted,
               double alpha, double beta, double xone, const std::string& out_csv,
               const std::string& out_json) {
    auto cfg = effective_config(g);
    harness::SweepOptions opt;
    opt.threads = std::max(1, cfg.threads);
    opt.eps = cfg.target_eps;
    opt.audit_fraction = cfg.audit_fraction;
    opt.audit_tol = cfg.audit_tol;

    if (shifted) {
        std::int64_t dmax = (std::int64_t)std::floor(2.0 * xone / 8.0);
        std::int64_t need = std::max<std::int64_t>(
            lvalue::series_cutoff(std::max<std::int64_t>(dmax, 1), 18, cfg.target_eps),
            std::max<std::int64_t>((std::int64_t)std::ceil(25.0 * cfg.smoothing_T),
                                   cfg.primes_P));
        auto table = load_table(cfg, 18, need);
        mainterm::MainTerm mt(table, cfg.primes_P, cfg.smoothing_T);
        auto row = harness::shifted_empirical_moment(mt, xone, alpha, beta, opt);
        ordered_json j = {{"X", row.X},         {"alpha", row.alpha},
                          {"beta", row.beta},   {"family_size", row.family_size},
                          {"LHS", row.lhs},     {"RHS", row.rhs},
                          {"ratio", row.ratio}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::vector<double> xs;
    if (steps < 1) throw domain_error("moment: need steps >= 1");
    if (steps == 1) {
        xs.push_back(xmin);
    } else {
        for (int i = 0; i < steps; ++i)
            xs.push_back(xmin * std::pow(xmax / xmin, (double)i / (steps - 1)));
    }
    std::int64_t dmax = (std::int64_t)std::floor(2.0 * xs.back() / 8.0);
    std::int64_t need = std::max<std::int64_t>(
        lvalue::series_cutoff(dmax, 18, cfg.target_eps),
        std::max<std::int64_t>((std::int64_t)std::ceil(25.0 * cfg.smoothing_T), cfg.primes_P));
    auto table = load_table(cfg, 18, need);
    mainterm::MainTerm mt(table, cfg.primes_P, cfg.smoothing_T);
    auto rep = harness::sweep(mt, xs, opt);
    if (!rep.fit_done)
        std::fprintf(stderr, "[twistmoment] fewer than 4 X values: fit skipped\n");
    if (!out_csv.empty()) {
        std::ofstream f(out_csv, std::ios::trunc);
        f << rep.csv();
        std::printf("wrote %s\n", out_csv.c_str());
    } else {
        std::cout << rep.csv();
    }
    if (!out_json.empty()) {
        std::ofstream f(out_json, std::ios::trunc);
        f << rep.json();
        std::printf("wrote %s\n", out_json.c_str());
    }
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite) {
    auto cfg = effective_config(g);
    verify::VerifyContext ctx;
    ctx.primes_P = cfg.primes_P;
    ctx.smoothing_T = cfg.smoothing_T;
    eigenform::EigenformTable table;
    bool needs_table = suite == "all" || suite == "lvalue" || suite == "eulerprod" ||
                       suite == "mainterm";
    if (needs_table) {
        std::int64_t need = std::max<std::int64_t>(
            250000,
            std::max<std::int64_t>((std::int64_t)std::ceil(25.0 * cfg.smoothing_T),
                                   cfg.primes_P));
        table = load_table(cfg, 18, need);
        ctx.table = &table;
    }
    bool ok = verify::run_suite(ctx, suite, std::cout);
    std::cout << (ok ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"second-moment laboratory for quadratic twists of a level-1 eigenform"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--config", g.config_path, "key=value configuration file");
    app.add_option("--cache", g.cache_dir, "coefficient cache directory");
    app.add_option("--threads", g.threads, "worker threads for family sweeps");

    auto* coeffs = app.add_subcommand("coeffs", "build the exact coefficient table");
    int weight = 18;
    std::int64_t limit = 100000;
    std::string coeffs_out;
    coeffs->add_option("--weight", weight, "eigenform weight (18 or 26)");
    coeffs->add_option("--limit", limit, "largest index n")->required();
    coeffs->add_option("--out", coeffs_out, "output path (defaults into the cache)");

    auto* lv = app.add_subcommand("lvalue", "completed value / derivative for one twist");
    std::int64_t d = 1;
    double alpha = 0.0;
    bool deriv = false, as_json = false;
    std::string method = "series";
    lv->add_option("--d", d, "odd square-free twist index")->required();
    lv->add_option("--alpha", alpha, "real shift, |alpha| < 1/2");
    lv->add_flag("--deriv", deriv, "compute L'(1/2) instead of Lambda");
    lv->add_option("--method", method, "series|contour|both")
        ->check(CLI::IsMember({"series", "contour", "both"}));
    lv->add_flag("--json", as_json, "print JSON");

    auto* cst = app.add_subcommand("constants", "main-term constants and coefficients");
    std::int64_t primes_P = 10000;
    double smoothing_T = 1e4;
    bool coefficients = false;
    std::string constants_out;
    cst->add_option("--primes", primes_P, "Z_1 Euler-product cutoff");
    cst->add_option("--smoothing", smoothing_T, "L(1,sym^2) smoothing scale T");
    cst->add_flag("--coefficients", coefficients, "append C_i and c_i with diagnostics");
    cst->add_option("--out", constants_out, "write JSON here instead of stdout");

    auto* mom = app.add_subcommand("moment", "family sweep or shifted moment");
    double xmin = 1000, xmax = 40000, xone = 2000, malpha = 0.03, mbeta = 0.017;
    int steps = 6;
    bool shifted = false;
    std::string out_csv, out_json;
    mom->add_option("--xmin", xmin, "smallest X");
    mom->add_option("--xmax", xmax, "largest X");
    mom->add_option("--steps", steps, "number of X samples (geometric)");
    mom->add_flag("--shifted", shifted, "single shifted completed moment");
    mom->add_option("--alpha", malpha, "shift alpha (shifted mode)");
    mom->add_option("--beta", mbeta, "shift beta (shifted mode)");
    mom->add_option("--x", xone, "X for the shifted mode");
    mom->add_option("--out", out_csv, "CSV output path");
    mom->add_option("--json", out_json, "JSON output path");

    auto* ver = app.add_subcommand("verify", "run oracle suites");
    std::string suite = "all";
    ver->add_option("--suite", suite, "suite name or 'all'");

    CLI11_PARSE(app, argc, argv);

    try {
        if (coeffs->parsed()) return cmd_coeffs(g, weight, limit, coeffs_out);
        if (lv->parsed()) return cmd_lvalue(g, d, alpha, deriv, method, as_json);
        if (cst->parsed())
            return cmd_constants(g, primes_P, smoothing_T, coefficients, constants_out);
        if (mom->parsed())
            return cmd_moment(g, xmin, xmax, steps, shifted, malpha, mbeta, xone, out_csv,
                              out_json);
        if (ver->parsed()) return cmd_verify(g, suite);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
