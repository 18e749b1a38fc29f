#include "doctest.h"

#include "twistmoment/arith.hpp"
#include "twistmoment/eigenform.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/config.hpp"
#include "twistmoment/harness.hpp"
#include "twistmoment/lvalue.hpp"
#include "twistmoment/specfun.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace twistmoment;
using namespace twistmoment::harness;

namespace {

const EigenformTable& big_table() {
    static const EigenformTable t = [] {
        std::string dir = (std::filesystem::temp_directory_path() / "twm-test-cache").string();
        return eigenform::build_or_load(18, 250000, dir);
    }();
    return t;
}

const mainterm::MainTerm& mt() {
    static const mainterm::MainTerm m(big_table(), 10000, 1e4);
    return m;
}

}  // namespace

TEST_CASE("family enumeration matches brute square-free screening") {
    auto fam = arith::twist_family(100.0);
    CHECK(fam.members == std::vector<std::int64_t>{13, 15, 17, 19, 21, 23});
    for (double X : {100.0, 1000.0, 5000.0}) {
        auto f = arith::twist_family(X);
        for (std::int64_t d : f.members) {
            CHECK(d % 2 == 1);
            CHECK(arith::is_squarefree(d));
            CHECK(X < 8.0 * d);
            CHECK(8.0 * d < 2.0 * X);
            CHECK(specfun::phi(8.0 * d / X) >= 0.0);
        }
        // no admissible d was skipped
        std::int64_t count = 0;
        for (std::int64_t d = (std::int64_t)(X / 8.0) - 2; d <= (std::int64_t)(X / 4.0) + 2; ++d)
            if (d >= 1 && d % 2 == 1 && arith::is_squarefree(d) && X < 8.0 * d &&
                8.0 * d < 2.0 * X)
                ++count;
        CHECK((std::int64_t)f.members.size() == count);
    }
}

TEST_CASE("empirical moment at X=300: positivity, family size, support") {
    SweepOptions opt;
    opt.audit_fraction = 0.25;  // audit aggressively at this tiny scale
    auto row = empirical_moment(mt(), 300.0, opt);
    CHECK(row.family_size == (std::int64_t)arith::twist_family(300.0).members.size());
    CHECK(row.S_emp >= 0.0);
    CHECK(row.audited > 0);
    CHECK(row.audit_max_rel_err <= opt.audit_tol);
    CHECK(row.S_main > 0.0);
}

TEST_CASE("empirical moment is deterministic across thread counts") {
    SweepOptions one;
    one.threads = 1;
    one.audit_fraction = 0.0;
    SweepOptions two;
    two.threads = 2;
    two.audit_fraction = 0.0;
    auto a = empirical_moment(mt(), 400.0, one);
    auto b = empirical_moment(mt(), 400.0, two);
    CHECK(a.S_emp == b.S_emp);  // bit-identical by chunked reduction
}

TEST_CASE("kernel-grid doubling moves S_emp by less than 1e-6 relative") {
    // grid route vs exact-kernel route across a small family
    const auto& table = big_table();
    auto fam = arith::twist_family(400.0);
    double grid_sum = 0.0, exact_sum = 0.0;
    for (std::int64_t d : fam.members) {
        double w = specfun::phi(8.0 * d / 400.0);
        auto g = lvalue::derivative_central(table, d, 1e-12, true);
        auto e = lvalue::derivative_central(table, d, 1e-12, false);
        grid_sum += g.value * g.value * w;
        exact_sum += e.value * e.value * w;
    }
    CHECK(std::abs(grid_sum - exact_sum) <= 1e-6 * std::max(1e-300, std::abs(exact_sum)));
}

TEST_CASE("shifted empirical moment: antisymmetry in beta and finite ratio") {
    SweepOptions opt;
    auto row = shifted_empirical_moment(mt(), 400.0, 0.03, 0.017, opt);
    auto neg = shifted_empirical_moment(mt(), 400.0, 0.03, -0.017, opt);
    CHECK(row.lhs == -neg.lhs);  // Lambda(1/2-b) = -Lambda(1/2+b), bit-exact
    CHECK(neg.rhs == doctest::Approx(-row.rhs).epsilon(1e-12));
    CHECK(std::isfinite(row.ratio));
    CHECK_THROWS_AS(shifted_empirical_moment(mt(), 400.0, 0.02, 0.02, opt), pole_error);
}

TEST_CASE("synthetic fit recovery is exact in the noiseless case") {
    std::vector<double> X = {1000, 2000, 5000, 10000, 20000};
    double c3 = 0.37, c2 = -1.4, c1 = 2.9, c0 = 0.11;
    std::vector<double> y;
    for (double x : X) {
        double l = std::log(x);
        y.push_back(c3 * l * l * l + c2 * l * l + c1 * l + c0);
    }
    auto fit = fit_log_cubic(X, y);
    CHECK(fit[0] == doctest::Approx(c3).epsilon(1e-8));
    CHECK(fit[1] == doctest::Approx(c2).epsilon(1e-8));
    CHECK(fit[2] == doctest::Approx(c1).epsilon(1e-8));
    CHECK(fit[3] == doctest::Approx(c0).epsilon(1e-8));
    CHECK_THROWS_AS(fit_log_cubic({1, 2, 3}, {1, 2, 3}), domain_error);
}

TEST_CASE("sweep report: determinism and fixed CSV schema") {
    SweepOptions opt;
    opt.audit_fraction = 0.0;
    std::vector<double> xs = {200, 300, 400, 500};
    auto rep1 = sweep(mt(), xs, opt);
    auto rep2 = sweep(mt(), xs, opt);
    CHECK(rep1.csv() == rep2.csv());
    CHECK(rep1.json() == rep2.json());
    CHECK(rep1.fit_done);
    std::string header = "X,family_size,S_emp,S_main,ratio,c3_fit,audit_max_rel_err";
    CHECK(rep1.csv().substr(0, header.size()) == header);
    CHECK_THROWS_AS(sweep(mt(), {300, 200}, opt), domain_error);
}

TEST_CASE("config: key=value parsing, unknown keys, cache resolution") {
    namespace cfg = twistmoment::config;
    auto dir = std::filesystem::temp_directory_path();
    {
        std::ofstream f(dir / "twm_ok.cfg");
        f << "# comment\nthreads = 3\n target_eps=1e-10\nsmoothing_T = 2e4\n";
    }
    auto c = cfg::load_config((dir / "twm_ok.cfg").string());
    CHECK(c.threads == 3);
    CHECK(c.target_eps == 1e-10);
    CHECK(c.smoothing_T == 2e4);
    {
        std::ofstream f(dir / "twm_bad.cfg");
        f << "no_such_key = 7\n";
    }
    CHECK_THROWS_AS(cfg::load_config((dir / "twm_bad.cfg").string()), config_error);
    CHECK(cfg::resolve_cache_dir("/x/y") == "/x/y");
    CHECK(!cfg::resolve_cache_dir("").empty());
}
