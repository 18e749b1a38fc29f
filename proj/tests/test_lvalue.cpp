#include "doctest.h"

#include "twistmoment/arith.hpp"
#include "twistmoment/eigenform.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/lvalue.hpp"
#include "twistmoment/specfun.hpp"

#include <cmath>

using namespace twistmoment;
using namespace twistmoment::lvalue;
using cplx = std::complex<double>;

namespace {

const EigenformTable& table_for_tests() {
    // covers series_cutoff for d up to 13 with eps = 1e-12
    static const EigenformTable t = eigenform::build_table(18, 2100);
    return t;
}

}  // namespace

TEST_CASE("completed Lambda vanishes at the center and is odd in alpha") {
    const auto& t = table_for_tests();
    for (std::int64_t d : {1ll, 5ll, 13ll}) {
        auto zero = completed_lambda(t, d, 0.0);
        CHECK(zero.value == 0.0);
        auto plus = completed_lambda(t, d, 0.2);
        auto minus = completed_lambda(t, d, -0.2);
        CHECK(plus.value == -minus.value);  // bit-exact by construction
        CHECK(plus.value != 0.0);
    }
    CHECK_THROWS_AS(completed_lambda(t, 9, 0.1), domain_error);   // 9 not square-free
    CHECK_THROWS_AS(completed_lambda(t, 4, 0.1), domain_error);   // even
    CHECK_THROWS_AS(completed_lambda(t, 5, 0.7), domain_error);   // shift too large
}

TEST_CASE("i_alpha matches an independent short direct summation at d=1") {
    const auto& t = table_for_tests();
    double alpha = 0.1;
    auto got = i_alpha(t, 1, alpha);
    // omega decays like e^{-2 pi n / 8}: 50 terms leave a tail < 1e-15 here
    double direct = 0.0;
    for (int n = 1; n <= 50; ++n) {
        int chi = arith::kronecker(8, n);
        if (!chi) continue;
        direct += t.lambda(n) * chi * std::pow((double)n, -0.5 - alpha) *
                  specfun::upper_gamma(9.0 + alpha, 2.0 * M_PI * n / 8.0);
    }
    direct *= std::pow(8.0 / (2.0 * M_PI), 0.5 + alpha);
    CHECK(std::abs(got.value - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("tail certificate at d=5 is below 1e-12 and dominates the true majorant") {
    const auto& t = table_for_tests();
    auto r = i_alpha(t, 5, 0.0);
    CHECK(r.tail_bound >= 0.0);
    CHECK(r.tail_bound <= 1e-12);
    // numeric majorant of the discarded tail over a long window
    std::int64_t n0 = r.terms;
    double pref = std::pow(40.0 / (2.0 * M_PI), 0.5);
    double majorant = 0.0;
    for (std::int64_t n = n0 + 1; n <= 3 * n0; ++n)
        majorant += (double)arith::tau(n) / std::sqrt((double)n) *
                    specfun::upper_gamma(9.0, 2.0 * M_PI * n / 40.0);
    majorant *= pref;
    CHECK(majorant <= r.tail_bound);
}

TEST_CASE("tail bounds are sound under cutoff halving") {
    const auto& t = table_for_tests();
    for (std::int64_t d : {1ll, 5ll, 13ll}) {
        std::int64_t n0 = series_cutoff(d, 18);
        auto full = i_alpha_at(t, d, 0.05, n0);
        auto half = i_alpha_at(t, d, 0.05, n0 / 2);
        CHECK(std::abs(full.value - half.value) <= full.tail_bound + half.tail_bound);
    }
}

TEST_CASE("derivative: finite-difference oracle converges at O(h^2)") {
    const auto& t = table_for_tests();
    std::int64_t d = 5;
    auto deriv = derivative_central(t, d, kDefaultEps, /*use_grid=*/false);
    double norm = std::pow(8.0 * d / (2.0 * M_PI), -0.5) / 40320.0;
    auto fd = [&](double h) {
        auto lam = completed_lambda(t, d, h);
        return lam.value / h * norm;
    };
    double e2 = std::abs(fd(1e-2) - deriv.value);
    double e3 = std::abs(fd(1e-3) - deriv.value);
    CHECK(e3 < 1e-4 * std::max(1.0, std::abs(deriv.value)));
    // O(h^2): two decades of h shrink the error by ~1e4 (allow slack)
    CHECK(e3 * 50.0 < e2);
}

TEST_CASE("derivative dual route: series vs contour and grid vs exact") {
    const auto& t = table_for_tests();
    for (std::int64_t d : {1ll, 3ll, 5ll}) {
        auto series = derivative_central(t, d);
        auto series_exact = derivative_central(t, d, kDefaultEps, /*use_grid=*/false);
        auto contour = derivative_contour(t, d);
        INFO("d = ", d);
        double scale = std::max(1.0, std::abs(series.value));
        CHECK(std::abs(series.value - series_exact.value) < 1e-8 * scale);
        CHECK(std::abs(series.value - contour.value) < 1e-8 * scale);
        CHECK(series.method == "series");
        CHECK(contour.method == "contour");
    }
}

TEST_CASE("contour line independence and window doubling at d=1") {
    const auto& t = table_for_tests();
    auto v15 = derivative_contour(t, 1, 0.15);
    auto v25 = derivative_contour(t, 1, 0.25);
    auto v35 = derivative_contour(t, 1, 0.35);
    double scale = std::max(1.0, std::abs(v25.value));
    CHECK(std::abs(v15.value - v25.value) < 1e-8 * scale);
    CHECK(std::abs(v35.value - v25.value) < 1e-8 * scale);
}

TEST_CASE("table too small error carries the required cutoff") {
    auto small = eigenform::build_table(18, 50);
    try {
        i_alpha(small, 5, 0.0);
        FAIL("expected table_too_small_error");
    } catch (const table_too_small_error& e) {
        CHECK(e.required == series_cutoff(5, 18));
    }
}

TEST_CASE("complex-shift I_alpha agrees with the real route on the real axis") {
    const auto& t = table_for_tests();
    auto re = i_alpha(t, 5, 0.12);
    auto cx = i_alpha_c(t, 5, cplx(0.12, 0.0));
    CHECK(std::abs(cx.value - re.value) < 1e-12 * std::max(1.0, std::abs(re.value)));
    // conjugate symmetry off the axis
    auto up = i_alpha_c(t, 5, cplx(0.1, 0.2));
    auto dn = i_alpha_c(t, 5, cplx(0.1, -0.2));
    CHECK(std::abs(up.value - std::conj(dn.value)) < 1e-12 * std::abs(up.value));
}
