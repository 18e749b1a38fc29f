// harness.hpp
//
// Twist-family enumeration, empirical second moments of L'(1/2), shifted
// completed moments, and sweep reports (CSV/JSON) compared against the
// main-term prediction c3 X log^3 X + c2 X log^2 X + c1 X log X.
//
// Concurrency: members are partitioned into fixed-size chunks; workers fill
// per-chunk compensated partial sums; chunks are combined in index order, so
// results are byte-identical for any thread count.

#pragma once

#include "twistmoment/eigenform.hpp"
#include "twistmoment/mainterm.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace twistmoment::harness {

using eigenform::EigenformTable;

struct SweepOptions {
    int threads = 1;
    double eps = 1e-12;            // AFE series accuracy target
    double audit_fraction = 0.01;  // contour-route audit share
    double audit_tol = 1e-6;       // integrity threshold (relative)
};

struct MomentRow {
    double X = 0.0;
    std::int64_t family_size = 0;
    double S_emp = 0.0;
    double S_main = 0.0;
    double ratio = 0.0;
    double audit_max_rel_err = 0.0;
    std::int64_t audited = 0;
};

struct ShiftedMomentRow {
    double X = 0.0;
    double alpha = 0.0, beta = 0.0;
    std::int64_t family_size = 0;
    double lhs = 0.0;   // sum (8d/2pi)^{-1} Lambda(1/2+a) Lambda(1/2+b) Phi(8d/X)
    double rhs = 0.0;   // four-term alternating M combination
    double ratio = 0.0;
};

MomentRow empirical_moment(const mainterm::MainTerm& mt, double X,
                           const SweepOptions& opt = {});

ShiftedMomentRow shifted_empirical_moment(const mainterm::MainTerm& mt, double X,
                                          double alpha, double beta,
                                          const SweepOptions& opt = {});

struct SweepReport {
    std::vector<MomentRow> rows;
    mainterm::TheoremCoefficients coeffs;
    bool fit_done = false;
    double c3_fit = 0.0;
    std::array<double, 4> fit = {0, 0, 0, 0};  // leading..constant

    std::string csv() const;   // fixed documented columns
    std::string json() const;  // per-row diagnostics and constants
};

SweepReport sweep(const mainterm::MainTerm& mt, const std::vector<double>& X_list,
                  const SweepOptions& opt = {});

// Least-squares fit of y ~ a log^3 X + b log^2 X + c log X + d.
std::array<double, 4> fit_log_cubic(const std::vector<double>& X,
                                    const std::vector<double>& y);

}  // namespace twistmoment::harness
