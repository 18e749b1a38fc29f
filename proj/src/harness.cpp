#include "twistmoment/harness.hpp"
#include "twistmoment/arith.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/lvalue.hpp"
#include "twistmoment/quadrature.hpp"
#include "twistmoment/specfun.hpp"

#include "json.hpp"

#include <atomic>
#include <mutex>
#include <cmath>
#include <cstdio>
#include <thread>

namespace twistmoment::harness {

namespace {

constexpr std::int64_t kChunk = 32;

// Deterministic chunked parallel map-reduce over family members.
// work(i) fills per-member values; chunks are reduced in index order.
template <typename Fn>
void parallel_members(std::int64_t count, int threads, Fn&& work) {
    if (threads <= 1 || count < 2 * kChunk) {
        for (std::int64_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::int64_t> next_chunk{0};
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;
    auto runner = [&] {
        for (;;) {
            std::int64_t c = next_chunk.fetch_add(1);
            std::int64_t lo = c * kChunk;
            if (lo >= count) return;
            std::int64_t hi = std::min(count, lo + kChunk);
            try {
                for (std::int64_t i = lo; i < hi; ++i) work(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(runner);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

double s_main_of(const mainterm::TheoremCoefficients& c, double X) {
    double lx = std::log(X);
    return X * lx * (c.c1 + lx * (c.c2 + lx * c.c3));
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

MomentRow empirical_moment(const mainterm::MainTerm& mt, double X, const SweepOptions& opt) {
    if (!(X >= 100.0)) throw domain_error("empirical_moment: need X >= 100");
    const EigenformTable& table = mt.table();
    auto family = arith::twist_family(X);
    const std::int64_t count = (std::int64_t)family.members.size();

    // fail fast (and prewarm shared tables) before spawning workers
    if (count > 0) {
        std::int64_t dmax = family.members.back();
        std::int64_t need = lvalue::series_cutoff(dmax, table.weight, opt.eps);
        if (table.limit < need)
            throw table_too_small_error(
                "empirical_moment: table too small for the family, need n <= " +
                    std::to_string(need),
                need);
        (void)specfun::KernelGrid::shared(table.weight);
    }

    const std::int64_t audit_stride =
        opt.audit_fraction > 0.0
            ? std::max<std::int64_t>(1, (std::int64_t)std::llround(1.0 / opt.audit_fraction))
            : 0;

    std::vector<double> contrib(count, 0.0);
    std::vector<double> audit_err(count, 0.0);
    std::vector<char> audited(count, 0);
    parallel_members(count, opt.threads, [&](std::int64_t i) {
        std::int64_t d = family.members[i];
        auto deriv = lvalue::derivative_central(table, d, opt.eps, /*use_grid=*/true);
        double w = specfun::phi(8.0 * (double)d / X);
        contrib[i] = deriv.value * deriv.value * w;
        if (audit_stride > 0 && i % audit_stride == 0) {
            auto check = lvalue::derivative_contour(table, d, 0.25, opt.eps);
            double rel = std::abs(deriv.value - check.value) /
                         std::max(1e-300, std::abs(deriv.value));
            audit_err[i] = rel;
            audited[i] = 1;
        }
    });

    MomentRow row;
    row.X = X;
    row.family_size = count;
    quad::KahanSum emp;
    for (std::int64_t i = 0; i < count; ++i) {
        emp.add(contrib[i]);
        if (audited[i]) {
            ++row.audited;
            row.audit_max_rel_err = std::max(row.audit_max_rel_err, audit_err[i]);
        }
    }
    if (row.audited > 0 && row.audit_max_rel_err > opt.audit_tol)
        throw integrity_error("empirical_moment: contour audit disagreement " +
                              std::to_string(row.audit_max_rel_err) + " at X = " +
                              std::to_string(X));
    row.S_emp = emp.value();
    row.S_main = s_main_of(mt.theorem_coefficients(), X);
    row.ratio = row.S_main != 0.0 ? row.S_emp / row.S_main : 0.0;
    return row;
}

ShiftedMomentRow shifted_empirical_moment(const mainterm::MainTerm& mt, double X,
                                          double alpha, double beta,
                                          const SweepOptions& opt) {
    if (!(X >= 100.0)) throw domain_error("shifted_empirical_moment: need X >= 100");
    if (!(std::abs(alpha) > 0.0 && std::abs(beta) > 0.0 && std::abs(alpha) <= 0.05 &&
          std::abs(beta) <= 0.05))
        throw domain_error("shifted_empirical_moment: need 0 < |alpha|,|beta| <= 0.05");
    if (std::abs(std::abs(alpha) - std::abs(beta)) < 1e-12)
        throw pole_error("shifted_empirical_moment: pole configuration alpha = +-beta");

    const EigenformTable& table = mt.table();
    auto family = arith::twist_family(X);
    const std::int64_t count = (std::int64_t)family.members.size();
    std::vector<double> contrib(count, 0.0);
    parallel_members(count, opt.threads, [&](std::int64_t i) {
        std::int64_t d = family.members[i];
        auto la = lvalue::completed_lambda(table, d, alpha, opt.eps);
        auto lb = lvalue::completed_lambda(table, d, beta, opt.eps);
        double w = specfun::phi(8.0 * (double)d / X);
        contrib[i] = (2.0 * M_PI / (8.0 * (double)d)) * la.value * lb.value * w;
    });

    ShiftedMomentRow row;
    row.X = X;
    row.alpha = alpha;
    row.beta = beta;
    row.family_size = count;
    quad::KahanSum acc;
    for (double v : contrib) acc.add(v);
    row.lhs = acc.value();
    row.rhs = mt.shifted_main_combination(alpha, beta, X);
    row.ratio = row.rhs != 0.0 ? row.lhs / row.rhs : 0.0;
    return row;
}

std::array<double, 4> fit_log_cubic(const std::vector<double>& X,
                                    const std::vector<double>& y) {
    if (X.size() != y.size() || X.size() < 4)
        throw domain_error("fit_log_cubic: need at least 4 samples");
    // Fit in the centered variable u = log X - mean(log X): the raw monomial
    // basis over a narrow log range is too ill-conditioned to recover the
    // constant term; the centered solve is well-conditioned and the change of
    // basis back is exact algebra.
    double mean = 0.0;
    for (double x : X) mean += std::log(x);
    mean /= (double)X.size();
    double A[4][4] = {};
    double b[4] = {};
    for (size_t i = 0; i < X.size(); ++i) {
        double u = std::log(X[i]) - mean;
        double phi[4] = {u * u * u, u * u, u, 1.0};
        for (int r = 0; r < 4; ++r) {
            b[r] += phi[r] * y[i];
            for (int c = 0; c < 4; ++c) A[r][c] += phi[r] * phi[c];
        }
    }
    // Gaussian elimination with partial pivoting
    int idx[4] = {0, 1, 2, 3};
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(A[idx[r]][c]) > std::abs(A[idx[piv]][c])) piv = r;
        std::swap(idx[c], idx[piv]);
        double diag = A[idx[c]][c];
        if (diag == 0.0) throw domain_error("fit_log_cubic: singular system");
        for (int r = c + 1; r < 4; ++r) {
            double f = A[idx[r]][c] / diag;
            for (int k = c; k < 4; ++k) A[idx[r]][k] -= f * A[idx[c]][k];
            b[idx[r]] -= f * b[idx[c]];
        }
    }
    std::array<double, 4> u{};
    for (int c = 3; c >= 0; --c) {
        double v = b[idx[c]];
        for (int k = c + 1; k < 4; ++k) v -= A[idx[c]][k] * u[k];
        u[c] = v / A[idx[c]][c];
    }
    // expand b3 u^3 + b2 u^2 + b1 u + b0 with u = l - m back to powers of l
    double m = mean;
    std::array<double, 4> out{};
    out[0] = u[0];
    out[1] = u[1] - 3.0 * u[0] * m;
    out[2] = u[2] - 2.0 * u[1] * m + 3.0 * u[0] * m * m;
    out[3] = u[3] - u[2] * m + u[1] * m * m - u[0] * m * m * m;
    return out;
}

SweepReport sweep(const mainterm::MainTerm& mt, const std::vector<double>& X_list,
                  const SweepOptions& opt) {
    for (size_t i = 1; i < X_list.size(); ++i)
        if (!(X_list[i] > X_list[i - 1])) throw domain_error("sweep: X_list must ascend");
    SweepReport rep;
    rep.coeffs = mt.theorem_coefficients();
    for (double X : X_list) rep.rows.push_back(empirical_moment(mt, X, opt));
    if (rep.rows.size() >= 4) {
        std::vector<double> xs, ys;
        for (const auto& r : rep.rows) {
            xs.push_back(r.X);
            ys.push_back(r.S_emp / r.X);
        }
        rep.fit = fit_log_cubic(xs, ys);
        rep.c3_fit = rep.fit[0];
        rep.fit_done = true;
    }
    return rep;
}

std::string SweepReport::csv() const {
    std::string out = "X,family_size,S_emp,S_main,ratio,c3_fit,audit_max_rel_err\n";
    for (const auto& r : rows) {
        out += fmt_double(r.X) + "," + std::to_string(r.family_size) + "," +
               fmt_double(r.S_emp) + "," + fmt_double(r.S_main) + "," + fmt_double(r.ratio) +
               "," + (fit_done ? fmt_double(c3_fit) : std::string("nan")) + "," +
               fmt_double(r.audit_max_rel_err) + "\n";
    }
    return out;
}

std::string SweepReport::json() const {
    nlohmann::ordered_json j;
    j["coefficients"] = {{"c3", coeffs.c3},
                         {"c2", coeffs.c2},
                         {"c1", coeffs.c1},
                         {"c3_closed_form", coeffs.c3_closed_form}};
    j["fit_done"] = fit_done;
    if (fit_done)
        j["fit"] = {{"log3", fit[0]}, {"log2", fit[1]}, {"log1", fit[2]}, {"log0", fit[3]}};
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"X", r.X},
                             {"family_size", r.family_size},
                             {"S_emp", r.S_emp},
                             {"S_main", r.S_main},
                             {"ratio", r.ratio},
                             {"audited", r.audited},
                             {"audit_max_rel_err", r.audit_max_rel_err}});
    }
    return j.dump(2) + "\n";
}

}  // namespace twistmoment::harness
