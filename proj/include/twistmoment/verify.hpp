// verify.hpp -- deterministic oracle suites behind `twistmoment verify`.

#pragma once

#include "twistmoment/eigenform.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace twistmoment::verify {

struct VerifyContext {
    const eigenform::EigenformTable* table = nullptr;  // limit >= 250000 for "all"
    std::int64_t primes_P = 10000;
    double smoothing_T = 1e4;
};

// Known suite names (excluding "all").
std::vector<std::string> suite_names();

// Runs one suite (or "all"); prints a fixed-format residual table to `out`
// (byte-identical across runs) and returns pass/fail.
bool run_suite(const VerifyContext& ctx, const std::string& name, std::ostream& out);

}  // namespace twistmoment::verify
