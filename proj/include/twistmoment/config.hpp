// config.hpp -- plain key=value configuration for precision knobs and paths.

#pragma once

#include <cstdint>
#include <string>

namespace twistmoment::config {

struct Config {
    int threads = 1;
    double target_eps = 1e-12;
    std::int64_t primes_P = 10000;   // Z_1 Euler-product cutoff
    double smoothing_T = 1e4;        // L(1,sym^2) smoothing scale
    double audit_fraction = 0.01;
    double audit_tol = 1e-6;
    std::string cache_dir;           // empty -> resolve_cache_dir()
};

// Parse `key = value` lines ('#' comments, blank lines allowed); unknown keys
// raise config_error.
Config load_config(const std::string& path);

// Explicit flag > TWISTMOMENT_CACHE env > ".twistmoment-cache".
std::string resolve_cache_dir(const std::string& explicit_dir = "");

}  // namespace twistmoment::config
