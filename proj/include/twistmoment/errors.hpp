// errors.hpp -- exception taxonomy shared by all modules.

#pragma once

#include <stdexcept>
#include <string>
#include <cstdint>

namespace twistmoment {

struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct resource_error : std::runtime_error {
    std::int64_t required = 0;
    explicit resource_error(const std::string& msg, std::int64_t req = 0)
        : std::runtime_error(msg), required(req) {}
};

// Coefficient table shorter than the certified series cutoff.
struct table_too_small_error : resource_error {
    table_too_small_error(const std::string& msg, std::int64_t required_n)
        : resource_error(msg, required_n) {}
};

struct accuracy_error : std::runtime_error {
    double achieved = 0.0;
    explicit accuracy_error(const std::string& msg, double got = 0.0)
        : std::runtime_error(msg), achieved(got) {}
};

struct integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace twistmoment
