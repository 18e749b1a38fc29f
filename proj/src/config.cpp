#include "twistmoment/config.hpp"
#include "twistmoment/errors.hpp"

#include <cstdlib>
#include <fstream>

namespace twistmoment::config {

namespace {
std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}
}  // namespace

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("load_config: cannot open " + path);
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error("load_config: bad line " + std::to_string(lineno) + " in " + path);
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        try {
            if (key == "threads")
                cfg.threads = std::stoi(val);
            else if (key == "target_eps")
                cfg.target_eps = std::stod(val);
            else if (key == "primes_P")
                cfg.primes_P = std::stoll(val);
            else if (key == "smoothing_T")
                cfg.smoothing_T = std::stod(val);
            else if (key == "audit_fraction")
                cfg.audit_fraction = std::stod(val);
            else if (key == "audit_tol")
                cfg.audit_tol = std::stod(val);
            else if (key == "cache_dir")
                cfg.cache_dir = val;
            else
                throw config_error("load_config: unknown key '" + key + "' in " + path);
        } catch (const config_error&) {
            throw;
        } catch (const std::exception&) {
            throw config_error("load_config: bad value for '" + key + "' in " + path);
        }
    }
    return cfg;
}

std::string resolve_cache_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv("TWISTMOMENT_CACHE"); env && *env) return env;
    return ".twistmoment-cache";
}

}  // namespace twistmoment::config
