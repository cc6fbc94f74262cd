#pragma once

#include <stdexcept>
#include <string>

namespace fusionkit {

// Error taxonomy used across the library:
//   domain_error_t    - caller passed input outside an operation's domain
//   capacity_error_t  - input is valid but exceeds a documented size guard
//   integrity_error_t - an internal invariant failed; indicates a bug
//   load_error_t      - external file or JSON payload failed validation
struct domain_error_t : std::runtime_error {
    explicit domain_error_t(const std::string& msg) : std::runtime_error(msg) {}
};

struct capacity_error_t : std::runtime_error {
    explicit capacity_error_t(const std::string& msg) : std::runtime_error(msg) {}
};

struct integrity_error_t : std::runtime_error {
    explicit integrity_error_t(const std::string& msg) : std::runtime_error(msg) {}
};

struct load_error_t : std::runtime_error {
    explicit load_error_t(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fusionkit
