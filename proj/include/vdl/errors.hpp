#pragma once

#include <stdexcept>
#include <string>

namespace vdl {

// exit codes: 0 success, 1 usage, 2 runtime, 3 verification failure
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& m) : std::runtime_error(m) {}
};

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

struct invalid_field_error : std::runtime_error {
    explicit invalid_field_error(const std::string& m) : std::runtime_error(m) {}
};

struct cfl_error : std::runtime_error {
    explicit cfl_error(const std::string& m) : std::runtime_error(m) {}
};

struct blowup_error : std::runtime_error {
    explicit blowup_error(const std::string& m) : std::runtime_error(m) {}
};

struct format_error : std::runtime_error {
    explicit format_error(const std::string& m) : std::runtime_error(m) {}
};

struct insufficient_data_error : std::runtime_error {
    explicit insufficient_data_error(const std::string& m) : std::runtime_error(m) {}
};

struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& m) : std::runtime_error(m) {}
};

void warn(const std::string& message);

} // namespace vdl
