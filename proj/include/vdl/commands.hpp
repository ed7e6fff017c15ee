#pragma once

#include <cstdint>
#include <string>

namespace vdl {

// exit codes: 0 success, 1 usage, 2 runtime, 3 verification failure

int cmd_simulate(const std::string& config_path, const std::string& out_dir);

struct DiagnoseOptions {
    std::string out_dir = ".";
    double beta = 0.5;
    int images = 2;
    long pairs = 200000;
    int bins = 12;
    double quantile = 0.95;
    double k_threshold_rel = 0.1;
    double delta_max = 0.0; // 0 -> l/4
    std::uint64_t seed = 0;
};
int cmd_diagnose(const std::string& checkpoint_path, const DiagnoseOptions& opts);

int cmd_exponents_tuple(const std::string& r_text);
int cmd_exponents_scan(const std::string& r_csv, int denominator_bound, bool free_range);
int cmd_exponents_classify(const std::string& s_text, const std::string& q_text, bool vorticity);

struct VerifyOptions {
    int n = 16;
    int images = 2;
};
// suites: riesz, beltrami, balance, identities, exponents, all
int cmd_verify(const std::string& suite, const VerifyOptions& opts);

} // namespace vdl
