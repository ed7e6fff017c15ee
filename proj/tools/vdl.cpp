#include <CLI11.hpp>

#include <iostream>

#include "vdl/commands.hpp"
#include "vdl/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"periodic-box flow laboratory: spectral solver, vorticity-direction "
                 "diagnostics, and exact exponent calculus"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    CLI::App* simulate = app.add_subcommand("simulate", "integrate a configured run");
    simulate->add_option("--config", config_path, "INI config file")->required();
    simulate->add_option("--output-dir", out_dir, "output directory (default .)");

    std::string ckpt_path;
    vdl::DiagnoseOptions dopts;
    CLI::App* diagnose =
        app.add_subcommand("diagnose", "direction-regularity diagnostics of a checkpoint");
    diagnose->add_option("checkpoint", ckpt_path, "checkpoint file")->required();
    diagnose->add_option("--output-dir", dopts.out_dir, "output directory (default .)");
    diagnose->add_option("--beta", dopts.beta, "Riesz exponent (default 0.5)");
    diagnose->add_option("--images", dopts.images, "direct-sum image radius (default 2)");
    diagnose->add_option("--pairs", dopts.pairs, "sampled point pairs (default 200000)");
    diagnose->add_option("--bins", dopts.bins, "separation bins (default 12)");
    diagnose->add_option("--quantile", dopts.quantile, "per-bin quantile (default 0.95)");
    diagnose->add_option("--kthresh", dopts.k_threshold_rel,
                         "magnitude threshold relative to max (default 0.1)");
    diagnose->add_option("--delta-max", dopts.delta_max, "max separation (default l/4)");
    diagnose->add_option("--seed", dopts.seed, "sampler seed (default 0)");

    CLI::App* exponents = app.add_subcommand("exponents", "exact exponent calculus");
    exponents->require_subcommand(1);
    std::string r_text = "2";
    CLI::App* tuple = exponents->add_subcommand("tuple", "consistent exponent tuples for r");
    tuple->add_option("r", r_text, "integrability exponent, rational in (1,2]")->required();
    std::string r_csv = "5/4,4/3,3/2,7/4,2";
    int denom = 12;
    bool free_range = false;
    CLI::App* scan = exponents->add_subcommand("scan", "enumerate attainable beta");
    scan->add_option("--r", r_csv, "comma-separated rational r grid");
    scan->add_option("--denom", denom, "weight denominator bound (default 12)");
    scan->add_flag("--free-range", free_range, "also report beta range without the coupling");
    std::string s_text, q_text;
    bool vorticity = false;
    CLI::App* classify = exponents->add_subcommand("classify", "regularity region of (s,q)");
    classify->add_option("s", s_text, "time exponent, rational or inf")->required();
    classify->add_option("q", q_text, "space exponent, rational or inf")->required();
    classify->add_flag("--vorticity", vorticity, "classify by the vorticity criterion");

    std::string suite = "all";
    vdl::VerifyOptions vopts;
    CLI::App* verify = app.add_subcommand("verify", "oracle verification suites");
    verify->add_option("suite", suite,
                       "riesz | beltrami | balance | identities | exponents | all");
    verify->add_option("--n", vopts.n, "grid size (default 16)");
    verify->add_option("--images", vopts.images, "direct-sum image radius (default 2)");

    try {
        app.parse(argc, argv);
        if (*simulate) return vdl::cmd_simulate(config_path, out_dir);
        if (*diagnose) return vdl::cmd_diagnose(ckpt_path, dopts);
        if (*tuple) return vdl::cmd_exponents_tuple(r_text);
        if (*scan) return vdl::cmd_exponents_scan(r_csv, denom, free_range);
        if (*classify) return vdl::cmd_exponents_classify(s_text, q_text, vorticity);
        if (*verify) return vdl::cmd_verify(suite, vopts);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const vdl::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
