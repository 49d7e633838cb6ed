#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "mfflow/config.hpp"
#include "mfflow/pipelines.hpp"
#include "mfflow/report.hpp"

namespace {

void usage() {
    std::cout <<
        "usage: mfflow <command> [--config PATH] [--key value ...] [--out DIR] [--format csv|json]\n"
        "\n"
        "commands:\n"
        "  fixed-point   solve the renormalization condition by iteration\n"
        "  taylor        dump the exact Taylor data with envelope verdicts\n"
        "  flow-eval     evaluate the moment jets and hierarchy residuals\n"
        "  perturb       exact perturbative amplitudes and remainder tables\n"
        "  borel         transform, resummation, and summability certificate\n"
        "  certify       full certificate battery\n"
        "  sweep         re-solve across top scales and fit decay slopes\n"
        "\n"
        "keys mirror the config file: mu-max, g40, c, n-max, k-max, j-max,\n"
        "q-max, precision-bits, tol, max-iter, sweep.mu-max, eval.mu\n"
        "environment: MFFLOW_PRECISION_BITS overrides the default precision\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2 || std::string(argv[1]) == "--help" || std::string(argv[1]) == "-h") {
        usage();
        return argc < 2 ? 2 : 0;
    }
    std::string command = argv[1];
    std::string config_path;
    std::vector<std::string> flags;
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config") {
            if (i + 1 >= argc) {
                std::cerr << "--config needs a path\n";
                return 2;
            }
            config_path = argv[++i];
        } else {
            flags.push_back(arg);
        }
    }

    mfflow::RunConfig cfg;
    try {
        cfg = mfflow::parse_config(config_path, flags);
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }

    auto report = mfflow::run_command(command, cfg);
    for (const auto& err : report.errors) std::cerr << "error: " << err << "\n";
    for (const auto& cert : report.certificates)
        std::cout << (cert.pass ? "[PASS] " : "[FAIL] ") << cert.name
                  << (cert.certified ? "" : " (uncertified)")
                  << (cert.fitted.empty() ? "" : "  " + cert.fitted)
                  << (cert.flags.empty() ? "" : "  [" + cert.flags + "]") << "\n";
    try {
        mfflow::emit_report(report, cfg.format, cfg.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "emit error: " << e.what() << "\n";
        return 1;
    }
    return report.all_pass() ? 0 : 1;
}
