#pragma once

#include <string>
#include <vector>

#include "mfflow/rational.hpp"

namespace mfflow {

struct RunConfig {
    Rational mu_max = Rational(8);
    Rational g40 = make_rational(1, 300);
    Rational c = make_rational(1, 4);  // 0 selects the vanishing-two-point condition
    int n_max = 12;
    int k_max = 24;
    int j_max = 8;
    int q_max = 60;
    unsigned precision_bits = 256;
    Rational tol = rat_pow(Rational(10), -25);
    int max_iter = 200;
    std::vector<Rational> sweep_mu_max = {Rational(8), Rational(16), Rational(32), Rational(64)};
    std::vector<Rational> eval_mu;  // flow-eval points; defaults to {mu_max}
    std::string out_dir;
    std::string format = "json";  // csv | json

    void validate() const;  // throws std::invalid_argument with the key name
};

// Key-value config file (with [section] prefixes), then flag overrides.
// Unknown keys are rejected. MFFLOW_PRECISION_BITS overrides the default.
RunConfig parse_config(const std::string& path, const std::vector<std::string>& flags);

}  // namespace mfflow
