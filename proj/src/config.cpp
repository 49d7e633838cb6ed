#include "mfflow/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mfflow {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<Rational> parse_list(const std::string& v) {
    std::vector<Rational> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(rat_from_string(item));
    }
    return out;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "mu_max") {
            cfg.mu_max = rat_from_string(value);
        } else if (key == "g40") {
            cfg.g40 = rat_from_string(value);
        } else if (key == "c") {
            cfg.c = rat_from_string(value);
        } else if (key == "n_max") {
            cfg.n_max = std::stoi(value);
        } else if (key == "k_max") {
            cfg.k_max = std::stoi(value);
        } else if (key == "j_max") {
            cfg.j_max = std::stoi(value);
        } else if (key == "q_max") {
            cfg.q_max = std::stoi(value);
        } else if (key == "precision_bits") {
            cfg.precision_bits = static_cast<unsigned>(std::stoul(value));
        } else if (key == "tol") {
            cfg.tol = rat_from_string(value);
        } else if (key == "max_iter") {
            cfg.max_iter = std::stoi(value);
        } else if (key == "sweep.mu_max") {
            cfg.sweep_mu_max = parse_list(value);
        } else if (key == "eval.mu") {
            cfg.eval_mu = parse_list(value);
        } else if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "format") {
            cfg.format = value;
        } else {
            throw std::invalid_argument("unknown configuration key '" + key + "'");
        }
    } catch (const std::invalid_argument& e) {
        std::string what = e.what();
        if (what.rfind("unknown", 0) == 0) throw;
        throw std::invalid_argument("bad value for '" + key + "': " + value);
    }
}

}  // namespace

void RunConfig::validate() const {
    if (!(mu_max > 6)) throw std::invalid_argument("mu_max > 6 required");
    if (rat_abs(c) > make_rational(1, 3)) throw std::invalid_argument("|c| <= 1/3 required");
    if (!(g40 > 0)) throw std::invalid_argument("g40 > 0 required");
    if (n_max < 4 || n_max % 2 != 0) throw std::invalid_argument("n_max must be even and >= 4");
    if (k_max < 0) throw std::invalid_argument("k_max >= 0 required");
    if (j_max < 1) throw std::invalid_argument("j_max >= 1 required");
    if (q_max < 3) throw std::invalid_argument("q_max >= 3 required");
    if (precision_bits < 64) throw std::invalid_argument("precision_bits >= 64 required");
    if (!(tol > 0)) throw std::invalid_argument("tol > 0 required");
    if (max_iter < 1) throw std::invalid_argument("max_iter >= 1 required");
    if (format != "csv" && format != "json")
        throw std::invalid_argument("format must be csv or json");
    for (const auto& mm : sweep_mu_max)
        if (!(mm > 6)) throw std::invalid_argument("sweep.mu_max entries must be > 6");
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& flags) {
    RunConfig cfg;
    if (const char* env = std::getenv("MFFLOW_PRECISION_BITS"))
        cfg.precision_bits = static_cast<unsigned>(std::stoul(env));

    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("config file not found: " + path);
        std::string line, section;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config line is not key = value: " + line);
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (!section.empty()) key = section + "." + key;
            apply_key(cfg, key, value);
        }
    }

    for (size_t i = 0; i < flags.size(); ++i) {
        std::string flag = flags[i];
        if (flag.rfind("--", 0) != 0)
            throw std::invalid_argument("expected a --flag, got '" + flag + "'");
        std::string key = flag.substr(2);
        for (auto& ch : key)
            if (ch == '-') ch = '_';
        if (i + 1 >= flags.size()) throw std::invalid_argument("flag '" + flag + "' needs a value");
        apply_key(cfg, key, flags[++i]);
    }

    cfg.validate();
    return cfg;
}

}  // namespace mfflow
