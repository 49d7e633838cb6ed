#pragma once

#include <map>
#include <string>
#include <vector>

#include "mfflow/rational.hpp"
#include "mfflow/real.hpp"

namespace mfflow {

// Every numeric cell records how it was produced: "exact" for rationals,
// "real<bits>" for rounded values, "int" or "text" otherwise.
struct Cell {
    std::string value;
    std::string kind;

    static Cell exact(const Rational& x) { return {rat_to_string(x), "exact"}; }
    static Cell real(const Real& x) {
        return {x.to_string(), "real" + std::to_string(x.precision_bits())};
    }
    static Cell integer(long x) { return {std::to_string(x), "int"}; }
    static Cell text(std::string s) { return {std::move(s), "text"}; }
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct CertificateRow {
    std::string name;
    std::string range;
    std::string fitted;  // fitted constants, empty when not applicable
    bool pass = false;
    bool certified = false;  // proven-hypothesis regime vs observed-range check
    std::string flags;
};

struct Report {
    std::map<std::string, std::string> metadata;
    std::vector<Table> tables;
    std::vector<CertificateRow> certificates;
    std::vector<std::string> errors;

    bool all_pass() const;
    void add_meta(const std::string& k, const std::string& v) { metadata[k] = v; }
};

std::string report_to_json(const Report& r);
// one file per table plus certificates.csv and metadata.json
void emit_report(const Report& r, const std::string& format, const std::string& out_dir);

}  // namespace mfflow
