#include "mfflow/report.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>

namespace mfflow {

using ordered_json = nlohmann::ordered_json;

bool Report::all_pass() const {
    if (!errors.empty()) return false;
    for (const auto& c : certificates)
        if (!c.pass) return false;
    return true;
}

std::string report_to_json(const Report& r) {
    ordered_json j;
    j["metadata"] = r.metadata;
    j["tables"] = ordered_json::array();
    for (const auto& t : r.tables) {
        ordered_json jt;
        jt["name"] = t.name;
        jt["columns"] = t.columns;
        jt["rows"] = ordered_json::array();
        for (const auto& row : t.rows) {
            ordered_json jr = ordered_json::array();
            for (const auto& cell : row) jr.push_back({{"value", cell.value}, {"kind", cell.kind}});
            jt["rows"].push_back(jr);
        }
        j["tables"].push_back(jt);
    }
    j["certificates"] = ordered_json::array();
    for (const auto& c : r.certificates)
        j["certificates"].push_back({{"name", c.name},
                                     {"range", c.range},
                                     {"fitted", c.fitted},
                                     {"pass", c.pass},
                                     {"certified", c.certified},
                                     {"flags", c.flags}});
    j["errors"] = r.errors;
    return j.dump(2);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

void emit_report(const Report& r, const std::string& format, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string());

    if (format == "json") {
        std::ofstream out(dir / "report.json");
        if (!out) throw std::runtime_error("cannot write " + (dir / "report.json").string());
        out << report_to_json(r) << "\n";
        return;
    }

    for (const auto& t : r.tables) {
        std::ofstream out(dir / (t.name + ".csv"));
        if (!out) throw std::runtime_error("cannot write table " + t.name);
        for (size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << csv_escape(t.columns[i]);
        out << "\n";
        for (const auto& row : t.rows) {
            for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i].value);
            out << "\n";
        }
    }
    {
        std::ofstream out(dir / "certificates.csv");
        out << "name,range,fitted,pass,certified,flags\n";
        for (const auto& c : r.certificates)
            out << csv_escape(c.name) << "," << csv_escape(c.range) << "," << csv_escape(c.fitted)
                << "," << (c.pass ? "1" : "0") << "," << (c.certified ? "1" : "0") << ","
                << csv_escape(c.flags) << "\n";
    }
    {
        std::ofstream out(dir / "metadata.json");
        ordered_json j;
        j["metadata"] = r.metadata;
        j["errors"] = r.errors;
        out << j.dump(2) << "\n";
    }
}

}  // namespace mfflow
