#include "ergent/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <stdexcept>

namespace ergent::cli {

std::string manifest_timestamp(bool wall_clock) {
    std::time_t t = 0;
    if (wall_clock) {
        t = std::time(nullptr);
    } else if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env != nullptr && *env != '\0') {
        t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
    } else {
        return "-";
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "NA";
    if (v == 0.0) return "0";  // folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvDocument::CsvDocument(const RunManifest& m) {
    comment("command: " + m.command);
    comment("seed: " + std::to_string(m.seed));
    comment("config: " + m.config);
    comment("version: " + m.version);
    comment("timestamp: " + m.timestamp);
}

void CsvDocument::comment(const std::string& line) { text_ += "# " + line + "\n"; }

void CsvDocument::header(const std::vector<std::string>& columns) {
    columns_ = columns.size();
    row(columns);
}

void CsvDocument::row(const std::vector<std::string>& cells) {
    if (columns_ != 0 && cells.size() != columns_) throw std::logic_error("CSV row width does not match header");
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) text_ += ',';
        text_ += cells[k];
    }
    text_ += '\n';
}

}  // namespace ergent::cli
