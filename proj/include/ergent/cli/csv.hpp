#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ergent::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance block written as '#' comment lines at the head of every CSV.
struct RunManifest {
    std::string command;
    std::uint64_t seed = 0;
    std::string config;
    std::string version = kToolVersion;
    std::string timestamp = "-";
};

/// SOURCE_DATE_EPOCH when set, otherwise "-"; `wall_clock` forces the
/// current UTC time.
std::string manifest_timestamp(bool wall_clock);

/// 17 significant digits, "NA" for NaN.
std::string fmt(double v);

/// Buffered CSV document; nothing reaches a stream until `str()` is taken.
class CsvDocument {
public:
    explicit CsvDocument(const RunManifest& m);

    void comment(const std::string& line);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

    const std::string& str() const noexcept { return text_; }

private:
    std::string text_;
    std::size_t columns_ = 0;
};

}  // namespace ergent::cli
