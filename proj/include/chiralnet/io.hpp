#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chiralnet {

/// Flat `key = value` configuration text. Lines are trimmed, blank lines
/// and `#` comments ignored. Later assignments override earlier ones.
/// Parse errors carry file and line diagnostics.
class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::filesystem::path& path);
    static KeyValueConfig from_string(const std::string& text,
                                      const std::string& origin = "<string>");

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& entries() const {
        return entries_;
    }

private:
    std::map<std::string, std::string> entries_;
};

struct ConfigKeyInfo {
    std::string name;
    std::string fallback;
    std::string unit;
    std::string description;
};

/// Every recognized configuration key with its default and unit; the CLI
/// help is generated from this table and unknown keys are a hard error.
const std::vector<ConfigKeyInfo>& config_key_registry();
std::string config_keys_help();
void require_known_keys(const KeyValueConfig& cfg);

/// Numeric formatting used for every file this project writes:
/// 12 significant digits, so regression diffs are meaningful.
std::string format_sig(double value, int digits = 12);
double round_sig(double value, int digits = 12);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string csv_to_string(const CsvTable& table);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

} // namespace chiralnet
