#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercrit {

/// Raised for malformed or incomplete run configs (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key = value file with dotted sections and '#' comments. Keys keep
/// their first-seen order so a resolved config round-trips byte-for-byte.
class Config {
public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback);
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback);
    std::uint64_t get_u64(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback);
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key, std::vector<double> fallback);

    /// Throws ConfigError naming the key and the mode that needs it.
    void require(const std::string& key, const std::string& mode) const;

    /// Keys actually read so far (getters with fallbacks record defaults),
    /// serialized in first-touch order; parse(serialize()) reproduces resolved
    /// values exactly.
    std::string serialize_resolved() const;

    const std::vector<std::string>& keys() const { return order_; }

private:
    std::string lookup(const std::string& key) const;
    void record(const std::string& key, const std::string& value) const;

    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
    mutable std::map<std::string, std::string> resolved_;
    mutable std::vector<std::string> resolved_order_;
};

}  // namespace supercrit
