#include "supercrit/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace supercrit {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        cfg.set(key, value);
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

void Config::set(const std::string& key, const std::string& value) {
    if (!values_.count(key)) order_.push_back(key);
    values_[key] = value;
}

void Config::record(const std::string& key, const std::string& value) const {
    if (!resolved_.count(key)) resolved_order_.push_back(key);
    resolved_[key] = value;
}

std::string Config::lookup(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    record(key, it->second);
    return it->second;
}

std::string Config::get_string(const std::string& key) const { return lookup(key); }

std::string Config::get_string(const std::string& key, const std::string& fallback) {
    if (!has(key)) {
        record(key, fallback);
        return fallback;
    }
    return lookup(key);
}

double Config::get_double(const std::string& key) const {
    std::string v = lookup(key);
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + " is not a number: '" + v + "'");
    }
}

double Config::get_double(const std::string& key, double fallback) {
    if (!has(key)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", fallback);
        record(key, buf);
        return fallback;
    }
    return get_double(key);
}

int Config::get_int(const std::string& key) const {
    double d = get_double(key);
    int i = int(d);
    if (double(i) != d) throw ConfigError("config key " + key + " is not an integer");
    return i;
}

int Config::get_int(const std::string& key, int fallback) {
    if (!has(key)) {
        record(key, std::to_string(fallback));
        return fallback;
    }
    return get_int(key);
}

std::uint64_t Config::get_u64(const std::string& key) const {
    std::string v = lookup(key);
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + " is not an unsigned integer: '" + v + "'");
    }
}

bool Config::get_bool(const std::string& key, bool fallback) {
    if (!has(key)) {
        record(key, fallback ? "true" : "false");
        return fallback;
    }
    std::string v = lookup(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key " + key + " is not a boolean: '" + v + "'");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    std::string v = lookup(key);
    std::vector<double> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + " has a non-numeric entry: '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("config key " + key + " has no entries");
    return out;
}

std::vector<double> Config::get_double_list(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) {
        std::ostringstream os;
        os.precision(17);
        for (std::size_t i = 0; i < fallback.size(); ++i) os << (i ? "," : "") << fallback[i];
        record(key, os.str());
        return fallback;
    }
    return get_double_list(key);
}

void Config::require(const std::string& key, const std::string& mode) const {
    if (!has(key)) throw ConfigError(key + " required for mode=" + mode);
}

std::string Config::serialize_resolved() const {
    std::ostringstream os;
    for (const std::string& k : resolved_order_) os << k << " = " << resolved_.at(k) << "\n";
    return os.str();
}

}  // namespace supercrit
