#pragma once

#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercrit {

/// CSV with '#' header comments and %.17g floats (the documented formatting
/// rule behind the bit-identical reproducibility guarantee).
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              const std::vector<std::string>& header_comments = {}) {
        out_.open(path);
        if (!out_) throw std::runtime_error("cannot write csv: " + path);
        for (const auto& c : header_comments) out_ << "# " << c << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }

    void row(std::span<const double> values) {
        char buf[40];
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", values[i]);
            out_ << (i ? "," : "") << buf;
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

}  // namespace supercrit
