#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace diraclab {

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// CSV with '#'-prefixed header comments (the config echo) and a fixed column
// row; numeric formatting is pinned so identical runs produce identical bytes
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              const nlohmann::json& config_echo) {
        std::filesystem::create_directories(std::filesystem::path(path).parent_path());
        out_.open(path);
        if (!out_) throw std::runtime_error("cannot open " + path);
        out_ << "# config " << config_echo.dump() << "\n";
        write_row(columns);
    }

    void write_row(const std::vector<std::string>& cells) {
        for (size_t k = 0; k < cells.size(); ++k) {
            if (k) out_ << ",";
            out_ << cells[k];
        }
        out_ << "\n";
    }

    void comment(const std::string& line) { out_ << "# " << line << "\n"; }

private:
    std::ofstream out_;
};

}  // namespace diraclab
