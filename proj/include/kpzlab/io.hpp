// CSV and JSON emission. CSV is RFC-4180-style: header row mandatory,
// '.' decimal separator, no locale dependence.

#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace kpzlab {

using json = nlohmann::json;

inline std::string format_double(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << v;
    return os.str();
}

struct CsvWriter {
    explicit CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os) {
        for (std::size_t i = 0; i < header.size(); ++i)
            os_ << (i ? "," : "") << header[i];
        os_ << "\n";
        cols_ = header.size();
    }

    void row(const std::vector<double>& vals) {
        if (vals.size() != cols_) throw std::invalid_argument("CsvWriter: column count mismatch");
        for (std::size_t i = 0; i < vals.size(); ++i)
            os_ << (i ? "," : "") << format_double(vals[i]);
        os_ << "\n";
    }

private:
    std::ostream& os_;
    std::size_t cols_;
};

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::ios_base::failure("write failed: " + path);
}

inline void write_json_file(const std::string& path, const json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

} // namespace kpzlab
