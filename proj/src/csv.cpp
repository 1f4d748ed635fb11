#include "sse/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace sse {

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path) {
    if (!out_) {
        throw std::runtime_error("cannot open output file: " + path.string());
    }
}

void CsvWriter::metadata(const std::string& key, const std::string& value) {
    out_ << "# " << key << " = " << value << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out_ << (i ? "," : "") << columns[i];
    }
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        out_ << (i ? "," : "") << format_g17(values[i]);
    }
    out_ << "\n";
}

}  // namespace sse
