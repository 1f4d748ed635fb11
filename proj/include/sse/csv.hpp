#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace sse {

// Round-trip safe decimal rendering (17 significant digits).
std::string format_g17(double value);

// Minimal CSV emitter: '#'-prefixed metadata lines, one header row, then
// data rows. Numbers are printed with format_g17 so reruns are byte-stable.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);

    void metadata(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);

private:
    std::ofstream out_;
};

}  // namespace sse
