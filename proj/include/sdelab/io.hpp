#pragma once

// CSV / JSON emission.  Floats are serialized with 17 significant digits
// so artifacts round-trip bit-stably.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace sdelab {

std::string format_double(double v); // %.17g

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void header(const std::vector<std::string>& names);
    void field(double v);
    void field(long long v);
    void field(const std::string& v);
    void end_row();
    void close();

private:
    std::ofstream out_;
    bool row_started_ = false;
    void sep();
};

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// Reads a whole file (byte-identity checks in tests and acceptance).
std::string slurp(const std::string& path);

void ensure_directory(const std::string& path);

} // namespace sdelab
