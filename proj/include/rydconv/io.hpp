#pragma once

#include "rydconv/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

// CSV and manifest emission. Doubles are printed with %.17g so re-reading
// round-trips exactly and repeated runs are byte-identical.

namespace rydconv {

std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    void add_row(std::vector<std::string> cells);
    std::string to_string() const; // RFC-4180-style, \n line endings
};

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

void write_file(const std::string& path, const std::string& data, bool force);
std::string read_file(const std::string& path);

struct OutputRecord {
    std::string path;
    std::uint64_t bytes;
    std::string fnv1a;
};

struct RunManifest {
    std::string scenario;
    std::uint64_t seed = 0;
    ConfigMap config;
    std::vector<OutputRecord> outputs;
    std::vector<std::pair<std::string, std::string>> annotations;
    double duration_ms = 0.0;
    std::string tool_version;

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

} // namespace rydconv
