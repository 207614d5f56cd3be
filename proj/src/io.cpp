#include "rydconv/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rydconv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    rows.push_back(std::move(cells));
}

void CsvTable::add_row(std::vector<std::string> cells) {
    rows.push_back(std::move(cells));
}

namespace {

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += csv_escape(header[i]);
    }
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += csv_escape(row[i]);
        }
        out += "\n";
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_file(const std::string& path, const std::string& data, bool force) {
    namespace fs = std::filesystem;
    if (!force && fs::exists(path))
        throw std::runtime_error("refusing to overwrite '" + path + "' without --force");
    if (const fs::path dir = fs::path(path).parent_path(); !dir.empty())
        fs::create_directories(dir);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("short write: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "rydconv";
    j["version"] = tool_version;
    j["scenario"] = scenario;
    j["seed"] = seed;
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    j["config_hash"] = hex64(fnv1a64(serialize_config(config)));
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const auto& o : outputs)
        outs.push_back({{"path", o.path}, {"bytes", o.bytes}, {"fnv1a", o.fnv1a}});
    j["outputs"] = outs;
    nlohmann::ordered_json ann;
    for (const auto& [k, v] : annotations) ann[k] = v;
    j["annotations"] = ann;
    j["duration_ms"] = duration_ms;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    RunManifest m;
    m.tool_version = j.value("version", "");
    m.scenario = j.at("scenario").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("config").items())
        m.config[k] = v.get<std::string>();
    if (j.contains("outputs"))
        for (const auto& o : j["outputs"])
            m.outputs.push_back({o.at("path").get<std::string>(),
                                 o.at("bytes").get<std::uint64_t>(),
                                 o.at("fnv1a").get<std::string>()});
    if (j.contains("annotations"))
        for (const auto& [k, v] : j["annotations"].items())
            m.annotations.emplace_back(k, v.get<std::string>());
    m.duration_ms = j.value("duration_ms", 0.0);
    return m;
}

} // namespace rydconv
