#include "qdcascade/csvio.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qd {

std::string format12(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void CsvWriter::header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i > 0) buf += ',';
        buf += cols[i];
    }
    buf += '\n';
}

void CsvWriter::cell(const std::string& s) {
    if (row_open_) buf += ',';
    if (s.find_first_of(",\"\n") == std::string::npos) {
        buf += s;
    } else {
        buf += '"';
        for (char c : s) {
            if (c == '"') buf += '"';
            buf += c;
        }
        buf += '"';
    }
    row_open_ = true;
}

void CsvWriter::cell(double v) { cell(format12(v)); }

void CsvWriter::endrow() {
    buf += '\n';
    row_open_ = false;
}

void CsvWriter::flush() {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

void write_manifest(const std::string& path, const ModelParams& p,
                    std::uint64_t seed, const std::string& command) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);

    nlohmann::json j;
    j["tool"] = tool_version;
    j["command"] = command;
    j["seed"] = seed;
    j["generated_utc"] = stamp;
    j["config"] = resolved_config_text(p);

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open manifest file: " + path);
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace qd
