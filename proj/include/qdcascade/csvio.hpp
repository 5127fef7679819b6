#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qdcascade/config.hpp"

namespace qd {

inline constexpr const char* tool_version = "qd-cascade 1.0.0";

// Shortest-round-trip-style formatting at 12 significant digits; locale-free.
std::string format12(double v);

struct CsvWriter {
    std::string path;
    std::string buf;
    void header(const std::vector<std::string>& cols);
    void cell(const std::string& s);
    void cell(double v);
    void endrow();
    void flush();  // writes the file; throws on I/O failure
private:
    bool row_open_ = false;
};

// Sidecar describing how an output set was produced: tool version, seed,
// command line, timestamps, and the fully-resolved configuration.  Not
// byte-stable across runs (timestamps); the CSVs themselves are.
void write_manifest(const std::string& path, const ModelParams& p,
                    std::uint64_t seed, const std::string& command);

}  // namespace qd
