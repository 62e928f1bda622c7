#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "decc/curve.hpp"

namespace testutil {

inline std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? v : fallback;
}

inline std::filesystem::path data_dir() {
    return env_or("DECC_DATA", "data");
}

inline std::filesystem::path test_data_dir() {
    return env_or("DECC_TEST_DATA", "tests/data");
}

inline decc::CurveParams tiny_curve() {
    return decc::load_curve_file(data_dir() / "curves" / "tiny17.curve");
}

inline decc::CurveParams secp_curve() {
    return decc::load_curve_file(data_dir() / "curves" / "secp256k1.curve");
}

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::string tmpl =
            (std::filesystem::temp_directory_path() / "decc-test-XXXXXX")
                .string();
        if (!mkdtemp(tmpl.data()))
            throw std::runtime_error("mkdtemp failed");
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const {
        return path_ / name;
    }

private:
    std::filesystem::path path_;
};

struct CmdResult {
    int code = -1;
    std::string output;  // stdout and stderr combined
};

inline CmdResult run_cmd(const std::string& cmd) {
    CmdResult result;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
    int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

inline std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

inline void write_text_file(const std::filesystem::path& p,
                            const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

// Deterministic pseudo-random bases/bytes for property tests.
inline std::string random_bases(std::mt19937_64& gen, size_t count) {
    static const char bases[4] = {'A', 'C', 'G', 'T'};
    std::string out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) out.push_back(bases[gen() & 3]);
    return out;
}

inline std::vector<uint8_t> random_bytes(std::mt19937_64& gen, size_t count) {
    std::vector<uint8_t> out(count);
    for (auto& b : out) b = static_cast<uint8_t>(gen());
    return out;
}

}  // namespace testutil
