#pragma once

// include after doctest.h: uses REQUIRE_MESSAGE

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(SCRIBEMETER_FIXTURE_DIR) + "/" + name;
}

inline std::string data_path(const std::string& name) {
    return std::string(SCRIBEMETER_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), ("cannot open " + path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// scoped temp file; removed on destruction
struct temp_file {
    std::filesystem::path path;
    explicit temp_file(const std::string& contents, const std::string& suffix = ".tmp") {
        static std::atomic<unsigned> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("scribemeter_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + suffix);
        std::ofstream out(path, std::ios::binary);
        out << contents;
    }
    ~temp_file() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
    std::string str() const { return path.string(); }
};

}  // namespace testutil
