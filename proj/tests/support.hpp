#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cortex/taxonomy.hpp"

namespace test {

inline std::filesystem::path data_dir() { return CORTEX_TEST_DATA_DIR; }

inline const cortex::Taxonomy& pack() {
    static const cortex::Taxonomy t = cortex::load_taxonomy(data_dir() / "cortex_taxonomy.json");
    return t;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Scratch directory removed on destruction.
struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("cortex-test-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "-" +
                std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path write(const std::string& name, const std::string& content) const {
        std::ofstream(path / name, std::ios::binary) << content;
        return path / name;
    }
};

}  // namespace test
