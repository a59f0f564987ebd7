#include "cortex/version.hpp"

#include <cstdlib>

#ifndef CORTEX_DEFAULT_DATA_DIR
#define CORTEX_DEFAULT_DATA_DIR "data"
#endif

namespace cortex {

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("CORTEX_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return CORTEX_DEFAULT_DATA_DIR;
}

}  // namespace cortex
