#include "cortex/error.hpp"

namespace cortex {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
    std::string out = "validation failed";
    for (const auto& p : problems) {
        out += "\n  - ";
        out += p;
    }
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems)) {}

}  // namespace cortex
