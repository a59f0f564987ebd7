#pragma once

// Internal helpers shared by the library sources. Not installed.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "cortex/error.hpp"
#include "json.hpp"

namespace cortex::detail {

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

inline const nlohmann::json& require(const nlohmann::json& obj, std::string_view key,
                                     std::string_view where) {
    if (!obj.is_object()) throw ParseError(std::string(where) + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(std::string(where) + ": missing field '" + std::string(key) + "'");
    }
    return *it;
}

inline std::string get_string(const nlohmann::json& obj, std::string_view key,
                              std::string_view where) {
    const auto& v = require(obj, key, where);
    if (!v.is_string()) {
        throw ParseError(std::string(where) + "." + std::string(key) + ": expected a string");
    }
    return v.get<std::string>();
}

inline long long get_integer(const nlohmann::json& obj, std::string_view key,
                             std::string_view where) {
    const auto& v = require(obj, key, where);
    if (!v.is_number_integer()) {
        throw ParseError(std::string(where) + "." + std::string(key) + ": expected an integer");
    }
    return v.get<long long>();
}

inline double get_number(const nlohmann::json& obj, std::string_view key, std::string_view where) {
    const auto& v = require(obj, key, where);
    if (!v.is_number()) {
        throw ParseError(std::string(where) + "." + std::string(key) + ": expected a number");
    }
    return v.get<double>();
}

inline std::vector<std::string> get_string_list(const nlohmann::json& obj, std::string_view key,
                                                std::string_view where, bool optional = false) {
    if (optional && (!obj.is_object() || !obj.contains(key))) return {};
    const auto& v = require(obj, key, where);
    if (!v.is_array()) {
        throw ParseError(std::string(where) + "." + std::string(key) + ": expected an array");
    }
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) {
            throw ParseError(std::string(where) + "." + std::string(key) +
                             ": expected an array of strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

inline nlohmann::json parse_json(std::istream& in, std::string_view what) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
        static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF) {
        throw ParseError(std::string(what) + ": byte-order mark is not allowed");
    }
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return nlohmann::json::object();
    }
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

}  // namespace cortex::detail
