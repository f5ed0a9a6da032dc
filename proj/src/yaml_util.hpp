#pragma once

// Helpers for strict YAML decoding: unknown keys and wrong types become
// ParseErrors carrying the document position.

#include "dapps/errors.hpp"
#include "dapps/kinds.hpp"

#include <yaml-cpp/yaml.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dapps::yaml {

[[noreturn]] inline void fail(const YAML::Node& at, const std::string& field, const std::string& what) {
    const auto mark = at.Mark();
    if (mark.is_null()) throw ParseError(field, what);
    throw ParseError(field, what, mark.line + 1, mark.column + 1);
}

inline void expect_map(const YAML::Node& n, const std::string& path) {
    if (!n.IsMap()) fail(n, path, "expected a mapping");
}

inline void expect_seq(const YAML::Node& n, const std::string& path) {
    if (!n.IsSequence()) fail(n, path, "expected a sequence");
}

inline void check_keys(const YAML::Node& n, const std::string& path,
                       std::initializer_list<std::string_view> allowed) {
    expect_map(n, path);
    for (const auto& kv : n) {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (auto a : allowed) ok = ok || a == key;
        if (!ok) fail(kv.first, path + "." + key, "unknown key");
    }
}

inline YAML::Node require(const YAML::Node& n, const std::string& path, const char* key) {
    auto v = n[key];
    if (!v) fail(n, path + "." + key, "missing required key");
    return v;
}

template <typename T>
T scalar(const YAML::Node& v, const std::string& path) {
    if (!v.IsScalar()) fail(v, path, "expected a scalar");
    try {
        return v.as<T>();
    } catch (const YAML::Exception&) {
        fail(v, path, "invalid value '" + v.Scalar() + "'");
    }
}

template <typename T>
T get(const YAML::Node& n, const std::string& path, const char* key) {
    return scalar<T>(require(n, path, key), path + "." + key);
}

template <typename T>
T get_or(const YAML::Node& n, const std::string& path, const char* key, T fallback) {
    auto v = n[key];
    if (!v) return fallback;
    return scalar<T>(v, path + "." + key);
}

template <typename E, typename Parse>
E enum_value(const YAML::Node& v, const std::string& path, Parse parse) {
    auto s = scalar<std::string>(v, path);
    auto e = parse(s);
    if (!e) fail(v, path, "unknown value '" + s + "'");
    return *e;
}

inline NodeKind node_kind(const YAML::Node& v, const std::string& path) {
    return enum_value<NodeKind>(v, path, parse_node_kind);
}
inline DataKind data_kind(const YAML::Node& v, const std::string& path) {
    return enum_value<DataKind>(v, path, parse_data_kind);
}

inline std::vector<std::string> string_list(const YAML::Node& v, const std::string& path) {
    expect_seq(v, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(scalar<std::string>(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::string item(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

} // namespace dapps::yaml
