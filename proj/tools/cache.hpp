#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "json.hpp"

// On-disk result cache: one JSON file per key, written atomically via a
// temporary file and rename. Values are stored as hex-encoded IEEE doubles so
// the round-trip is bit-exact.
namespace rtqcli {

inline std::string hex_of_double(double v) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(bits));
    return buf;
}

inline double double_of_hex(const std::string& s) {
    uint64_t bits = std::stoull(s, nullptr, 16);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

class ResultCache {
public:
    explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}

    bool enabled() const { return !dir_.empty(); }

    std::optional<nlohmann::ordered_json> lookup(const std::string& key) const {
        if (!enabled()) return std::nullopt;
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        nlohmann::ordered_json j;
        try {
            in >> j;
        } catch (const std::exception&) {
            return std::nullopt;
        }
        if (j.value("key", "") != key) return std::nullopt;
        return j;
    }

    void store(const std::string& key, nlohmann::ordered_json payload) const {
        if (!enabled()) return;
        std::filesystem::create_directories(dir_);
        payload["key"] = key;
        std::string final_path = path_for(key);
        std::string tmp_path = final_path + ".tmp";
        {
            std::ofstream out(tmp_path, std::ios::trunc);
            out << payload.dump(2) << "\n";
        }
        std::filesystem::rename(tmp_path, final_path);
    }

private:
    std::string path_for(const std::string& key) const {
        // FNV-1a over the key keeps filenames short and shell-safe.
        uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : key) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return (std::filesystem::path(dir_) / (std::string(buf) + ".json")).string();
    }

    std::string dir_;
};

} // namespace rtqcli
