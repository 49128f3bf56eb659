#pragma once

#include <zlib.h>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace primelab {

/// CRC-32 (IEEE 802.3, as in zlib/PNG) of a byte string.
inline std::uint32_t crc32_of(std::string_view bytes) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

/// Append-only text store of exact counts:
///   limit<TAB>offsets<TAB>count<TAB>crc32
/// where crc32 covers the bytes before the last TAB. Lines that fail to parse
/// or fail the checksum are ignored (and recomputed by the caller).
class CountCache {
public:
    static constexpr const char* kFileName = "counts.cache";

    explicit CountCache(std::filesystem::path dir) : path_(std::move(dir) / kFileName) { load(); }

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

    [[nodiscard]] std::optional<std::uint64_t> lookup(std::uint64_t limit, const std::string& offsets) const {
        std::lock_guard lock(mutex_);
        auto it = entries_.find({limit, offsets});
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    /// Best effort: returns false if the record could not be persisted.
    bool append(std::uint64_t limit, const std::string& offsets, std::uint64_t count) {
        std::lock_guard lock(mutex_);
        entries_[{limit, offsets}] = count;
        std::error_code ec;
        std::filesystem::create_directories(path_.parent_path(), ec);
        std::ofstream out(path_, std::ios::app | std::ios::binary);
        if (!out) return false;
        out << format_line(limit, offsets, count) << '\n';
        out.flush();
        return static_cast<bool>(out);
    }

    [[nodiscard]] std::size_t size() const {
        std::lock_guard lock(mutex_);
        return entries_.size();
    }

    static std::string format_line(std::uint64_t limit, const std::string& offsets, std::uint64_t count) {
        std::string body = std::to_string(limit) + '\t' + offsets + '\t' + std::to_string(count);
        return body + '\t' + std::to_string(crc32_of(body));
    }

    /// Parses one line; nullopt on malformed fields or checksum mismatch.
    static std::optional<std::pair<std::pair<std::uint64_t, std::string>, std::uint64_t>>
    parse_line(std::string_view line) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto last_tab = line.rfind('\t');
        if (last_tab == std::string_view::npos) return std::nullopt;
        const auto body = line.substr(0, last_tab);
        std::uint32_t crc = 0;
        if (!parse_uint(line.substr(last_tab + 1), crc) || crc != crc32_of(body)) return std::nullopt;
        const auto t1 = body.find('\t');
        const auto t2 = body.rfind('\t');
        if (t1 == std::string_view::npos || t1 == t2) return std::nullopt;
        std::uint64_t limit = 0, count = 0;
        if (!parse_uint(body.substr(0, t1), limit) || !parse_uint(body.substr(t2 + 1), count)) return std::nullopt;
        return std::pair{std::pair{limit, std::string(body.substr(t1 + 1, t2 - t1 - 1))}, count};
    }

private:
    template <class T>
    static bool parse_uint(std::string_view s, T& out) {
        if (s.empty()) return false;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && ptr == s.data() + s.size();
    }

    void load() {
        std::ifstream in(path_, std::ios::binary);
        std::string line;
        while (std::getline(in, line)) {
            if (auto rec = parse_line(line)) entries_[rec->first] = rec->second;
        }
    }

    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::uint64_t, std::string>, std::uint64_t> entries_;
};

}  // namespace primelab
