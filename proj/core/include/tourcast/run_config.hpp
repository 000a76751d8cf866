#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tourcast::io {

/// Flat `key = value` settings. Lines starting with '#' are comments; later
/// assignments replace earlier ones.
class RunConfig {
public:
    static RunConfig parse(std::istream& in, const std::string& source = "<stream>");
    static RunConfig load(const std::filesystem::path& path);

    void set(const std::string& key, std::string value);
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Comma-separated non-negative integers; "none" or empty yields an empty list.
    std::vector<std::size_t> get_sizes(const std::string& key, const std::vector<std::size_t>& fallback) const;

    /// Sorted `key = value` lines.
    std::string dump() const;
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace tourcast::io
