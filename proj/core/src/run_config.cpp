#include "tourcast/run_config.hpp"

#include "tourcast/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tourcast::io {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_as(const std::string& key, const std::string& text) {
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ConfigError, "invalid value '" + text + "' for " + key);
    }
    return v;
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in, const std::string& source) {
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ConfigError, source + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(text.substr(0, eq));
        if (key.empty()) {
            throw Error(ErrorCode::ConfigError, source + ":" + std::to_string(line_no) + ": empty key");
        }
        cfg.set(key, trim(text.substr(eq + 1)));
    }
    return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open config " + path.string());
    }
    return parse(in, path.string());
}

void RunConfig::set(const std::string& key, std::string value) { values_[key] = std::move(value); }

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_as<double>(key, it->second);
}

long RunConfig::get_int(const std::string& key, long fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_as<long>(key, it->second);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw Error(ErrorCode::ConfigError, "invalid boolean '" + it->second + "' for " + key);
}

std::vector<std::size_t> RunConfig::get_sizes(const std::string& key, const std::vector<std::size_t>& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::size_t> out;
    if (it->second.empty() || it->second == "none") return out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_as<std::size_t>(key, trim(item)));
    }
    return out;
}

std::string RunConfig::dump() const {
    std::string out;
    for (const auto& [k, v] : values_) {
        out += k + " = " + v + "\n";
    }
    return out;
}

}  // namespace tourcast::io
