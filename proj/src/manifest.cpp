#include "heavytail/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "heavytail/errors.hpp"

namespace heavytail::config {

void Manifest::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_)
        if (k == key) {
            v = value;
            return;
        }
    entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) { set(key, format_cell(value)); }

void Manifest::set(const std::string& key, long long value) { set(key, std::to_string(value)); }

const std::string* Manifest::find(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return &v;
    return nullptr;
}

void Manifest::write(std::ostream& os) const {
    for (const auto& [k, v] : entries_) os << "# " << k << " = " << v << "\n";
}

Manifest Manifest::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("manifest: cannot open " + path);
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != '#') break;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(1, eq - 1);
        std::string value = line.substr(eq + 1);
        auto strip = [](std::string& s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r");
            s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
        };
        strip(key);
        strip(value);
        if (!key.empty()) m.set(key, value);
    }
    return m;
}

std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

}  // namespace heavytail::config
