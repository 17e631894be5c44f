#include "heavytail/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "heavytail/errors.hpp"

namespace heavytail::config {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("spec config: missing key '" + key + "'");
    try {
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("spec config: bad numeric value for '" + key + "': " + it->second);
    }
}

std::string get_or(const std::map<std::string, std::string>& kv, const std::string& key,
                   const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

void add_pair(SpecConfig& cfg, const std::string& line) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("spec config: expected key=value, got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
        throw ConfigError("spec config: empty key or value in: " + line);
    if (key == "form")
        cfg.form = value;
    else
        cfg.values[key] = value;
}

}  // namespace

std::string SpecConfig::canonical() const {
    std::ostringstream os;
    os << "form=" << form;
    for (const auto& [k, v] : values) os << ';' << k << '=' << v;
    return os.str();
}

SpecConfig parse_spec_text(const std::string& text) {
    SpecConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        add_pair(cfg, line);
    }
    if (cfg.form.empty()) throw ConfigError("spec config: missing 'form'");
    return cfg;
}

SpecConfig parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("spec config: cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

SpecConfig parse_spec_inline(const std::string& line) {
    std::string text = line;
    for (char& c : text)
        if (c == ';') c = '\n';
    return parse_spec_text(text);
}

density::SlowlyVarying make_slowly_varying(const std::string& descriptor) {
    const auto colon = descriptor.find(':');
    const std::string kind = colon == std::string::npos ? descriptor : descriptor.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
    if (kind == "const") {
        if (arg.empty()) throw ConfigError("slowly varying: const needs a value, e.g. const:1.0");
        return density::SlowlyVarying::constant(std::stod(arg));
    }
    if (kind == "logpow") {
        if (arg.empty()) throw ConfigError("slowly varying: logpow needs a power, e.g. logpow:1");
        return density::SlowlyVarying::log_power(std::stoi(arg));
    }
    if (kind == "ramp") {
        const auto second = arg.find(':');
        if (second == std::string::npos)
            throw ConfigError("slowly varying: ramp needs two levels, e.g. ramp:1.0:0.6");
        return density::make_smooth_ramp(std::stod(arg.substr(0, second)),
                                         std::stod(arg.substr(second + 1)));
    }
    if (kind == "shifted-log") {
        const int p = arg.empty() ? 1 : std::stoi(arg);
        if (p < 1 || p > 2) throw ConfigError("slowly varying: shifted-log power must be 1 or 2");
        return density::SlowlyVarying::custom(
            "shifted-log:" + std::to_string(p),
            [p](double x) {
                const double l = std::log(M_E + x);
                return p == 1 ? l : l * l;
            },
            [p](double x) {
                const double l = std::log(M_E + x);
                return p == 1 ? 1.0 / (M_E + x) : 2.0 * l / (M_E + x);
            });
    }
    throw ConfigError("slowly varying: unknown kind '" + kind +
                      "' (expected const | logpow | ramp | shifted-log)");
}

density::DensitySpec make_spec(const SpecConfig& cfg) {
    if (cfg.form == "pareto" || cfg.form == "pareto-sym")
        return density::DensitySpec::symmetric_pareto(parse_real(cfg.values, "alpha"));
    if (cfg.form == "rv" || cfg.form == "rv-sym")
        return density::DensitySpec::symmetric_rv(
            parse_real(cfg.values, "alpha"),
            make_slowly_varying(get_or(cfg.values, "L", "const:1.0")));
    if (cfg.form == "two-sided")
        return density::DensitySpec::two_sided(
            parse_real(cfg.values, "beta"), parse_real(cfg.values, "gamma"),
            make_slowly_varying(get_or(cfg.values, "L_plus", "const:1.0")),
            make_slowly_varying(get_or(cfg.values, "L_minus", "const:1.0")));
    throw ConfigError("spec config: unknown form '" + cfg.form +
                      "' (expected pareto | rv | two-sided)");
}

}  // namespace heavytail::config
