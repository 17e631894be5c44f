#ifndef HEAVYTAIL_MANIFEST_HPP
#define HEAVYTAIL_MANIFEST_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace heavytail::config {

inline constexpr const char* kToolVersion = "0.1.0";

/// Run description embedded in every CSV output as '#'-prefixed header lines.
/// A run can be reproduced from the manifest alone; the wall_clock_s entry is
/// informational and excluded from reproducibility comparisons.
class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);
    const std::string* find(const std::string& key) const;

    void write(std::ostream& os) const;

    /// Reads the '#' header from a CSV produced by write(); stops at the
    /// first non-comment line.
    static Manifest parse_file(const std::string& path);

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Writes one CSV numeric cell with 17 significant digits (lossless
/// double round-trip), locale-independent.
std::string format_cell(double v);

}  // namespace heavytail::config

#endif
