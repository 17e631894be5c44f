#ifndef HEAVYTAIL_CONFIG_HPP
#define HEAVYTAIL_CONFIG_HPP

#include <map>
#include <string>

#include "heavytail/density_model.hpp"

namespace heavytail::config {

/// Line-oriented key=value density spec description. Grammar (see README):
///   form    = pareto | rv | two-sided
///   alpha   = <real>              (pareto, rv)
///   beta    = <real>              (two-sided)
///   gamma   = <real>              (two-sided)
///   L       = <sv>                (rv)
///   L_plus  = <sv>                (two-sided)
///   L_minus = <sv>                (two-sided)
/// with <sv> one of
///   const:<c> | logpow:<p> | shifted-log:<p>
/// Blank lines and '#' comments are ignored.
struct SpecConfig {
    std::string form;
    std::map<std::string, std::string> values;

    std::string canonical() const;  // "form=pareto;alpha=3" style single line
};

SpecConfig parse_spec_text(const std::string& text);
SpecConfig parse_spec_file(const std::string& path);
SpecConfig parse_spec_inline(const std::string& line);  // ';'-separated form

density::SlowlyVarying make_slowly_varying(const std::string& descriptor);
density::DensitySpec make_spec(const SpecConfig& cfg);

}  // namespace heavytail::config

#endif
