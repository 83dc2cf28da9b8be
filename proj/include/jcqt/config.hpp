#pragma once

#include <jcqt/sweep.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace jcqt {

/// Flat key=value text. '#' starts a comment; blank lines are ignored;
/// later keys overwrite earlier ones.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::istream& is);
ConfigMap load_config(const std::filesystem::path& path);

/// Recognized keys:
///   protocol, quantity, construction, mode, engine, derivative,
///   params.n, params.nbar, params.delta, tau.start, tau.stop, tau.count,
///   input.theta, input.phi, fd.h, fd.richardson
/// Keys under "output." are left for the caller. Anything else is a
/// ValidationError.
void apply_config(const ConfigMap& config, SweepSpec& spec);

}  // namespace jcqt
