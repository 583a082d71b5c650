#pragma once

#include <string>

#include "maxvar/radial_core.hpp"

namespace maxvar {

/// {"knots": [[t, F], ...]}
RadialProfile parse_profile_json(const std::string& text);
/// Two columns t, F separated by a comma or whitespace. A non-numeric first
/// line is taken as a header; '#' starts a comment.
RadialProfile parse_profile_csv(const std::string& text);
/// Chooses the parser from the extension (.json, otherwise CSV).
RadialProfile read_profile(const std::string& path);

std::string profile_to_json(const RadialProfile& profile);

}  // namespace maxvar
