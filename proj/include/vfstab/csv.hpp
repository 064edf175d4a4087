#pragma once

#include <string>

namespace vfstab {

/// Shortest round-trip decimal representation, independent of locale.
std::string format_number(double x);

}  // namespace vfstab
