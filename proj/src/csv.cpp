#include "vfstab/csv.hpp"

#include <array>
#include <charconv>

namespace vfstab {

std::string format_number(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), res.ptr};
}

}  // namespace vfstab
