#include "stimpdc/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace stimpdc {

std::string format_double(double value) {
    if (value == 0.0) return "0";  // also folds -0
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buffer{};
    auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                   std::chars_format::general, 17);
    return std::string(buffer.data(), end);
}

}  // namespace stimpdc
