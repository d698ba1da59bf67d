#pragma once

#include <string>

namespace stimpdc {

/// Locale-independent rendering with 17 significant digits.
[[nodiscard]] std::string format_double(double value);

}  // namespace stimpdc
