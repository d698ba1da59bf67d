#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace stimpdc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(n, k) by the multiplicative formula; zero outside 0 <= k <= n.
[[nodiscard]] BigInt binomial(std::int64_t n, std::int64_t k);

/// n! / m! for 0 <= m <= n (rising product m+1 ... n).
[[nodiscard]] BigInt factorial_ratio(std::int64_t n, std::int64_t m);

[[nodiscard]] BigInt factorial(std::int64_t n);

/// Number of weak compositions of `total` into `parts` parts, C(total+parts-1, parts-1).
[[nodiscard]] BigInt count_weak_compositions(int total, int parts);

/// Raised when an enumeration would exceed its budget.
class EnumerationBudgetExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Calls visit(parts) for every (q_1, ..., q_d) >= 0 with sum `total`, in
/// lexicographically decreasing order of the tuple. Throws
/// EnumerationBudgetExceeded before starting if the count exceeds `budget`.
void for_each_weak_composition(int total, int parts, const std::function<void(std::span<const int>)>& visit,
                               std::uint64_t budget = 10'000'000);

}  // namespace stimpdc
