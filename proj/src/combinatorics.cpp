#include "stimpdc/combinatorics.hpp"

#include <vector>

namespace stimpdc {

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;  // exact: result is C(n-k+i, i) here
    }
    return result;
}

BigInt factorial_ratio(std::int64_t n, std::int64_t m) {
    if (m < 0 || n < m) throw std::invalid_argument("factorial_ratio: need 0 <= m <= n");
    BigInt result = 1;
    for (std::int64_t i = m + 1; i <= n; ++i) result *= i;
    return result;
}

BigInt factorial(std::int64_t n) { return factorial_ratio(n, 0); }

BigInt count_weak_compositions(int total, int parts) {
    if (parts < 1 || total < 0) throw std::invalid_argument("count_weak_compositions: need parts >= 1, total >= 0");
    return binomial(total + parts - 1, parts - 1);
}

void for_each_weak_composition(int total, int parts, const std::function<void(std::span<const int>)>& visit,
                               std::uint64_t budget) {
    if (count_weak_compositions(total, parts) > budget)
        throw EnumerationBudgetExceeded("for_each_weak_composition: C(" + std::to_string(total + parts - 1) +
                                        "," + std::to_string(parts - 1) + ") exceeds budget " +
                                        std::to_string(budget));
    std::vector<int> q(parts, 0);
    q[0] = total;
    while (true) {
        visit(q);
        // Step to the next tuple: find the rightmost non-zero entry before the
        // last slot, move one unit right and gather the tail behind it.
        int i = parts - 2;
        while (i >= 0 && q[i] == 0) --i;
        if (i < 0) return;
        const int tail = q[parts - 1];
        q[parts - 1] = 0;
        --q[i];
        q[i + 1] = tail + 1;
    }
}

}  // namespace stimpdc
