#pragma once

// Optimal N -> M cloning of d-dimensional OAM qudits by stimulated
// down-conversion: the universal bound, the balls-into-bins counting sum and a
// brute-force enumeration of where the q = M - N created signal photons land.

#include <optional>
#include <string>
#include <vector>

#include "stimpdc/combinatorics.hpp"
#include "stimpdc/fock.hpp"

namespace stimpdc {

struct CloningScenario {
    int n_initial = 1;  // N
    int m_final = 2;    // M
    int dimension = 2;  // d
    ModeLabel target = ModeLabel::signal(1);

    [[nodiscard]] int created() const { return m_final - n_initial; }  // q
    /// Requires M >= N >= 1 and d >= 2.
    void validate() const;
    [[nodiscard]] std::string to_string() const;
};

/// (M - N + N (M + d)) / (M (N + d)).
[[nodiscard]] Rational optimal_fidelity(const CloningScenario& scenario);

/// Per-k multiplicities C(n + q - k, n) C(d + k - 2, k), k = 0..q, where k
/// created photons land outside the target mode.
[[nodiscard]] std::vector<BigInt> counting_weights(int n, int q, int d);

/// sum_k w_k (n + q - k) / (m sum_k w_k) with the counting weights.
[[nodiscard]] Rational counting_fidelity(const CloningScenario& scenario);

struct EnumerationResult {
    BigInt total;                    // sum of weights C(n + q_t, n)
    BigInt weighted_target_sum;      // sum of weights * (n + q_t)
    std::vector<BigInt> per_k;       // aggregated weight for q_t = q - k
    std::uint64_t compositions = 0;  // number of weak compositions visited

    /// weighted_target_sum / (m total).
    [[nodiscard]] Rational fidelity(int m) const;
};

/// Visits every weak composition q_1 + ... + q_d = q (bin 0 is the target)
/// and weights it by C(n + q_t, n). Throws EnumerationBudgetExceeded.
[[nodiscard]] EnumerationResult brute_force_enumeration(const CloningScenario& scenario,
                                                        std::uint64_t budget = 10'000'000);

/// Builds the output state (1/q!) B^q |n_t> with flat coupling, exactly when
/// C(q + d - 1, d - 1) <= exact_budget and in floating point otherwise.
struct StateFidelity {
    std::optional<Rational> exact;  // set in exact mode
    double value = 0.0;
    bool normalized = false;
    bool pair_conjugate = false;
    std::size_t terms = 0;
};
[[nodiscard]] StateFidelity state_fidelity(const CloningScenario& scenario, std::uint64_t exact_budget = 1'000'000);

enum class Verdict { exact_equal, float_equal, mismatch };
[[nodiscard]] const char* to_string(Verdict verdict);

struct ComparisonRecord {
    CloningScenario scenario;
    StateFidelity state;
    Rational counting;
    Rational formula;
    Verdict verdict = Verdict::mismatch;
    std::string warning;  // non-empty when the state route fell back to floating point

    [[nodiscard]] bool passed() const { return verdict != Verdict::mismatch; }
};

/// Float fallback tolerance for state_vs_formula_report.
inline constexpr double kFloatFidelityTolerance = 1e-12;

/// State fidelity vs counting sum vs optimal bound. Exact equality is required
/// in exact mode; the float fallback compares within kFloatFidelityTolerance.
[[nodiscard]] ComparisonRecord state_vs_formula_report(const CloningScenario& scenario,
                                                       std::uint64_t exact_budget = 1'000'000);

/// One record per (N, M, d) with 1 <= N <= n_max, N <= M <= m_max, d in dimensions.
[[nodiscard]] std::vector<ComparisonRecord> run_grid(int n_max, int m_max, const std::vector<int>& dimensions,
                                                     std::uint64_t exact_budget = 1'000'000);

/// "p/q" (or "p" for integers).
[[nodiscard]] std::string rational_string(const Rational& value);

}  // namespace stimpdc
