#include "stimpdc/cloning.hpp"

#include <cmath>
#include <stdexcept>

#include "stimpdc/format.hpp"

namespace stimpdc {

void CloningScenario::validate() const {
    if (n_initial < 1) throw std::invalid_argument("CloningScenario: N must be >= 1");
    if (m_final < n_initial) throw std::invalid_argument("CloningScenario: M must be >= N");
    if (dimension < 2) throw std::invalid_argument("CloningScenario: d must be >= 2");
}

std::string CloningScenario::to_string() const {
    return "N=" + std::to_string(n_initial) + " M=" + std::to_string(m_final) + " d=" + std::to_string(dimension);
}

Rational optimal_fidelity(const CloningScenario& s) {
    s.validate();
    const BigInt n = s.n_initial;
    const BigInt m = s.m_final;
    const BigInt d = s.dimension;
    return Rational(m - n + n * (m + d), m * (n + d));
}

std::vector<BigInt> counting_weights(int n, int q, int d) {
    if (n < 0 || q < 0 || d < 2) throw std::invalid_argument("counting_weights: need n, q >= 0 and d >= 2");
    std::vector<BigInt> w;
    w.reserve(static_cast<std::size_t>(q) + 1);
    for (int k = 0; k <= q; ++k) w.push_back(binomial(n + q - k, n) * binomial(d + k - 2, k));
    return w;
}

Rational counting_fidelity(const CloningScenario& s) {
    s.validate();
    const int n = s.n_initial;
    const int q = s.created();
    const auto w = counting_weights(n, q, s.dimension);
    BigInt numerator = 0;
    BigInt denominator = 0;
    for (int k = 0; k <= q; ++k) {
        numerator += w[k] * (n + q - k);
        denominator += w[k];
    }
    return Rational(numerator, denominator * s.m_final);
}

Rational EnumerationResult::fidelity(int m) const {
    if (m <= 0 || total == 0) throw std::invalid_argument("EnumerationResult::fidelity: empty enumeration");
    return Rational(weighted_target_sum, total * m);
}

EnumerationResult brute_force_enumeration(const CloningScenario& s, std::uint64_t budget) {
    s.validate();
    const int n = s.n_initial;
    const int q = s.created();
    EnumerationResult result;
    result.per_k.assign(static_cast<std::size_t>(q) + 1, BigInt(0));
    for_each_weak_composition(
        q, s.dimension,
        [&](std::span<const int> bins) {
            const int in_target = bins[0];
            // Ways to add in_target indistinguishable balls to a bin already holding n.
            const BigInt weight = binomial(n + in_target, n);
            result.total += weight;
            result.weighted_target_sum += weight * (n + in_target);
            result.per_k[static_cast<std::size_t>(q - in_target)] += weight;
            ++result.compositions;
        },
        budget);
    return result;
}

StateFidelity state_fidelity(const CloningScenario& s, std::uint64_t exact_budget) {
    s.validate();
    const auto window = ModeWindow::for_dimension(s.dimension);
    if (s.target.beam != Beam::signal || !window.contains(s.target.ell))
        throw std::invalid_argument("state_fidelity: target " + s.target.to_string() + " not a signal mode of the d = " +
                                    std::to_string(s.dimension) + " window");
    const int q = s.created();
    const Configuration seed_config = Configuration{}.with_added(s.target, s.n_initial);

    StateFidelity out;
    if (count_weak_compositions(q, s.dimension) <= exact_budget) {
        const auto seed = ExactFockState::number_state(s.target, s.n_initial);
        const auto state = apply_downconversion_power(seed, q, window);
        out.exact = reduced_single_clone_fidelity(state, s.target, s.m_final).rational_value();
        out.value = static_cast<double>(*out.exact);
        out.normalized = state.is_normalized();
        out.pair_conjugate = satisfies_pair_conjugation(state, seed_config);
        out.terms = state.size();
    } else {
        const auto seed = FloatFockState::number_state(s.target, s.n_initial);
        const auto state = apply_downconversion_power(seed, q, window);
        out.value = reduced_single_clone_fidelity(state, s.target, s.m_final);
        out.normalized = state.is_normalized();
        out.pair_conjugate = satisfies_pair_conjugation(state, seed_config);
        out.terms = state.size();
    }
    return out;
}

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::exact_equal: return "exact-equal";
        case Verdict::float_equal: return "float-equal";
        case Verdict::mismatch: return "mismatch";
    }
    return "mismatch";
}

ComparisonRecord state_vs_formula_report(const CloningScenario& s, std::uint64_t exact_budget) {
    ComparisonRecord record;
    record.scenario = s;
    record.state = state_fidelity(s, exact_budget);
    record.counting = counting_fidelity(s);
    record.formula = optimal_fidelity(s);

    if (record.state.exact) {
        const bool equal = *record.state.exact == record.counting && record.counting == record.formula;
        record.verdict = equal ? Verdict::exact_equal : Verdict::mismatch;
    } else {
        record.warning = "state exceeds exact budget; float comparison at tolerance 1e-12";
        const double formula = static_cast<double>(record.formula);
        const bool equal = record.counting == record.formula &&
                           std::abs(record.state.value - formula) <= kFloatFidelityTolerance;
        record.verdict = equal ? Verdict::float_equal : Verdict::mismatch;
    }
    return record;
}

std::vector<ComparisonRecord> run_grid(int n_max, int m_max, const std::vector<int>& dimensions,
                                       std::uint64_t exact_budget) {
    std::vector<ComparisonRecord> records;
    for (int n = 1; n <= n_max; ++n)
        for (int m = n; m <= m_max; ++m)
            for (int d : dimensions) records.push_back(state_vs_formula_report({n, m, d}, exact_budget));
    return records;
}

std::string rational_string(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace stimpdc
