#pragma once

// Multimode bosonic occupation states over labelled signal/idler OAM modes.
//
// States are sparse maps  configuration -> amplitude. Two amplitude types are
// supported: SurdSum (exact, sums of rational * sqrt(square-free)) and
// std::complex<double>. All operations return new states.

#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stimpdc/combinatorics.hpp"
#include "stimpdc/surd.hpp"

namespace stimpdc {

enum class Beam { signal, idler };

struct ModeLabel {
    Beam beam = Beam::signal;
    int ell = 0;

    static constexpr ModeLabel signal(int ell) { return {Beam::signal, ell}; }
    static constexpr ModeLabel idler(int ell) { return {Beam::idler, ell}; }

    /// "s+1", "i-2", ...
    [[nodiscard]] std::string to_string() const;

    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

/// The d-dimensional charge set {+-1, ..., +-ell_max}, d = 2 ell_max; l = 0 is excluded.
class ModeWindow {
public:
    explicit ModeWindow(int ell_max);
    /// Throws std::invalid_argument for odd or non-positive d.
    [[nodiscard]] static ModeWindow for_dimension(int d);

    [[nodiscard]] int ell_max() const { return ell_max_; }
    [[nodiscard]] int dimension() const { return 2 * ell_max_; }
    [[nodiscard]] bool contains(int ell) const { return ell != 0 && std::abs(ell) <= ell_max_; }
    /// Ascending: -ell_max, ..., -1, 1, ..., ell_max.
    [[nodiscard]] std::vector<int> charges() const;

private:
    int ell_max_;
};

/// Occupation numbers; only modes with a non-zero count are stored, sorted by label.
class Configuration {
public:
    using Entry = std::pair<ModeLabel, int>;

    Configuration() = default;
    Configuration(std::initializer_list<Entry> entries);

    [[nodiscard]] int count(const ModeLabel& mode) const;
    [[nodiscard]] int total(Beam beam) const;
    [[nodiscard]] Configuration with_added(const ModeLabel& mode, int k) const;
    [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
    /// Occupations restricted to one beam.
    [[nodiscard]] Configuration part(Beam beam) const;

    /// "s{+1:2,-1:1} i{-1:1}"; the vacuum prints as "s{} i{}".
    [[nodiscard]] std::string to_string() const;

    friend auto operator<=>(const Configuration&, const Configuration&) = default;
    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::vector<Entry> entries_;
};

template <typename Amp>
struct AmplitudeTraits;

template <>
struct AmplitudeTraits<SurdSum> {
    using Real = SurdSum;
    static SurdSum abs2(const SurdSum& a) { return a * a; }
    static SurdSum sqrt_integer(std::int64_t n) { return SurdSum::sqrt_of(Rational(n)); }
    /// sqrt(acc) / denominator
    static SurdSum bose_factor(const SquareRootAccumulator& acc, const BigInt& denominator) {
        return acc.sqrt() * SurdSum(Rational(BigInt(1), denominator));
    }
    static SurdSum inverse_sqrt(const SurdSum& norm2) { return norm2.inverse_sqrt(); }
    static bool is_unit(const SurdSum& x) { return x == SurdSum(1); }
    static bool is_zero(const SurdSum& a) { return a.is_zero(); }
    static SurdSum from_real(const SurdSum& x) { return x; }
    static double to_double(const SurdSum& x) { return x.to_double(); }
    static std::complex<double> to_complex(const SurdSum& a) { return {a.to_double(), 0.0}; }
    static std::string format(const SurdSum& a) { return a.to_string(); }
};

template <>
struct AmplitudeTraits<std::complex<double>> {
    using Amp = std::complex<double>;
    using Real = double;
    static constexpr double kUnitTolerance = 1e-12;
    static double abs2(const Amp& a) { return std::norm(a); }
    static Amp sqrt_integer(std::int64_t n) { return std::sqrt(static_cast<double>(n)); }
    static Amp bose_factor(const SquareRootAccumulator& acc, const BigInt& denominator) {
        return std::sqrt(static_cast<double>(acc.value())) / static_cast<double>(denominator);
    }
    static double inverse_sqrt(double norm2) {
        if (!(norm2 > 0.0)) throw std::domain_error("inverse_sqrt: non-positive norm");
        return 1.0 / std::sqrt(norm2);
    }
    static bool is_unit(double x) { return std::abs(x - 1.0) <= kUnitTolerance; }
    static bool is_zero(const Amp& a) { return a == Amp{}; }
    static Amp from_real(double x) { return x; }
    static double to_double(double x) { return x; }
    static Amp to_complex(const Amp& a) { return a; }
    static std::string format(const Amp& a);
};

template <typename Amp>
class BasicFockState {
public:
    using Traits = AmplitudeTraits<Amp>;
    using Real = typename Traits::Real;
    using TermMap = std::map<Configuration, Amp>;

    BasicFockState() = default;

    [[nodiscard]] static BasicFockState vacuum() {
        BasicFockState s;
        s.terms_.emplace(Configuration{}, Amp(1));
        return s;
    }

    /// |n> in a single mode (n = 0 gives the vacuum).
    [[nodiscard]] static BasicFockState number_state(const ModeLabel& mode, int n) {
        if (n < 0) throw std::invalid_argument("number_state: negative occupation");
        BasicFockState s;
        s.terms_.emplace(Configuration{}.with_added(mode, n), Amp(1));
        return s;
    }

    /// Adds amp to the configuration's amplitude; exact cancellations drop the term.
    void add(const Configuration& config, const Amp& amp) {
        if (Traits::is_zero(amp)) return;
        auto [it, inserted] = terms_.emplace(config, amp);
        if (inserted) return;
        it->second += amp;
        if (Traits::is_zero(it->second)) terms_.erase(it);
    }

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool empty() const { return terms_.empty(); }

    [[nodiscard]] Real norm_squared() const {
        Real sum{};
        for (const auto& [config, amp] : terms_) sum += Traits::abs2(amp);
        return sum;
    }

    [[nodiscard]] bool is_normalized() const { return Traits::is_unit(norm_squared()); }

private:
    TermMap terms_;
};

using ExactFockState = BasicFockState<SurdSum>;
using FloatFockState = BasicFockState<std::complex<double>>;

/// Coefficient-weighted a^dag_signal a^dag_idler term of a pair-creation operator.
template <typename Amp>
struct PairTerm {
    ModeLabel signal;
    ModeLabel idler;
    Amp coefficient;
};

/// Charge l of the signal photon -> coefficient of a^dag_{l,s} a^dag_{-l,i}.
template <typename Amp>
using Coupling = std::map<int, Amp>;

template <typename Amp>
[[nodiscard]] BasicFockState<Amp> create(const BasicFockState<Amp>& state, const ModeLabel& mode) {
    using Traits = AmplitudeTraits<Amp>;
    BasicFockState<Amp> out;
    for (const auto& [config, amp] : state.terms()) {
        const int n = config.count(mode);
        out.add(config.with_added(mode, 1), amp * Traits::sqrt_integer(n + 1));
    }
    return out;
}

template <typename Amp>
[[nodiscard]] BasicFockState<Amp> annihilate(const BasicFockState<Amp>& state, const ModeLabel& mode) {
    using Traits = AmplitudeTraits<Amp>;
    BasicFockState<Amp> out;
    for (const auto& [config, amp] : state.terms()) {
        const int n = config.count(mode);
        if (n == 0) continue;
        out.add(config.with_added(mode, -1), amp * Traits::sqrt_integer(n));
    }
    return out;
}

/// Throws std::domain_error for the zero vector; ExactArithmeticError when the
/// exact norm is irrational.
template <typename Amp>
[[nodiscard]] BasicFockState<Amp> normalize(const BasicFockState<Amp>& state) {
    using Traits = AmplitudeTraits<Amp>;
    if (state.empty()) throw std::domain_error("normalize: zero state");
    const Amp scale = Traits::from_real(Traits::inverse_sqrt(state.norm_squared()));
    BasicFockState<Amp> out;
    for (const auto& [config, amp] : state.terms()) out.add(config, amp * scale);
    return out;
}

/// <a^dag a> for a normalised state.
template <typename Amp>
[[nodiscard]] typename AmplitudeTraits<Amp>::Real number_expectation(const BasicFockState<Amp>& state,
                                                                     const ModeLabel& mode) {
    using Traits = AmplitudeTraits<Amp>;
    if (!state.is_normalized()) throw std::invalid_argument("number_expectation: state is not normalised");
    typename Traits::Real sum{};
    for (const auto& [config, amp] : state.terms()) {
        const int n = config.count(mode);
        if (n != 0) sum += Traits::abs2(amp) * typename Traits::Real(n);
    }
    return sum;
}

/// Target-photon fraction <a^dag_t a_t> / m of a state carrying m clones.
template <typename Amp>
[[nodiscard]] typename AmplitudeTraits<Amp>::Real reduced_single_clone_fidelity(const BasicFockState<Amp>& state,
                                                                                const ModeLabel& target, int m) {
    if (m <= 0) throw std::invalid_argument("reduced_single_clone_fidelity: clone count must be positive");
    auto n = number_expectation(state, target);
    if constexpr (std::is_same_v<Amp, SurdSum>)
        return n * SurdSum(Rational(1, m));
    else
        return n / m;
}

/// Applies sum_j c_j a^dag_{s_j} a^dag_{i_j} once; the result is not normalised.
template <typename Amp>
[[nodiscard]] BasicFockState<Amp> apply_pair_operator(const BasicFockState<Amp>& state,
                                                      const std::vector<PairTerm<Amp>>& terms) {
    BasicFockState<Amp> out;
    for (const auto& term : terms) {
        const auto created = create(create(state, term.signal), term.idler);
        for (const auto& [config, amp] : created.terms()) out.add(config, amp * term.coefficient);
    }
    return out;
}

/// Uniform (flat-spectrum) coupling over a window.
template <typename Amp>
[[nodiscard]] Coupling<Amp> uniform_coupling(const ModeWindow& window) {
    Coupling<Amp> c;
    for (int ell : window.charges()) c.emplace(ell, Amp(1));
    return c;
}

/// The pair-creation operator sum_l c_l a^dag_{l,s} a^dag_{-l,i} as PairTerms.
template <typename Amp>
[[nodiscard]] std::vector<PairTerm<Amp>> pair_operator(const Coupling<Amp>& coupling) {
    std::vector<PairTerm<Amp>> terms;
    for (const auto& [ell, c] : coupling) terms.push_back({ModeLabel::signal(ell), ModeLabel::idler(-ell), c});
    return terms;
}

namespace detail {

template <typename Amp>
void check_window(const BasicFockState<Amp>& seed, const ModeWindow& window, const Coupling<Amp>& coupling) {
    for (int ell : window.charges()) {
        if (!coupling.contains(ell))
            throw std::invalid_argument("apply_downconversion_power: coupling lacks charge " + std::to_string(ell));
        if (!(coupling.at(ell) == coupling.at(-ell)))
            throw std::invalid_argument("apply_downconversion_power: coupling must be symmetric under l -> -l");
    }
    for (const auto& [ell, c] : coupling)
        if (!window.contains(ell))
            throw std::invalid_argument("apply_downconversion_power: coupling charge " + std::to_string(ell) +
                                        " outside the mode window");
    for (const auto& [config, amp] : seed.terms())
        for (const auto& [mode, n] : config.entries())
            if (!window.contains(mode.ell))
                throw std::invalid_argument("apply_downconversion_power: truncation window (d = " +
                                            std::to_string(window.dimension()) + ") too small for seed mode " +
                                            mode.to_string());
}

}  // namespace detail

/// (1/q!) (sum_l c_l a^dag_{l,s} a^dag_{-l,i})^q |seed>, expanded over weak
/// compositions of q and normalised. Each composition (q_l) contributes
/// prod_l c_l^{q_l} / q_l!  times the Bose factors of the created photons.
template <typename Amp>
[[nodiscard]] BasicFockState<Amp> apply_downconversion_power(const BasicFockState<Amp>& seed, int q,
                                                             const ModeWindow& window,
                                                             const Coupling<Amp>& coupling,
                                                             std::uint64_t budget = 10'000'000) {
    using Traits = AmplitudeTraits<Amp>;
    if (q < 0) throw std::invalid_argument("apply_downconversion_power: q must be >= 0");
    detail::check_window(seed, window, coupling);

    const std::vector<int> charges = window.charges();
    std::vector<Amp> coefficients;
    for (int ell : charges) coefficients.push_back(coupling.at(ell));

    BasicFockState<Amp> out;
    for (const auto& [config, seed_amp] : seed.terms()) {
        for_each_weak_composition(
            q, static_cast<int>(charges.size()),
            [&](std::span<const int> counts) {
                Configuration next = config;
                Amp amp = seed_amp;
                SquareRootAccumulator radicand;
                BigInt denominator = 1;
                for (std::size_t j = 0; j < counts.size(); ++j) {
                    const int k = counts[j];
                    if (k == 0) continue;
                    for (int i = 0; i < k; ++i) amp *= coefficients[j];
                    denominator *= factorial(k);
                    const auto s = ModeLabel::signal(charges[j]);
                    const auto idl = ModeLabel::idler(-charges[j]);
                    const int ns = next.count(s);
                    radicand.multiply_factorial_ratio(ns + k, ns);
                    next = next.with_added(s, k);
                    const int ni = next.count(idl);
                    radicand.multiply_factorial_ratio(ni + k, ni);
                    next = next.with_added(idl, k);
                }
                out.add(next, amp * Traits::bose_factor(radicand, denominator));
            },
            budget);
    }
    return normalize(out);
}

template <typename Amp>
[[nodiscard]] BasicFockState<Amp> apply_downconversion_power(const BasicFockState<Amp>& seed, int q,
                                                             const ModeWindow& window) {
    return apply_downconversion_power(seed, q, window, uniform_coupling<Amp>(window));
}

/// True when, in every term, the signal photons added on top of `seed`
/// sit in the charge-conjugates of the idler photons: n_s(l) - seed(l) = n_i(-l).
template <typename Amp>
[[nodiscard]] bool satisfies_pair_conjugation(const BasicFockState<Amp>& state, const Configuration& seed) {
    for (const auto& [config, amp] : state.terms()) {
        for (const auto& [mode, n] : config.entries()) {
            if (mode.beam == Beam::idler) {
                if (config.count(ModeLabel::signal(-mode.ell)) - seed.count(ModeLabel::signal(-mode.ell)) != n)
                    return false;
            } else if (n - seed.count(mode) != config.count(ModeLabel::idler(-mode.ell))) {
                return false;
            }
        }
    }
    return true;
}

/// Terms whose signal photons all occupy `target` (the stimulated part).
template <typename Amp>
[[nodiscard]] BasicFockState<Amp> stimulated_component(const BasicFockState<Amp>& state, const ModeLabel& target) {
    BasicFockState<Amp> out;
    for (const auto& [config, amp] : state.terms())
        if (config.total(Beam::signal) == config.count(target)) out.add(config, amp);
    return out;
}

[[nodiscard]] FloatFockState to_float(const ExactFockState& state);

/// Schmidt coefficients (descending, squared, summing to 1) of the signal|idler bipartition.
[[nodiscard]] std::vector<double> schmidt_probabilities(const FloatFockState& state);

/// Von Neumann entropy (nats) of the signal reduced state.
[[nodiscard]] double entanglement_entropy(const FloatFockState& state);

}  // namespace stimpdc
