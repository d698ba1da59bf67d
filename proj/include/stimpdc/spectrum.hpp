#pragma once

// Strategies for flattening the OAM spectrum of down-conversion: the MLG
// basis, Procrustean (post-selection) filtering and pump shaping.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stimpdc/overlap.hpp"

namespace stimpdc {

struct FilterResult {
    SpectrumTable flat;               // retained window, renormalised
    double retained_level = 0.0;      // common raw weight kept per mode (the window minimum)
    double success_probability = 0.0; // d * min / sum of raw window weights
};

/// Equalises the cloning window 1 <= |l| <= ell_max down to its smallest raw
/// weight. Throws std::invalid_argument if the window is empty or a row is missing.
[[nodiscard]] FilterResult procrustean_filter(const SpectrumTable& spectrum, int ell_max);

/// min / max of the table's weights; 1 means perfectly flat.
[[nodiscard]] double flatness_metric(const SpectrumTable& spectrum);

struct PumpComponent {
    ModeSpec mode;
    Complex weight{1.0, 0.0};
};

/// Coherent spectrum |sum_c w_c N(U_c; S, I)|^2 over all signal/idler pairs
/// with |l_s|, |l_i| <= ell_max. Pairs no component can reach are omitted.
/// The basis waist defaults to the first component's waist.
[[nodiscard]] SpectrumTable pump_shaping_spectrum(const std::vector<PumpComponent>& pump, int ell_max,
                                                  std::optional<double> basis_waist = std::nullopt,
                                                  double tol = 1e-12);

struct BalancedPump {
    double ratio = 0.0;  // t in (first + t second) / norm
    std::vector<PumpComponent> components;
};

/// Finds t in [lo, hi] by bisection so that the pump (first + t second)
/// gives equal weights to the two signal/idler pairs.
[[nodiscard]] BalancedPump balance_two_component_pump(const ModeSpec& first, const ModeSpec& second,
                                                      std::pair<int, int> pair_a, std::pair<int, int> pair_b,
                                                      double lo, double hi, double tol = 1e-12);

/// Reason an MLG signal/idler pair does not multiply into another MLG mode
/// (both charges must be >= 0, or one of them zero); nullopt when allowed.
[[nodiscard]] std::optional<std::string> mlg_pairing_violation(const ModeSpec& signal, const ModeSpec& idler);

enum class FlatteningKind { mlg_basis, procrustean_filter, pump_shaping_hook };

struct FlatteningStrategy {
    FlatteningKind kind = FlatteningKind::procrustean_filter;
    int ell_max = 2;
    double waist = 1.0;
    int ring_charge = 1;                // mlg_basis
    std::vector<PumpComponent> pump;    // pump_shaping_hook
};

struct FlatteningReport {
    SpectrumTable spectrum;
    double flatness = 0.0;
    double success_probability = 1.0;
    std::vector<std::string> notes;
};

[[nodiscard]] FlatteningReport evaluate_strategy(const FlatteningStrategy& strategy);

}  // namespace stimpdc
