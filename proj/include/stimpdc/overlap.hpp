#pragma once

// Product-basis expansion coefficients of the down-converted pair in the
// thin-crystal limit:
//
//   N = \int d^2 rho  conj(I_k(rho)) conj(S_m(rho)) U_p(rho)
//
// The bare inner product is returned; the 1/(2 pi)^2 Fourier prefactor is
// dropped because every downstream quantity is a ratio or a normalised state.

#include <optional>
#include <vector>

#include "stimpdc/mode_basis.hpp"

namespace stimpdc {

enum class OverlapMethod { quadrature, closed_form };

[[nodiscard]] const char* to_string(OverlapMethod method);

struct OverlapCoefficient {
    Complex value{};
    double error_estimate = 0.0;  // quadrature estimate; 0 for closed forms and exact zeros
    ModeSpec pump;
    ModeSpec signal;
    ModeSpec idler;
    OverlapMethod method = OverlapMethod::quadrature;
};

/// True when conj(idler) * conj(signal) * pump has zero net azimuthal charge.
[[nodiscard]] bool charges_cancel(const ModeSpec& pump, const ModeSpec& signal, const ModeSpec& idler);

/// Direct triple overlap, azimuthal delta analytic and radial integral adaptive.
/// Charge-mismatched inputs return an exact zero. Throws QuadratureError.
[[nodiscard]] OverlapCoefficient triple_overlap_quadrature(const ModeSpec& pump, const ModeSpec& signal,
                                                           const ModeSpec& idler, double tol = 1e-12);

/// Gaussian pump, p = 0 signal LG_{0,l} and idler LG_{0,-l}, all of waist w0:
/// (1/w0) sqrt(2/pi) (2/3)^{|l|+1}.
[[nodiscard]] OverlapCoefficient closed_form_lg_gaussian(int ell, double w0);

/// MLG signal (ring charge l, winding N_s) and idler (l, N_i) of waist w0 with a
/// Gaussian pump of waist 2 w0: (2^{|l|}/w0) sqrt(2/pi) (4/9)^{|l|+1} when
/// l N_s + l N_i = 0, otherwise exactly zero. Independent of the windings.
[[nodiscard]] OverlapCoefficient closed_form_mlg_gaussian(int ring_charge, double w0,
                                                          int signal_winding = 1,
                                                          int idler_winding = -1);

/// Closed form for the triple if one of the two known cases applies.
[[nodiscard]] std::optional<OverlapCoefficient> closed_form(const ModeSpec& pump, const ModeSpec& signal,
                                                            const ModeSpec& idler);

/// Closed form when available, quadrature otherwise.
[[nodiscard]] OverlapCoefficient overlap(const ModeSpec& pump, const ModeSpec& signal,
                                         const ModeSpec& idler, double tol = 1e-12);

/// Projects the idler field conj(S) * U_p onto each basis mode: <I_k | conj(S) U_p>.
/// The basis must not contain duplicates.
[[nodiscard]] std::vector<OverlapCoefficient> decompose_product_rule(const ModeSpec& signal,
                                                                     const ModeSpec& pump,
                                                                     const std::vector<ModeSpec>& idler_basis,
                                                                     double tol = 1e-12);

/// Probability weights P_{l_s, l_i} = |N|^2 of signal/idler charge pairs.
struct SpectrumTable {
    struct Row {
        int ell_signal = 0;
        int ell_idler = 0;
        double weight = 0.0;
        OverlapMethod method = OverlapMethod::closed_form;
    };
    std::vector<Row> rows;
    bool normalized = false;

    [[nodiscard]] double total_weight() const;
    /// Copy rescaled to unit sum; throws if the total weight is zero.
    [[nodiscard]] SpectrumTable normalize() const;
    /// Weight of the row with the given signal charge, if present.
    [[nodiscard]] std::optional<double> weight_of(int ell_signal) const;
};

/// P_{l, l_p - l} for signal LG_{0,l}, l in [-ell_max, ell_max], basis waist = pump waist.
[[nodiscard]] SpectrumTable oam_spectrum(const ModeSpec& pump, int ell_max, double tol = 1e-12);

/// Flat spectrum of MLG pairs of fixed ring charge over windings N in
/// [-winding_max, winding_max]; rows are labelled by the total charge l N.
[[nodiscard]] SpectrumTable mlg_spectrum(int ring_charge, double w0, int winding_max);

}  // namespace stimpdc
