#pragma once

// Transverse spatial modes at the crystal plane (z = 0).
//
//   LG_{p,l}(r,phi) = sqrt(2^{|l|+1} p! / (pi (p+|l|)! w0^2))
//                     * exp(-r^2/w0^2) (r/w0)^{|l|} L_p^{|l|}(2 r^2/w0^2) exp(i l phi)
//
//   MLG^{l,N}(r,phi) = |LG_{0,l}(r,phi)| exp(i l N phi)
//
// Every field handled here separates into radial profile times exp(i q phi),
// so azimuthal integrals are always taken analytically.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "stimpdc/quadrature.hpp"

namespace stimpdc {

using Complex = std::complex<double>;

enum class ModeFamily { LG, MLG };

/// Transverse mode label. For MLG, `ell` is the ring charge l and `winding`
/// the multiplier N; the carried OAM is l*N. For LG, `winding` is unused.
struct ModeSpec {
    ModeFamily family = ModeFamily::LG;
    int p = 0;
    int ell = 0;
    int winding = 1;
    double waist = 1.0;

    static ModeSpec lg(int p, int ell, double waist = 1.0);
    static ModeSpec mlg(int ring_charge, int winding, double waist = 1.0);
    static ModeSpec gaussian(double waist = 1.0) { return lg(0, 0, waist); }

    /// Azimuthal charge of the field, i.e. the q in exp(i q phi).
    [[nodiscard]] int total_charge() const {
        return family == ModeFamily::LG ? ell : ell * winding;
    }

    /// Throws std::invalid_argument when the label is not a valid mode.
    void validate() const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const ModeSpec&, const ModeSpec&) = default;
};

/// Same profile with the opposite azimuthal charge (complex conjugate field).
[[nodiscard]] ModeSpec conjugate(const ModeSpec& spec);

/// L_n^{alpha}(x) by the three-term recurrence in n.
[[nodiscard]] double associated_laguerre(int n, double alpha, double x);

/// sqrt(2^{|l|+1} p! / (pi (p+|l|)! w0^2)).
[[nodiscard]] double lg_normalization(int p, int abs_ell, double waist);

/// Real radial amplitude; evaluate(spec, r, phi) == radial_profile(spec, r) * exp(i q phi).
[[nodiscard]] double radial_profile(const ModeSpec& spec, double r);

[[nodiscard]] Complex evaluate_lg(const ModeSpec& spec, double r, double phi);
[[nodiscard]] Complex evaluate_mlg(const ModeSpec& spec, double r, double phi);
[[nodiscard]] Complex evaluate(const ModeSpec& spec, double r, double phi);

/// Exact value of \int_0^{2pi} exp(i q phi) dphi.
[[nodiscard]] constexpr double azimuthal_integral(int charge) {
    return charge == 0 ? 2.0 * 3.14159265358979323846264338327950288 : 0.0;
}

/// One separable piece radial(r) * exp(i charge phi) of a transverse field.
struct AngularComponent {
    int charge = 0;
    std::function<Complex(double)> radial;
};

/// A complex field on the plane, kept as a sum of separable components.
/// `envelope_rate` is the alpha of its exp(-alpha r^2) Gaussian envelope and
/// sets the radial truncation of integrals.
struct TransverseField {
    std::vector<AngularComponent> components;
    double envelope_rate = 0.0;
    std::vector<ModeSpec> origins;

    [[nodiscard]] Complex operator()(double r, double phi) const;
};

[[nodiscard]] TransverseField make_field(const ModeSpec& spec);
[[nodiscard]] TransverseField conjugate(const TransverseField& field);

/// rho -> conj(a(rho)) * b(rho), unnormalised.
[[nodiscard]] TransverseField pointwise_conjugate_product(const TransverseField& a,
                                                          const TransverseField& b);

/// Upper radial limit beyond which |f(r)| r stays below 1e-16 of its peak.
/// `envelope_rate` seeds the search at sqrt(37/alpha).
[[nodiscard]] double truncation_radius(const std::function<double(double)>& magnitude,
                                       double envelope_rate);

/// \int_0^{R} f(r) r dr with R from truncation_radius.
[[nodiscard]] QuadratureResult<Complex> integrate_radial(const std::function<Complex(double)>& f,
                                                         double envelope_rate, double tol);

/// \int f d^2 rho; only charge-0 components survive the phi integral.
[[nodiscard]] QuadratureResult<Complex> plane_integral(const TransverseField& field, double tol = 1e-12);

/// <a|b> = \int conj(a) b d^2 rho; phi analytic, r adaptive.
[[nodiscard]] QuadratureResult<Complex> inner_product(const TransverseField& a,
                                                      const TransverseField& b, double tol = 1e-12);

}  // namespace stimpdc
