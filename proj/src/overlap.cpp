#include "stimpdc/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stimpdc {

const char* to_string(OverlapMethod method) {
    return method == OverlapMethod::closed_form ? "closed_form" : "quadrature";
}

bool charges_cancel(const ModeSpec& pump, const ModeSpec& signal, const ModeSpec& idler) {
    return pump.total_charge() - signal.total_charge() - idler.total_charge() == 0;
}

OverlapCoefficient triple_overlap_quadrature(const ModeSpec& pump, const ModeSpec& signal,
                                             const ModeSpec& idler, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("triple_overlap_quadrature: tol must be positive");
    pump.validate();
    signal.validate();
    idler.validate();

    OverlapCoefficient out{Complex{}, 0.0, pump, signal, idler, OverlapMethod::quadrature};
    if (!charges_cancel(pump, signal, idler)) return out;

    const double angular = azimuthal_integral(0);
    const double rate = 1.0 / (pump.waist * pump.waist) + 1.0 / (signal.waist * signal.waist) +
                        1.0 / (idler.waist * idler.waist);
    // All radial profiles are real, so the conjugations act on the phases only.
    auto radial = integrate_radial(
        [&](double r) {
            return Complex(radial_profile(idler, r) * radial_profile(signal, r) * radial_profile(pump, r));
        },
        rate, tol / angular);
    out.value = angular * radial.value;
    out.error_estimate = angular * radial.error;
    return out;
}

OverlapCoefficient closed_form_lg_gaussian(int ell, double w0) {
    const auto pump = ModeSpec::gaussian(w0);
    const auto signal = ModeSpec::lg(0, ell, w0);
    const auto idler = ModeSpec::lg(0, -ell, w0);
    const double value = std::sqrt(2.0 / std::numbers::pi) * std::pow(2.0 / 3.0, std::abs(ell) + 1) / w0;
    return {Complex(value), 0.0, pump, signal, idler, OverlapMethod::closed_form};
}

OverlapCoefficient closed_form_mlg_gaussian(int ring_charge, double w0, int signal_winding,
                                            int idler_winding) {
    const auto pump = ModeSpec::gaussian(2.0 * w0);
    const auto signal = ModeSpec::mlg(ring_charge, signal_winding, w0);
    const auto idler = ModeSpec::mlg(ring_charge, idler_winding, w0);
    OverlapCoefficient out{Complex{}, 0.0, pump, signal, idler, OverlapMethod::closed_form};
    if (!charges_cancel(pump, signal, idler)) return out;
    const int l = std::abs(ring_charge);
    out.value = std::ldexp(1.0, l) / w0 * std::sqrt(2.0 / std::numbers::pi) * std::pow(4.0 / 9.0, l + 1);
    return out;
}

std::optional<OverlapCoefficient> closed_form(const ModeSpec& pump, const ModeSpec& signal,
                                              const ModeSpec& idler) {
    const bool gaussian_pump = pump.family == ModeFamily::LG && pump.p == 0 && pump.ell == 0;
    if (!gaussian_pump) return std::nullopt;

    if (signal.family == ModeFamily::LG && idler.family == ModeFamily::LG && signal.p == 0 &&
        idler.p == 0 && signal.waist == pump.waist && idler.waist == pump.waist) {
        if (!charges_cancel(pump, signal, idler))
            return OverlapCoefficient{Complex{}, 0.0, pump, signal, idler, OverlapMethod::closed_form};
        return closed_form_lg_gaussian(signal.ell, pump.waist);
    }

    if (signal.family == ModeFamily::MLG && idler.family == ModeFamily::MLG &&
        std::abs(signal.ell) == std::abs(idler.ell) && signal.waist == idler.waist &&
        pump.waist == 2.0 * signal.waist) {
        OverlapCoefficient out{Complex{}, 0.0, pump, signal, idler, OverlapMethod::closed_form};
        if (charges_cancel(pump, signal, idler))
            out.value = closed_form_mlg_gaussian(signal.ell, signal.waist).value;
        return out;
    }
    return std::nullopt;
}

OverlapCoefficient overlap(const ModeSpec& pump, const ModeSpec& signal, const ModeSpec& idler,
                           double tol) {
    if (auto exact = closed_form(pump, signal, idler)) return *exact;
    return triple_overlap_quadrature(pump, signal, idler, tol);
}

std::vector<OverlapCoefficient> decompose_product_rule(const ModeSpec& signal, const ModeSpec& pump,
                                                       const std::vector<ModeSpec>& idler_basis,
                                                       double tol) {
    for (std::size_t i = 0; i < idler_basis.size(); ++i)
        for (std::size_t j = i + 1; j < idler_basis.size(); ++j)
            if (idler_basis[i] == idler_basis[j])
                throw std::invalid_argument("decompose_product_rule: duplicate idler basis mode " +
                                            idler_basis[i].to_string());

    const TransverseField idler_field_mode =
        pointwise_conjugate_product(make_field(signal), make_field(pump));

    std::vector<OverlapCoefficient> out;
    out.reserve(idler_basis.size());
    for (const auto& idler : idler_basis) {
        auto projection = inner_product(make_field(idler), idler_field_mode, tol);
        out.push_back({projection.value, projection.error, pump, signal, idler, OverlapMethod::quadrature});
    }
    return out;
}

double SpectrumTable::total_weight() const {
    double sum = 0.0;
    for (const auto& row : rows) sum += row.weight;
    return sum;
}

SpectrumTable SpectrumTable::normalize() const {
    const double total = total_weight();
    if (!(total > 0.0)) throw std::domain_error("SpectrumTable::normalize: zero total weight");
    SpectrumTable out = *this;
    for (auto& row : out.rows) row.weight /= total;
    out.normalized = true;
    return out;
}

std::optional<double> SpectrumTable::weight_of(int ell_signal) const {
    auto it = std::find_if(rows.begin(), rows.end(),
                           [ell_signal](const Row& row) { return row.ell_signal == ell_signal; });
    if (it == rows.end()) return std::nullopt;
    return it->weight;
}

SpectrumTable oam_spectrum(const ModeSpec& pump, int ell_max, double tol) {
    if (ell_max < 1) throw std::invalid_argument("oam_spectrum: ell_max must be >= 1");
    if (pump.family != ModeFamily::LG) throw std::invalid_argument("oam_spectrum: pump must be an LG mode");
    pump.validate();

    SpectrumTable table;
    for (int ell = -ell_max; ell <= ell_max; ++ell) {
        const auto signal = ModeSpec::lg(0, ell, pump.waist);
        const auto idler = ModeSpec::lg(0, pump.ell - ell, pump.waist);
        const auto coefficient = overlap(pump, signal, idler, tol);
        table.rows.push_back({ell, idler.ell, std::norm(coefficient.value), coefficient.method});
    }
    return table;
}

SpectrumTable mlg_spectrum(int ring_charge, double w0, int winding_max) {
    if (winding_max < 1) throw std::invalid_argument("mlg_spectrum: winding_max must be >= 1");
    SpectrumTable table;
    for (int n = -winding_max; n <= winding_max; ++n) {
        const auto c = closed_form_mlg_gaussian(ring_charge, w0, n, -n);
        table.rows.push_back({c.signal.total_charge(), c.idler.total_charge(), std::norm(c.value),
                              OverlapMethod::closed_form});
    }
    return table;
}

}  // namespace stimpdc
