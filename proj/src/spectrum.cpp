#include "stimpdc/spectrum.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <stdexcept>

namespace stimpdc {

FilterResult procrustean_filter(const SpectrumTable& spectrum, int ell_max) {
    if (ell_max < 1) throw std::invalid_argument("procrustean_filter: empty window (ell_max < 1)");
    std::vector<SpectrumTable::Row> window;
    for (int ell = -ell_max; ell <= ell_max; ++ell) {
        if (ell == 0) continue;
        auto it = std::find_if(spectrum.rows.begin(), spectrum.rows.end(),
                               [ell](const auto& row) { return row.ell_signal == ell; });
        if (it == spectrum.rows.end())
            throw std::invalid_argument("procrustean_filter: spectrum has no row for l = " + std::to_string(ell));
        window.push_back(*it);
    }

    double level = window.front().weight;
    double sum = 0.0;
    for (const auto& row : window) {
        level = std::min(level, row.weight);
        sum += row.weight;
    }
    if (!(level > 0.0)) throw std::domain_error("procrustean_filter: window contains a zero weight");

    FilterResult result;
    result.retained_level = level;
    result.success_probability = std::min(1.0, static_cast<double>(window.size()) * level / sum);
    for (auto row : window) {
        row.weight = level;
        result.flat.rows.push_back(row);
    }
    result.flat = result.flat.normalize();
    return result;
}

double flatness_metric(const SpectrumTable& spectrum) {
    if (spectrum.rows.empty()) throw std::invalid_argument("flatness_metric: empty table");
    auto [lo, hi] = std::minmax_element(spectrum.rows.begin(), spectrum.rows.end(),
                                        [](const auto& a, const auto& b) { return a.weight < b.weight; });
    if (!(hi->weight > 0.0)) throw std::domain_error("flatness_metric: all weights are zero");
    return lo->weight / hi->weight;
}

SpectrumTable pump_shaping_spectrum(const std::vector<PumpComponent>& pump, int ell_max,
                                    std::optional<double> basis_waist, double tol) {
    if (pump.empty()) throw std::invalid_argument("pump_shaping_spectrum: empty pump superposition");
    if (ell_max < 1) throw std::invalid_argument("pump_shaping_spectrum: ell_max must be >= 1");
    double norm = 0.0;
    for (const auto& c : pump) norm += std::norm(c.weight);
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("pump_shaping_spectrum: component weights must be normalised");
    const double waist = basis_waist.value_or(pump.front().mode.waist);

    SpectrumTable table;
    for (int ls = -ell_max; ls <= ell_max; ++ls) {
        for (int li = -ell_max; li <= ell_max; ++li) {
            const auto signal = ModeSpec::lg(0, ls, waist);
            const auto idler = ModeSpec::lg(0, li, waist);
            Complex amplitude{};
            bool reachable = false;
            bool all_closed = true;
            for (const auto& c : pump) {
                if (!charges_cancel(c.mode, signal, idler)) continue;
                const auto coefficient = overlap(c.mode, signal, idler, tol);
                amplitude += c.weight * coefficient.value;
                all_closed = all_closed && coefficient.method == OverlapMethod::closed_form;
                reachable = true;
            }
            if (!reachable) continue;
            table.rows.push_back({ls, li, std::norm(amplitude),
                                  all_closed ? OverlapMethod::closed_form : OverlapMethod::quadrature});
        }
    }
    return table;
}

BalancedPump balance_two_component_pump(const ModeSpec& first, const ModeSpec& second, std::pair<int, int> pair_a,
                                        std::pair<int, int> pair_b, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("balance_two_component_pump: need lo < hi");
    const double waist = first.waist;
    auto coefficient = [&](const ModeSpec& pump, std::pair<int, int> pair) {
        return overlap(pump, ModeSpec::lg(0, pair.first, waist), ModeSpec::lg(0, pair.second, waist)).value;
    };
    const Complex a1 = coefficient(first, pair_a);
    const Complex a2 = coefficient(second, pair_a);
    const Complex b1 = coefficient(first, pair_b);
    const Complex b2 = coefficient(second, pair_b);
    // The common 1/(1 + t^2) normalisation does not move the root.
    auto imbalance = [&](double t) { return std::norm(a1 + t * a2) - std::norm(b1 + t * b2); };

    if (imbalance(lo) * imbalance(hi) > 0.0)
        throw std::invalid_argument("balance_two_component_pump: bracket does not straddle a balance point");
    auto [left, right] = boost::math::tools::bisect(
        imbalance, lo, hi, [tol](double x, double y) { return std::abs(y - x) <= tol; });
    const double t = 0.5 * (left + right);
    const double scale = 1.0 / std::sqrt(1.0 + t * t);
    return {t, {{first, Complex(scale)}, {second, Complex(t * scale)}}};
}

std::optional<std::string> mlg_pairing_violation(const ModeSpec& signal, const ModeSpec& idler) {
    const int ls = signal.total_charge();
    const int li = idler.total_charge();
    if (ls == 0 || li == 0 || (ls >= 0 && li >= 0)) return std::nullopt;
    return "signal/idler charges (" + std::to_string(ls) + ", " + std::to_string(li) +
           ") are not both >= 0 and neither is zero; the product of the two MLG fields is not an MLG mode";
}

FlatteningReport evaluate_strategy(const FlatteningStrategy& strategy) {
    FlatteningReport report;
    switch (strategy.kind) {
        case FlatteningKind::mlg_basis: {
            report.spectrum = mlg_spectrum(strategy.ring_charge, strategy.waist, strategy.ell_max);
            int violations = 0;
            for (int n = -strategy.ell_max; n <= strategy.ell_max; ++n) {
                const auto signal = ModeSpec::mlg(strategy.ring_charge, n, strategy.waist);
                const auto idler = ModeSpec::mlg(strategy.ring_charge, -n, strategy.waist);
                if (mlg_pairing_violation(signal, idler)) ++violations;
            }
            if (violations > 0)
                report.notes.push_back(std::to_string(violations) +
                                       " winding pairs violate the MLG product constraint (charges of opposite sign)");
            break;
        }
        case FlatteningKind::procrustean_filter: {
            const auto raw = oam_spectrum(ModeSpec::gaussian(strategy.waist), strategy.ell_max);
            const auto filtered = procrustean_filter(raw, strategy.ell_max);
            report.spectrum = filtered.flat;
            report.success_probability = filtered.success_probability;
            break;
        }
        case FlatteningKind::pump_shaping_hook: {
            report.spectrum = pump_shaping_spectrum(strategy.pump, strategy.ell_max);
            report.notes.push_back("pump shaping is evaluated, not optimised");
            break;
        }
    }
    report.flatness = flatness_metric(report.spectrum);
    return report;
}

}  // namespace stimpdc
