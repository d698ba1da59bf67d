#include "stimpdc/mode_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace stimpdc {

ModeSpec ModeSpec::lg(int p, int ell, double waist) {
    ModeSpec spec{ModeFamily::LG, p, ell, 1, waist};
    spec.validate();
    return spec;
}

ModeSpec ModeSpec::mlg(int ring_charge, int winding, double waist) {
    ModeSpec spec{ModeFamily::MLG, 0, ring_charge, winding, waist};
    spec.validate();
    return spec;
}

void ModeSpec::validate() const {
    if (!(waist > 0.0) || !std::isfinite(waist))
        throw std::invalid_argument("ModeSpec: waist must be positive, got " + std::to_string(waist));
    if (p < 0) throw std::invalid_argument("ModeSpec: radial index p must be >= 0");
    if (family == ModeFamily::MLG && p != 0)
        throw std::invalid_argument("ModeSpec: MLG modes are single-ring (p = 0) only");
}

std::string ModeSpec::to_string() const {
    std::ostringstream os;
    if (family == ModeFamily::LG)
        os << "LG(p=" << p << ",l=" << ell << ",w0=" << waist << ")";
    else
        os << "MLG(l=" << ell << ",N=" << winding << ",w0=" << waist << ")";
    return os.str();
}

ModeSpec conjugate(const ModeSpec& spec) {
    ModeSpec out = spec;
    if (spec.family == ModeFamily::LG)
        out.ell = -spec.ell;
    else
        out.winding = -spec.winding;
    return out;
}

double associated_laguerre(int n, double alpha, double x) {
    if (n < 0) throw std::invalid_argument("associated_laguerre: negative degree");
    double prev = 1.0;
    if (n == 0) return prev;
    double curr = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

namespace {

double log_factorial(int n) {
    if (n <= 20) {
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return std::log(f);
    }
    return std::lgamma(n + 1.0);
}

}  // namespace

double lg_normalization(int p, int abs_ell, double waist) {
    if (p + abs_ell <= 20) {
        double ratio = 1.0;  // p! / (p+|l|)!
        for (int k = p + 1; k <= p + abs_ell; ++k) ratio /= k;
        return std::sqrt(std::ldexp(ratio, abs_ell + 1) / (std::numbers::pi * waist * waist));
    }
    const double log_sq = (abs_ell + 1) * std::numbers::ln2 + log_factorial(p) -
                          log_factorial(p + abs_ell) - std::log(std::numbers::pi * waist * waist);
    return std::exp(0.5 * log_sq);
}

double radial_profile(const ModeSpec& spec, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("radial_profile: r must be >= 0");
    const int abs_ell = std::abs(spec.ell);
    const double rho = r / spec.waist;
    const double value = lg_normalization(spec.p, abs_ell, spec.waist) * std::exp(-rho * rho) *
                         std::pow(rho, abs_ell) *
                         associated_laguerre(spec.p, abs_ell, 2.0 * rho * rho);
    return spec.family == ModeFamily::MLG ? std::abs(value) : value;
}

Complex evaluate_lg(const ModeSpec& spec, double r, double phi) {
    if (spec.family != ModeFamily::LG) throw std::invalid_argument("evaluate_lg: not an LG mode");
    spec.validate();
    return radial_profile(spec, r) * std::polar(1.0, spec.ell * phi);
}

Complex evaluate_mlg(const ModeSpec& spec, double r, double phi) {
    if (spec.family != ModeFamily::MLG) throw std::invalid_argument("evaluate_mlg: not an MLG mode");
    spec.validate();
    return radial_profile(spec, r) * std::polar(1.0, spec.total_charge() * phi);
}

Complex evaluate(const ModeSpec& spec, double r, double phi) {
    return spec.family == ModeFamily::LG ? evaluate_lg(spec, r, phi) : evaluate_mlg(spec, r, phi);
}

Complex TransverseField::operator()(double r, double phi) const {
    Complex sum{};
    for (const auto& c : components) sum += c.radial(r) * std::polar(1.0, c.charge * phi);
    return sum;
}

TransverseField make_field(const ModeSpec& spec) {
    spec.validate();
    TransverseField f;
    f.components.push_back({spec.total_charge(), [spec](double r) { return Complex(radial_profile(spec, r)); }});
    f.envelope_rate = 1.0 / (spec.waist * spec.waist);
    f.origins.push_back(spec);
    return f;
}

TransverseField conjugate(const TransverseField& field) {
    TransverseField out;
    out.envelope_rate = field.envelope_rate;
    out.origins = field.origins;
    for (const auto& c : field.components)
        out.components.push_back({-c.charge, [g = c.radial](double r) { return std::conj(g(r)); }});
    return out;
}

TransverseField pointwise_conjugate_product(const TransverseField& a, const TransverseField& b) {
    TransverseField out;
    out.envelope_rate = a.envelope_rate + b.envelope_rate;
    out.origins = a.origins;
    out.origins.insert(out.origins.end(), b.origins.begin(), b.origins.end());
    for (const auto& ca : a.components) {
        for (const auto& cb : b.components) {
            out.components.push_back({cb.charge - ca.charge, [fa = ca.radial, fb = cb.radial](double r) {
                                          return std::conj(fa(r)) * fb(r);
                                      }});
        }
    }
    return out;
}

double truncation_radius(const std::function<double(double)>& magnitude, double envelope_rate) {
    if (!(envelope_rate > 0.0))
        throw std::invalid_argument("truncation_radius: field has no decaying envelope");
    constexpr int kSamples = 400;
    constexpr double kRelativeTail = 1e-16;
    double radius = std::sqrt(37.0 / envelope_rate);
    for (int attempt = 0; attempt < 200; ++attempt) {
        double peak = 0.0;
        for (int i = 1; i <= kSamples; ++i) peak = std::max(peak, magnitude(radius * i / kSamples));
        const double tail = magnitude(radius);
        const double before_tail = magnitude(radius * (kSamples - 1) / kSamples);
        if (peak == 0.0 || (tail <= kRelativeTail * peak && tail <= before_tail)) return radius;
        radius *= 1.25;
    }
    throw std::runtime_error("truncation_radius: integrand does not decay");
}

QuadratureResult<Complex> integrate_radial(const std::function<Complex(double)>& f,
                                           double envelope_rate, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_radial: tol must be positive");
    auto weighted = [&f](double r) { return f(r) * r; };
    const double radius =
        truncation_radius([&weighted](double r) { return std::abs(weighted(r)); }, envelope_rate);
    return integrate_adaptive<Complex>(weighted, 0.0, radius, tol);
}

QuadratureResult<Complex> plane_integral(const TransverseField& field, double tol) {
    QuadratureResult<Complex> total;
    total.converged = true;
    for (const auto& c : field.components) {
        const double angular = azimuthal_integral(c.charge);
        if (angular == 0.0) continue;
        auto radial = integrate_radial(c.radial, field.envelope_rate, tol / angular);
        total.value += angular * radial.value;
        total.error += angular * radial.error;
        total.evaluations += radial.evaluations;
        total.subdivisions += radial.subdivisions;
    }
    return total;
}

QuadratureResult<Complex> inner_product(const TransverseField& a, const TransverseField& b,
                                        double tol) {
    QuadratureResult<Complex> total;
    total.converged = true;
    const double rate = a.envelope_rate + b.envelope_rate;
    for (const auto& ca : a.components) {
        for (const auto& cb : b.components) {
            const double angular = azimuthal_integral(cb.charge - ca.charge);
            if (angular == 0.0) continue;
            auto radial = integrate_radial(
                [&](double r) { return std::conj(ca.radial(r)) * cb.radial(r); }, rate,
                tol / angular);
            total.value += angular * radial.value;
            total.error += angular * radial.error;
            total.evaluations += radial.evaluations;
            total.subdivisions += radial.subdivisions;
        }
    }
    return total;
}

}  // namespace stimpdc
