#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a finite interval.
//
// The interval with the largest error estimate is bisected until the summed
// error estimate drops below the absolute tolerance (or the relative one,
// whichever is looser) or the subdivision budget runs out.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace stimpdc {

template <typename T>
struct QuadratureResult {
    T value{};
    double error = 0.0;
    int evaluations = 0;
    int subdivisions = 0;
    bool converged = false;
};

/// Thrown when the refinement budget is exhausted; carries the best estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, std::complex<double> estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    [[nodiscard]] std::complex<double> estimate() const { return estimate_; }
    [[nodiscard]] double error_bound() const { return error_bound_; }

private:
    std::complex<double> estimate_;
    double error_bound_;
};

namespace detail {

// Kronrod abscissae on [0,1] (symmetric); odd indices are the Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename T, typename F>
Panel<T> gauss_kronrod_15(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(centre);
    T kronrod = fc * kKronrodWeights[7];
    T gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const T pair = f(centre - dx) + f(centre + dx);
        kronrod += pair * kKronrodWeights[j];
        if (j % 2 == 1) gauss += pair * kGaussWeights[j / 2];
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Integrates f over [a, b]. T is double or std::complex<double>.
/// Throws QuadratureError if the tolerance is not met within max_subdivisions.
template <typename T, typename F>
QuadratureResult<T> integrate_adaptive(const F& f, double a, double b, double abs_tol,
                                       double rel_tol = 0.0, int max_subdivisions = 4000) {
    if (!(abs_tol > 0.0) && !(rel_tol > 0.0))
        throw std::invalid_argument("integrate_adaptive: a positive tolerance is required");
    if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: empty interval");

    QuadratureResult<T> result;
    if (a == b) {
        result.converged = true;
        return result;
    }

    std::priority_queue<detail::Panel<T>> panels;
    auto first = detail::gauss_kronrod_15<T>(f, a, b);
    T total = first.value;
    double error = first.error;
    panels.push(first);
    result.evaluations = 15;

    auto target = [&] {
        const double rel = rel_tol * std::abs(total);
        // Round-off floor: no estimate below a few ulps of the integral is meaningful.
        const double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(total);
        return std::max({abs_tol, rel, floor});
    };

    while (error > target()) {
        if (result.subdivisions >= max_subdivisions) {
            throw QuadratureError("integrate_adaptive: subdivision budget exhausted",
                                  std::complex<double>(total), error);
        }
        auto worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
        auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        result.evaluations += 30;
        ++result.subdivisions;
    }

    // Re-sum from the panels to shed the drift of the running updates.
    T resummed{};
    double err_sum = 0.0;
    while (!panels.empty()) {
        resummed += panels.top().value;
        err_sum += panels.top().error;
        panels.pop();
    }
    result.value = resummed;
    result.error = err_sum;
    result.converged = true;
    return result;
}

}  // namespace stimpdc
