#include "stimpdc/fock.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "stimpdc/format.hpp"

namespace stimpdc {

std::string ModeLabel::to_string() const {
    std::string out = beam == Beam::signal ? "s" : "i";
    if (ell > 0) out += "+";
    return out + std::to_string(ell);
}

ModeWindow::ModeWindow(int ell_max) : ell_max_(ell_max) {
    if (ell_max < 1) throw std::invalid_argument("ModeWindow: ell_max must be >= 1");
}

ModeWindow ModeWindow::for_dimension(int d) {
    if (d < 2 || d % 2 != 0)
        throw std::invalid_argument("ModeWindow: dimension must be even and >= 2 (window {+-1..+-d/2}), got " +
                                    std::to_string(d));
    return ModeWindow(d / 2);
}

std::vector<int> ModeWindow::charges() const {
    std::vector<int> out;
    for (int ell = -ell_max_; ell <= ell_max_; ++ell)
        if (ell != 0) out.push_back(ell);
    return out;
}

Configuration::Configuration(std::initializer_list<Entry> entries) {
    for (const auto& [mode, n] : entries) *this = with_added(mode, n);
}

int Configuration::count(const ModeLabel& mode) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), mode,
                               [](const Entry& e, const ModeLabel& m) { return e.first < m; });
    return (it != entries_.end() && it->first == mode) ? it->second : 0;
}

int Configuration::total(Beam beam) const {
    int sum = 0;
    for (const auto& [mode, n] : entries_)
        if (mode.beam == beam) sum += n;
    return sum;
}

Configuration Configuration::with_added(const ModeLabel& mode, int k) const {
    Configuration out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), mode,
                               [](const Entry& e, const ModeLabel& m) { return e.first < m; });
    const int current = (it != out.entries_.end() && it->first == mode) ? it->second : 0;
    const int updated = current + k;
    if (updated < 0) throw std::invalid_argument("Configuration: negative occupation in " + mode.to_string());
    if (current != 0) {
        if (updated == 0)
            out.entries_.erase(it);
        else
            it->second = updated;
    } else if (updated != 0) {
        out.entries_.insert(it, {mode, updated});
    }
    return out;
}

Configuration Configuration::part(Beam beam) const {
    Configuration out;
    for (const auto& e : entries_)
        if (e.first.beam == beam) out.entries_.push_back(e);
    return out;
}

std::string Configuration::to_string() const {
    std::string s = "s{";
    std::string i = "i{";
    for (const auto& [mode, n] : entries_) {
        std::string& target = mode.beam == Beam::signal ? s : i;
        if (target.size() > 2) target += ",";
        target += (mode.ell > 0 ? "+" : "") + std::to_string(mode.ell) + ":" + std::to_string(n);
    }
    return s + "} " + i + "}";
}

std::string AmplitudeTraits<std::complex<double>>::format(const std::complex<double>& a) {
    return "(" + format_double(a.real()) + "," + format_double(a.imag()) + ")";
}

FloatFockState to_float(const ExactFockState& state) {
    FloatFockState out;
    for (const auto& [config, amp] : state.terms()) out.add(config, {amp.to_double(), 0.0});
    return out;
}

std::vector<double> schmidt_probabilities(const FloatFockState& state) {
    if (state.empty()) throw std::domain_error("schmidt_probabilities: zero state");
    std::map<Configuration, Eigen::Index> rows;
    std::map<Configuration, Eigen::Index> cols;
    for (const auto& [config, amp] : state.terms()) {
        rows.emplace(config.part(Beam::signal), 0);
        cols.emplace(config.part(Beam::idler), 0);
    }
    Eigen::Index k = 0;
    for (auto& [c, index] : rows) index = k++;
    k = 0;
    for (auto& [c, index] : cols) index = k++;

    Eigen::MatrixXcd amplitudes = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                         static_cast<Eigen::Index>(cols.size()));
    for (const auto& [config, amp] : state.terms())
        amplitudes(rows.at(config.part(Beam::signal)), cols.at(config.part(Beam::idler))) = amp;

    const Eigen::VectorXd sigma = Eigen::JacobiSVD<Eigen::MatrixXcd>(amplitudes).singularValues();
    const double total = sigma.squaredNorm();
    std::vector<double> out;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) out.push_back(sigma(i) * sigma(i) / total);
    return out;
}

double entanglement_entropy(const FloatFockState& state) {
    double entropy = 0.0;
    for (double p : schmidt_probabilities(state))
        if (p > 0.0) entropy -= p * std::log(p);
    return entropy;
}

}  // namespace stimpdc
