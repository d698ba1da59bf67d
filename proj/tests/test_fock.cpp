#include "doctest.h"

#include <cmath>

#include "stimpdc/fock.hpp"
#include "stimpdc/overlap.hpp"

using namespace stimpdc;

namespace {

const ModeLabel kTarget = ModeLabel::signal(1);

Rational exact_expectation(const ExactFockState& state, const ModeLabel& mode) {
    return number_expectation(state, mode).rational_value();
}

// Oracle for the multinomial expansion: apply the pair operator q times.
template <typename Amp>
BasicFockState<Amp> repeated_pair_operator(const BasicFockState<Amp>& seed, int q, const Coupling<Amp>& coupling) {
    auto state = seed;
    const auto terms = pair_operator(coupling);
    for (int i = 0; i < q; ++i) state = apply_pair_operator(state, terms);
    return normalize(state);
}

}  // namespace

TEST_CASE("labels, windows and configurations") {
    CHECK(ModeLabel::signal(1).to_string() == "s+1");
    CHECK(ModeLabel::idler(-2).to_string() == "i-2");
    CHECK(ModeLabel::idler(0).to_string() == "i0");
    const ModeWindow w = ModeWindow::for_dimension(4);
    CHECK(w.ell_max() == 2);
    CHECK(w.charges() == std::vector<int>{-2, -1, 1, 2});
    CHECK_FALSE(w.contains(0));
    CHECK_THROWS_AS((void)ModeWindow::for_dimension(3), std::invalid_argument);
    CHECK_THROWS_AS((void)ModeWindow::for_dimension(0), std::invalid_argument);
    CHECK_THROWS_AS((void)ModeWindow(0), std::invalid_argument);

    const Configuration c{{ModeLabel::idler(-1), 1}, {ModeLabel::signal(1), 2}, {ModeLabel::signal(-1), 1}};
    CHECK(c.to_string() == "s{-1:1,+1:2} i{-1:1}");
    CHECK(Configuration{}.to_string() == "s{} i{}");
    CHECK(c.total(Beam::signal) == 3);
    CHECK(c.part(Beam::idler) == Configuration{{ModeLabel::idler(-1), 1}});
    CHECK(c.with_added(ModeLabel::idler(-1), -1).entries().size() == 2);
    CHECK_THROWS_AS((void)c.with_added(ModeLabel::idler(2), -1), std::invalid_argument);
}

TEST_CASE("creation and annihilation") {
    const auto vac = ExactFockState::vacuum();
    const auto one = create(vac, kTarget);
    REQUIRE(one.size() == 1);
    CHECK(one.terms().begin()->second == SurdSum(1));
    const auto two = create(one, kTarget);
    CHECK(two.terms().begin()->second == SurdSum::sqrt_of(2));
    CHECK(annihilate(vac, kTarget).empty());
    CHECK(annihilate(one, kTarget).terms().begin()->first == Configuration{});

    SUBCASE("(a^dag)^k |0> = sqrt(k!) |k>") {
        auto s = vac;
        for (int k = 1; k <= 8; ++k) {
            s = create(s, kTarget);
            CHECK(s.terms().begin()->second == SurdSum::sqrt_of(Rational(factorial(k))));
            CHECK(s.terms().begin()->first.count(kTarget) == k);
        }
    }
    CHECK_THROWS_AS((void)normalize(ExactFockState{}), std::domain_error);
    CHECK_THROWS_AS((void)number_expectation(two, kTarget), std::invalid_argument);
    CHECK(exact_expectation(normalize(two), kTarget) == 2);
}

TEST_CASE("one stimulated photon in a qubit window: 1 -> 2 cloning") {
    const auto seed = ExactFockState::number_state(kTarget, 1);
    const auto out = apply_downconversion_power(seed, 1, ModeWindow(1));
    REQUIRE(out.size() == 2);
    const Configuration cloned{{ModeLabel::signal(1), 2}, {ModeLabel::idler(-1), 1}};
    const Configuration spoiled{{ModeLabel::signal(-1), 1}, {ModeLabel::signal(1), 1}, {ModeLabel::idler(1), 1}};
    CHECK(out.terms().at(cloned) == SurdSum::sqrt_of(Rational(2, 3)));
    CHECK(out.terms().at(spoiled) == SurdSum::sqrt_of(Rational(1, 3)));
    CHECK(exact_expectation(out, kTarget) == Rational(5, 3));
    CHECK(reduced_single_clone_fidelity(out, kTarget, 2).rational_value() == Rational(5, 6));
    CHECK(satisfies_pair_conjugation(out, seed.terms().begin()->first));

    SUBCASE("entanglement of the full output vs its stimulated part") {
        const double expected = -(2.0 / 3.0) * std::log(2.0 / 3.0) - (1.0 / 3.0) * std::log(1.0 / 3.0);
        CHECK(entanglement_entropy(to_float(out)) == doctest::Approx(expected).epsilon(1e-12));
        const auto stim = normalize(stimulated_component(out, kTarget));
        CHECK(stim.size() == 1);
        CHECK(entanglement_entropy(to_float(stim)) == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("n seed photons, one pair: amplitudes sqrt((n+1)/(n+2)) and sqrt(1/(n+2))") {
    for (int n = 0; n <= 12; ++n) {
        const auto out = apply_downconversion_power(ExactFockState::number_state(kTarget, n), 1, ModeWindow(1));
        const Configuration cloned = Configuration{}.with_added(kTarget, n + 1).with_added(ModeLabel::idler(-1), 1);
        CHECK(out.terms().at(cloned) == SurdSum::sqrt_of(Rational(n + 1, n + 2)));
        CHECK(exact_expectation(out, kTarget) == Rational((n + 1) * (n + 1) + n, n + 2));
    }
}

TEST_CASE("q = 0 is the identity") {
    const auto seed = ExactFockState::number_state(kTarget, 3);
    const auto out = apply_downconversion_power(seed, 0, ModeWindow(2));
    CHECK(out.terms() == seed.terms());
}

TEST_CASE("hand-checked expectations") {
    const auto a = apply_downconversion_power(ExactFockState::number_state(kTarget, 2), 2, ModeWindow(1));
    CHECK(exact_expectation(a, kTarget) == Rational(7, 2));
    const auto b = apply_downconversion_power(ExactFockState::number_state(kTarget, 1), 1, ModeWindow(2));
    CHECK(reduced_single_clone_fidelity(b, kTarget, 2).rational_value() == Rational(7, 10));
}

TEST_CASE("multinomial expansion equals repeated pair operators") {
    for (int ell_max = 1; ell_max <= 2; ++ell_max) {
        const ModeWindow window(ell_max);
        for (int n = 1; n <= 4; ++n)
            for (int q = 0; q <= 4; ++q) {
                const auto seed = ExactFockState::number_state(kTarget, n);
                const auto fast = apply_downconversion_power(seed, q, window);
                const auto slow = repeated_pair_operator(seed, q, uniform_coupling<SurdSum>(window));
                CHECK(fast.terms() == slow.terms());
                CHECK(fast.is_normalized());
                CHECK(satisfies_pair_conjugation(fast, seed.terms().begin()->first));
            }
    }
}

TEST_CASE("flat coupling: configuration probability proportional to C(n + q_t, n)") {
    const int n = 2;
    const int q = 3;
    const auto out = apply_downconversion_power(ExactFockState::number_state(kTarget, n), q, ModeWindow(2));
    // Unnormalised weights sum to sum_k C(n+q-k, n) C(d+k-2, k) with d = 4.
    Rational z = 0;
    for (int k = 0; k <= q; ++k) z += Rational(binomial(n + q - k, n) * binomial(2 + k, k));
    for (const auto& [config, amp] : out.terms()) {
        const int qt = config.count(kTarget) - n;
        CHECK((amp * amp).rational_value() == Rational(binomial(n + qt, n)) / z);
    }
}

TEST_CASE("overlap-weighted coupling keeps the stimulated part separable") {
    const ModeWindow window(3);
    Coupling<Complex> coupling;
    for (int ell : window.charges()) coupling[ell] = closed_form_lg_gaussian(ell, 1.0).value;
    const auto seed = FloatFockState::number_state(kTarget, 2);
    const auto out = apply_downconversion_power(seed, 2, window, coupling);
    const auto slow = repeated_pair_operator(seed, 2, coupling);
    REQUIRE(out.size() == slow.size());
    for (const auto& [config, amp] : out.terms()) CHECK(std::abs(amp - slow.terms().at(config)) < 1e-14);
    CHECK(out.is_normalized());
    CHECK(satisfies_pair_conjugation(out, seed.terms().begin()->first));
    CHECK(entanglement_entropy(out) > 0.1);
    const auto stim = normalize(stimulated_component(out, kTarget));
    CHECK(entanglement_entropy(stim) == doctest::Approx(0.0).epsilon(1e-12));
    const auto p = schmidt_probabilities(out);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += p[i];
        if (i > 0) CHECK(p[i] <= p[i - 1]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("superposed seed") {
    ExactFockState seed;
    seed.add(Configuration{{ModeLabel::signal(1), 1}}, SurdSum::sqrt_of(Rational(1, 2)));
    seed.add(Configuration{{ModeLabel::signal(-1), 1}}, SurdSum::sqrt_of(Rational(1, 2)));
    REQUIRE(seed.is_normalized());
    const auto out = apply_downconversion_power(seed, 1, ModeWindow(1));
    CHECK(out.is_normalized());
    CHECK(exact_expectation(out, ModeLabel::signal(1)) == exact_expectation(out, ModeLabel::signal(-1)));
}

TEST_CASE("error paths") {
    const auto seed = ExactFockState::number_state(kTarget, 1);
    CHECK_THROWS_AS((void)apply_downconversion_power(seed, -1, ModeWindow(1)), std::invalid_argument);
    CHECK_THROWS_AS((void)apply_downconversion_power(ExactFockState::number_state(ModeLabel::signal(3), 1), 1,
                                                     ModeWindow(2)),
                    std::invalid_argument);
    Coupling<SurdSum> lopsided{{-1, SurdSum(1)}, {1, SurdSum(2)}};
    CHECK_THROWS_AS((void)apply_downconversion_power(seed, 1, ModeWindow(1), lopsided), std::invalid_argument);
    Coupling<SurdSum> partial{{1, SurdSum(1)}};
    CHECK_THROWS_AS((void)apply_downconversion_power(seed, 1, ModeWindow(1), partial), std::invalid_argument);
    CHECK_THROWS_AS((void)apply_downconversion_power(seed, 10, ModeWindow(5), uniform_coupling<SurdSum>(ModeWindow(5)), 100),
                    EnumerationBudgetExceeded);
    CHECK_THROWS_AS((void)ExactFockState::number_state(kTarget, -1), std::invalid_argument);
}
