#include "doctest.h"

#include "stimpdc/cloning.hpp"

using namespace stimpdc;

TEST_CASE("optimal fidelity values") {
    CHECK(optimal_fidelity({1, 2, 2}) == Rational(5, 6));
    CHECK(optimal_fidelity({2, 4, 2}) == Rational(7, 8));
    CHECK(optimal_fidelity({3, 7, 6}) == Rational(43, 63));
    for (int n = 1; n <= 5; ++n)
        for (int d = 2; d <= 9; ++d) CHECK(optimal_fidelity({n, n, d}) == 1);
    for (int d = 2; d <= 20; ++d) CHECK(optimal_fidelity({1, 2, d}) == Rational(d + 3, 2 * (d + 1)));
    // (m + n + mn) / (m (n + 2)) for d = 2
    for (int n = 1; n <= 5; ++n)
        for (int m = n; m <= 10; ++m) CHECK(optimal_fidelity({n, m, 2}) == Rational(m + n + m * n, m * (n + 2)));
    CHECK_THROWS_AS((void)optimal_fidelity({0, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS((void)optimal_fidelity({3, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS((void)optimal_fidelity({1, 2, 1}), std::invalid_argument);
}

TEST_CASE("counting sum") {
    CHECK(counting_fidelity({1, 2, 2}) == Rational(5, 6));
    CHECK(counting_fidelity({2, 4, 2}) == Rational(7, 8));
    CHECK(counting_weights(2, 3, 4) == std::vector<BigInt>{10, 18, 18, 10});
    // 43/63 is asserted only after the enumeration confirms it.
    const auto e = brute_force_enumeration({3, 7, 6});
    REQUIRE(e.fidelity(7) == Rational(43, 63));
    CHECK(counting_fidelity({3, 7, 6}) == Rational(43, 63));
    // Odd d has no mode window but the combinatorics still apply.
    for (int d = 3; d <= 9; d += 2) CHECK(counting_fidelity({2, 5, d}) == optimal_fidelity({2, 5, d}));
}

TEST_CASE("brute-force enumeration") {
    const auto a = brute_force_enumeration({1, 2, 2});
    CHECK(a.total == 3);
    CHECK(a.weighted_target_sum == 5);
    CHECK(a.fidelity(2) == Rational(5, 6));
    CHECK(a.compositions == 2);

    for (int n : {1, 4})
        for (int d : {2, 7}) {
            const auto z = brute_force_enumeration({n, n, d});
            CHECK(z.total == 1);
            CHECK(z.weighted_target_sum == n);
        }

    const auto b = brute_force_enumeration({2, 5, 4});
    CHECK(b.per_k == std::vector<BigInt>{10, 18, 18, 10});
    CHECK(b.compositions == 20);

    SUBCASE("per-k aggregates equal the binomial products for n <= 3, q <= 5, d <= 6") {
        for (int n = 1; n <= 3; ++n)
            for (int q = 0; q <= 5; ++q)
                for (int d = 2; d <= 6; ++d) {
                    const CloningScenario s{n, n + q, d};
                    const auto e = brute_force_enumeration(s);
                    CHECK(e.per_k == counting_weights(n, q, d));
                    CHECK(e.fidelity(n + q) == counting_fidelity(s));
                    CHECK(e.compositions == count_weak_compositions(q, d));
                }
    }
    CHECK_THROWS_AS((void)brute_force_enumeration({1, 30, 20}, 1000), EnumerationBudgetExceeded);
}

TEST_CASE("state, counting and formula agree exactly on the grid") {
    const auto records = run_grid(4, 8, {2, 4, 6, 8});
    CHECK(records.size() == 26 * 4);
    for (const auto& r : records) {
        INFO(r.scenario.to_string());
        CHECK(r.verdict == Verdict::exact_equal);
        CHECK(r.warning.empty());
        REQUIRE(r.state.exact.has_value());
        CHECK(*r.state.exact == r.formula);
        CHECK(r.state.normalized);
        CHECK(r.state.pair_conjugate);
    }
}

TEST_CASE("float fallback") {
    const auto r = state_vs_formula_report({2, 5, 4}, 5);
    CHECK_FALSE(r.state.exact.has_value());
    CHECK(r.verdict == Verdict::float_equal);
    CHECK_FALSE(r.warning.empty());
    CHECK(r.passed());
    CHECK(r.state.value == doctest::Approx(static_cast<double>(r.formula)).epsilon(1e-12));
    CHECK(std::string(to_string(r.verdict)) == "float-equal");
}

TEST_CASE("target outside the window is rejected") {
    CloningScenario s{1, 2, 2};
    s.target = ModeLabel::signal(2);
    CHECK_THROWS_AS((void)state_fidelity(s), std::invalid_argument);
    s.target = ModeLabel::idler(1);
    CHECK_THROWS_AS((void)state_fidelity(s), std::invalid_argument);
    CHECK_THROWS_AS((void)state_fidelity({1, 2, 3}), std::invalid_argument);
}

TEST_CASE("monotonicity over the grid") {
    for (int n = 1; n <= 4; ++n)
        for (int m = n; m <= 8; ++m)
            for (int d : {2, 4, 6, 8}) {
                const auto f = optimal_fidelity({n, m, d});
                if (n < m) {
                    CHECK(optimal_fidelity({n, m, d + 2}) < f);
                    CHECK(optimal_fidelity({n, m + 1, d}) < f);
                }
                if (n + 1 <= m) CHECK(optimal_fidelity({n + 1, m, d}) > f);
                CHECK(f > Rational(1, d));
                CHECK(f <= 1);
            }
}

TEST_CASE("large-M limit (N+1)/(N+d)") {
    for (int n : {1, 3})
        for (int d : {2, 6}) {
            const Rational limit(n + 1, n + d);
            Rational previous = abs(optimal_fidelity({n, n, d}) - limit);
            for (int m : {10, 100, 1000, 10000}) {
                const Rational gap = abs(optimal_fidelity({n, m, d}) - limit);
                CHECK(gap < previous);
                previous = gap;
            }
            CHECK(previous < Rational(1, 1000));
        }
}

TEST_CASE("rational formatting") {
    CHECK(rational_string(Rational(5, 6)) == "5/6");
    CHECK(rational_string(Rational(4, 2)) == "2");
    CHECK(rational_string(Rational(-3, 9)) == "-1/3");
}
