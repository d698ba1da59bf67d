#include "doctest.h"

#include <cmath>

#include "stimpdc/spectrum.hpp"

using namespace stimpdc;

TEST_CASE("Procrustean filter on the Gaussian-pump spectrum") {
    const auto raw = oam_spectrum(ModeSpec::gaussian(), 4);
    const auto f = procrustean_filter(raw, 2);
    // 4 (2/3)^6 / (2 (2/3)^4 + 2 (2/3)^6) = 8/13
    CHECK(f.success_probability == doctest::Approx(8.0 / 13.0).epsilon(1e-14));
    CHECK(f.retained_level == *raw.weight_of(2));
    REQUIRE(f.flat.rows.size() == 4);
    CHECK(f.flat.normalized);
    for (const auto& row : f.flat.rows) {
        CHECK(row.ell_signal != 0);
        CHECK(row.weight == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(f.retained_level <= *raw.weight_of(row.ell_signal));
    }
    CHECK(flatness_metric(f.flat) == 1.0);

    CHECK(procrustean_filter(raw, 1).success_probability == 1.0);
    CHECK(procrustean_filter(mlg_spectrum(1, 1.0, 3), 3).success_probability == 1.0);
    CHECK_THROWS_AS((void)procrustean_filter(raw, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)procrustean_filter(raw, 5), std::invalid_argument);
}

TEST_CASE("filtering never amplifies and succeeds with probability in (0, 1]") {
    for (int table_max = 1; table_max <= 6; ++table_max)
        for (int ell_max = 1; ell_max <= table_max; ++ell_max) {
            const auto raw = oam_spectrum(ModeSpec::gaussian(0.7), table_max);
            const auto f = procrustean_filter(raw, ell_max);
            CHECK(f.success_probability > 0.0);
            CHECK(f.success_probability <= 1.0);
            for (const auto& row : f.flat.rows) CHECK(f.retained_level <= *raw.weight_of(row.ell_signal));
        }
}

TEST_CASE("flatness metric") {
    CHECK(flatness_metric(oam_spectrum(ModeSpec::gaussian(), 3)) ==
          doctest::Approx(std::pow(4.0 / 9.0, 3)).epsilon(1e-13));
    CHECK(flatness_metric(mlg_spectrum(2, 1.5, 5)) == 1.0);
    SpectrumTable single;
    single.rows.push_back({1, -1, 0.3, OverlapMethod::closed_form});
    CHECK(flatness_metric(single) == 1.0);
    CHECK_THROWS_AS((void)flatness_metric(SpectrumTable{}), std::invalid_argument);
    single.rows[0].weight = 0.0;
    CHECK_THROWS_AS((void)flatness_metric(single), std::domain_error);
}

TEST_CASE("pump shaping") {
    SUBCASE("a single Gaussian reproduces the OAM spectrum bitwise") {
        const auto shaped = pump_shaping_spectrum({{ModeSpec::gaussian(), Complex(1.0)}}, 4);
        const auto plain = oam_spectrum(ModeSpec::gaussian(), 4);
        REQUIRE(shaped.rows.size() == plain.rows.size());
        for (std::size_t i = 0; i < plain.rows.size(); ++i) {
            CHECK(shaped.rows[i].ell_signal == plain.rows[i].ell_signal);
            CHECK(shaped.rows[i].ell_idler == plain.rows[i].ell_idler);
            CHECK(shaped.rows[i].weight == plain.rows[i].weight);
        }
    }
    SUBCASE("two OAM components obey the selection rule") {
        const double h = std::sqrt(0.5);
        const auto table = pump_shaping_spectrum({{ModeSpec::lg(0, 0), Complex(h)}, {ModeSpec::lg(0, 2), Complex(h)}}, 3);
        bool saw_zero = false;
        bool saw_two = false;
        for (const auto& row : table.rows) {
            const int sum = row.ell_signal + row.ell_idler;
            CHECK((sum == 0 || sum == 2));
            saw_zero = saw_zero || sum == 0;
            saw_two = saw_two || sum == 2;
            CHECK(row.weight > 0.0);
        }
        CHECK(saw_zero);
        CHECK(saw_two);
    }
    CHECK_THROWS_AS((void)pump_shaping_spectrum({{ModeSpec::gaussian(), Complex(0.5)}}, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)pump_shaping_spectrum({}, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)pump_shaping_spectrum({{ModeSpec::gaussian(), Complex(1.0)}}, 0), std::invalid_argument);
}

TEST_CASE("two-component pump balanced by bisection") {
    // Pump LG_{0,0} + t LG_{1,0}: the radial mode lowers the l = 0 pair faster
    // than the l = 1 pair; the balance point is t = -3/5.
    const auto b = balance_two_component_pump(ModeSpec::lg(0, 0), ModeSpec::lg(1, 0), {0, 0}, {1, -1}, -1.0, 0.0, 1e-13);
    CHECK(b.ratio == doctest::Approx(-0.6).epsilon(1e-10));
    const auto table = pump_shaping_spectrum(b.components, 1);
    double p00 = -1.0;
    double p1m1 = -2.0;
    for (const auto& row : table.rows) {
        if (row.ell_signal == 0 && row.ell_idler == 0) p00 = row.weight;
        if (row.ell_signal == 1 && row.ell_idler == -1) p1m1 = row.weight;
    }
    CHECK(p00 == doctest::Approx(p1m1).epsilon(1e-9));
    CHECK_THROWS_AS((void)balance_two_component_pump(ModeSpec::lg(0, 0), ModeSpec::lg(1, 0), {0, 0}, {1, -1}, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("MLG pairing validator") {
    CHECK_FALSE(mlg_pairing_violation(ModeSpec::mlg(1, 2), ModeSpec::mlg(1, 3)).has_value());
    CHECK_FALSE(mlg_pairing_violation(ModeSpec::mlg(1, 0), ModeSpec::mlg(1, -3)).has_value());
    const auto v = mlg_pairing_violation(ModeSpec::mlg(1, 2), ModeSpec::mlg(1, -2));
    REQUIRE(v.has_value());
    CHECK(v->find("(2, -2)") != std::string::npos);
}

TEST_CASE("strategy evaluation") {
    FlatteningStrategy mlg{FlatteningKind::mlg_basis, 3, 1.0, 1, {}};
    const auto a = evaluate_strategy(mlg);
    CHECK(a.flatness == 1.0);
    CHECK(a.success_probability == 1.0);
    CHECK(a.notes.size() == 1);

    FlatteningStrategy filter{FlatteningKind::procrustean_filter, 2, 1.0, 1, {}};
    const auto b = evaluate_strategy(filter);
    CHECK(b.flatness == 1.0);
    CHECK(b.success_probability == doctest::Approx(8.0 / 13.0));

    FlatteningStrategy pump{FlatteningKind::pump_shaping_hook, 3, 1.0, 1, {{ModeSpec::gaussian(), Complex(1.0)}}};
    const auto c = evaluate_strategy(pump);
    CHECK(c.flatness == doctest::Approx(std::pow(4.0 / 9.0, 3)));
}
