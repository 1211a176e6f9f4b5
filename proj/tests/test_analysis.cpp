// test_analysis.cpp — Valve points, thermometer protocol, amplification factor, sweeps and phase maps

#include "support.hpp"

#include "qtherm/analysis.hpp"

#include <doctest.h>

#include <cmath>

using namespace qtherm;
using qtherm::testing::rel_diff;

TEST_SUITE("analysis") {

TEST_CASE("valve working points at g = 0.02") {
    const DeviceConfig c = qtherm::testing::valve_device(0.02, 1.0);
    const double tw_h = find_current_zero(c, BathLabel::hot, {3.0, 4.0});
    const double tw_c = find_current_zero(c, BathLabel::cold, {3.0, 4.0});
    CHECK(std::abs(tw_h - 3.42) <= 0.05);
    CHECK(std::abs(tw_c - 3.53) <= 0.05);
    for (auto [which, tw] : {std::pair{BathLabel::hot, tw_h}, std::pair{BathLabel::cold, tw_c}}) {
        const CurrentReport r = evaluate_device(with_value(c, SweepVariable::work_temperature, tw));
        CHECK(std::abs(r.current(which)) < 1e-9 * r.scale());
    }
}

TEST_CASE("uncoupled equilibrium point: all currents vanish together") {
    const DeviceConfig c = qtherm::testing::thermometer_device(0.9);
    const double tw = find_current_zero(c, BathLabel::hot, {1.01, 2.0});
    CHECK(rel_diff(tw, 1.2) < 1e-9);
    const CurrentReport at = evaluate_device(with_value(c, SweepVariable::work_temperature, tw));
    const CurrentReport away = evaluate_device(with_value(c, SweepVariable::work_temperature, 2.0));
    for (BathLabel l : kAllBaths) CHECK(std::abs(at.current(l)) < 1e-8 * away.scale());
}

TEST_CASE("no sign change in the bracket") {
    const DeviceConfig c = qtherm::testing::valve_device(0.02, 1.0);
    CHECK_THROWS_WITH_AS(find_current_zero(c, BathLabel::hot, {1.0, 2.0}), doctest::Contains("no working point in bracket"),
                         NumericalError);
    CHECK_THROWS_AS(find_current_zero(c, BathLabel::hot, {2.0, 1.0}), ValidationError);
}

TEST_CASE("equilibrium control temperature") {
    CHECK(equilibrium_tw(1.0, 0.6, 1.0, 0.9) == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(equilibrium_tw(1.0, 0.6, 1.0, 0.7) == doctest::Approx(2.8).epsilon(1e-14));
    CHECK(equilibrium_tw(1.0, 0.8, 1.0, 0.85) == doctest::Approx(3.4).epsilon(1e-14));
    CHECK_THROWS_AS(equilibrium_tw(1.0, 0.6, 1.0, 0.6), std::domain_error);
}

TEST_CASE("sample temperature from the control temperature") {
    CHECK(tc_from_tw(1.2, 1.0, 0.6) == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(tc_from_tw(1.3, 1.3, 0.6) == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(tc_from_tw(1e9, 1.0, 0.6) == doctest::Approx(0.6).epsilon(1e-8));
    CHECK_THROWS_AS(tc_from_tw(0.4, 1.0, 0.6), std::domain_error);
    for (int i = 1; i <= 50; ++i) {
        const double tc = 0.6 + 0.4 * i / 50.0;
        CHECK(rel_diff(tc_from_tw(equilibrium_tw(1.0, 0.6, 1.0, tc), 1.0, 0.6), tc) < 1e-12);
    }
}

TEST_CASE("sensitivity and critical sample temperature") {
    CHECK(sensitivity(0.9, 1.0, 0.6) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    const double h = 1e-6;
    const double fd = std::abs(equilibrium_tw(1.0, 0.6, 1.0, 0.9 + h) - equilibrium_tw(1.0, 0.6, 1.0, 0.9 - h)) / (2 * h);
    CHECK(rel_diff(fd, 8.0 / 3.0) < 1e-5);
    for (double tc : {0.65, 0.75, 0.85, 0.95}) {
        const double d = std::abs(equilibrium_tw(1.0, 0.6, 1.0, tc + h) - equilibrium_tw(1.0, 0.6, 1.0, tc - h)) / (2 * h);
        CHECK(rel_diff(sensitivity(tc, 1.0, 0.6), d) < 1e-5);
    }
    const double tcrit = critical_tc(10.0, 2.0, 0.6);
    CHECK(std::abs(tcrit - 1.51) <= 0.01);
    CHECK(sensitivity(tcrit, 2.0, 0.6) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(sensitivity(1.2 + 1e-6, 2.0, 0.6) > 1e10);
    CHECK_THROWS_AS(sensitivity(1.2, 2.0, 0.6), std::domain_error);
    CHECK_THROWS_AS(critical_tc(0.0, 2.0, 0.6), std::domain_error);
}

TEST_CASE("thermometer round trip") {
    for (double hidden : {0.9, 0.7}) {
        const ThermometerReading r = measure_temperature(qtherm::testing::thermometer_device(hidden));
        CHECK(rel_diff(r.tw_star, hidden == 0.9 ? 1.2 : 2.8) < 1e-6);
        CHECK(rel_diff(r.tc_estimate, hidden) < 1e-6);
        CHECK(r.in_range);
        CHECK(r.sensitivity == doctest::Approx(sensitivity(hidden, 1.0, 0.6)).epsilon(1e-5));
    }
    for (int i = 1; i < 20; ++i) {
        const double hidden = 0.6 + 0.4 * i / 20.0;
        const ThermometerReading r = measure_temperature(qtherm::testing::thermometer_device(hidden));
        CHECK(rel_diff(r.tc_estimate, hidden) < 1e-6);
    }
}

TEST_CASE("thermometer: sample at the hot temperature and below range") {
    const ThermometerReading same = measure_temperature(qtherm::testing::thermometer_device(1.0));
    CHECK(rel_diff(same.tc_estimate, 1.0) < 1e-6);
    CHECK_THROWS_WITH_AS(measure_temperature(qtherm::testing::thermometer_device(0.55)),
                         doctest::Contains("sample below measurable range"), NumericalError);
    CHECK_THROWS_AS(measure_temperature(qtherm::testing::valve_device(0.02, 1.0)), ValidationError);
}

TEST_CASE("uncoupled amplification factor is omega_b / Delta") {
    for (double tw : {4.0, 6.0, 10.0}) {
        const double a = amplification_factor(qtherm::testing::valve_device(0.0, tw), tw);
        CHECK(a == doctest::Approx(4.0).epsilon(1e-6));
    }
}

TEST_CASE("amplification factor: step halving is consistent") {
    const DeviceConfig c = qtherm::testing::valve_device(0.05, 6.0);
    const double a = amplification_factor(c, 6.0, 1e-5);
    const double b = amplification_factor(c, 6.0, 5e-6);
    CHECK(rel_diff(a, b) < 1e-4);
    CHECK(a > 1.0);
}

TEST_CASE("amplification factor undefined where J_w does not move") {
    DeviceConfig c = qtherm::testing::valve_device(0.02, 3.0);
    c.bath(BathLabel::work).gamma = 0.0;
    CHECK_THROWS_WITH_AS(amplification_factor(c, 3.0), doctest::Contains("amplifier factor undefined"), NumericalError);
}

TEST_CASE("sweep grid") {
    const SweepGrid g{SweepVariable::work_temperature, 1.0, 2.0, 5};
    const auto v = g.values();
    REQUIRE(v.size() == 5);
    CHECK(v.front() == 1.0);
    CHECK(v[2] == 1.5);
    CHECK(v.back() == 2.0);
    CHECK_THROWS_AS((SweepGrid{SweepVariable::coupling, 1.0, 1.0, 5}.validate()), ValidationError);
    CHECK_THROWS_AS((SweepGrid{SweepVariable::coupling, 0.0, 1.0, 1}.validate()), ValidationError);
    CHECK(parse_sweep_variable("Tw") == SweepVariable::work_temperature);
    CHECK(parse_sweep_variable("g") == SweepVariable::coupling);
    CHECK_THROWS_AS(parse_sweep_variable("Th"), ValidationError);
}

TEST_CASE("sweep: hot current crosses zero between the rows bracketing the valve point") {
    const auto rows = sweep(qtherm::testing::valve_device(0.02, 1.0), {SweepVariable::work_temperature, 1.0, 5.0, 401});
    REQUIRE(rows.size() == 401);
    int crossings = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::signbit(rows[i - 1].report->j_h) != std::signbit(rows[i].report->j_h)) {
            ++crossings;
            CHECK(rows[i - 1].t_work <= 3.47);
            CHECK(rows[i].t_work >= 3.37);
        }
    }
    CHECK(crossings == 1);
}

TEST_CASE("sweep: nested ordering and thread independence") {
    const DeviceConfig c = qtherm::testing::coherence_device(0.0, 1.0);
    const SweepGrid tw{SweepVariable::work_temperature, 1.0, 3.0, 5};
    const SweepGrid g{SweepVariable::coupling, 0.0, 0.04, 3};
    const auto serial = sweep(c, tw, g, 1);
    const auto parallel = sweep(c, tw, g, 4);
    REQUIRE(serial.size() == 15);
    CHECK(serial[0].g == 0.0);
    CHECK(serial[4].g == 0.0);
    CHECK(serial[5].g == 0.02);
    CHECK(serial[5].t_work == 1.0);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].t_work == parallel[i].t_work);
        CHECK(serial[i].g == parallel[i].g);
        CHECK(serial[i].report->j_c == parallel[i].report->j_c);
    }
    CHECK_THROWS_AS(sweep(c, tw, tw), ValidationError);
}

TEST_CASE("sweep: failed points are recorded, not fatal") {
    DeviceConfig c = make_device({1.0, 1.0, 0.0}, 1.0, 0.85, 3.0, 0.008, 50.0);
    const auto rows = sweep(c, {SweepVariable::coupling, 0.0, 0.02, 3});
    CHECK_FALSE(rows[0].report.has_value());
    CHECK_FALSE(rows[0].error.empty());
    CHECK(rows[1].report.has_value());
}

TEST_CASE("heat-function classification") {
    CurrentReport r;
    r.j_h = -2.0;
    r.j_w = 1.0;
    r.j_c = 1.0;
    CHECK(classify_heat(r) == HeatFunction::refrigerator);
    r.j_c = -1.0;
    CHECK(classify_heat(r) == HeatFunction::heater);
    r.j_c = 1e-10;
    CHECK(classify_heat(r) == HeatFunction::valve);
}

TEST_CASE("phase map: uncoupled row flips at the equilibrium control temperature") {
    const DeviceConfig c = qtherm::testing::valve_device(0.0, 1.0);
    const auto rows = phase_map(c, {SweepVariable::work_temperature, 2.0, 5.0, 31}, {SweepVariable::coupling, 0.0, 0.02, 2});
    REQUIRE(rows.size() == 62);
    const double onset = equilibrium_tw(1.0, 0.8, 1.0, 0.85);
    for (std::size_t i = 0; i < 31; ++i) {
        const PhaseMapRow& row = rows[i];
        CHECK(row.g == 0.0);
        if (std::abs(row.t_work - onset) < 1e-9) continue;
        CHECK((row.heat == HeatFunction::refrigerator) == (row.t_work > onset));
    }
    // g = 0.02 row: heater below about 3.53, refrigerator above
    for (std::size_t i = 31; i < 62; ++i) {
        const PhaseMapRow& row = rows[i];
        if (row.t_work < 3.48) CHECK(row.heat == HeatFunction::heater);
        if (row.t_work > 3.58) CHECK(row.heat == HeatFunction::refrigerator);
        CHECK(row.amplifier == AmplifierFunction::amplifier);
    }
}

TEST_CASE("phase map: the cooling boundary moves monotonically with g") {
    const DeviceConfig c = qtherm::testing::valve_device(0.0, 1.0);
    const SweepGrid tw{SweepVariable::work_temperature, 2.0, 12.0, 51};
    const SweepGrid g{SweepVariable::coupling, 0.0, 0.12, 7};
    const auto rows = phase_map(c, tw, g, {1e-9, 1e-5, 4});
    double previous_onset = 0.0;
    for (std::size_t j = 0; j < 7; ++j) {
        // along each g row, once refrigerating it stays refrigerating
        std::optional<double> onset;
        for (std::size_t i = 0; i < 51; ++i) {
            const PhaseMapRow& row = rows[j * 51 + i];
            REQUIRE(row.report.has_value());
            if (row.heat == HeatFunction::refrigerator && !onset) onset = row.t_work;
            if (onset) CHECK(row.heat == HeatFunction::refrigerator);
        }
        if (onset) {
            CHECK(*onset >= previous_onset);
            previous_onset = *onset;
        }
    }
}

} // TEST_SUITE
