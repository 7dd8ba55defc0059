#include <catch_amalgamated.hpp>

#include <cmath>

#include "ergent/catalog.hpp"
#include "ergent/oracle.hpp"

using namespace ergent;
using Catch::Matchers::WithinAbs;

// The oracle is checked against hand-derived values only, so agreement with
// it elsewhere means something.

TEST_CASE("exhaustive passive and active energies", "[oracle]") {
    const std::vector<double> p{0.25, 0.75}, lv{1.0, 0.0};
    CHECK_THAT(oracle::passive_energy_exhaustive(p, lv), WithinAbs(0.25, 1e-15));
    CHECK_THAT(oracle::active_energy_exhaustive(p, lv), WithinAbs(0.75, 1e-15));
    const std::vector<double> q{0.2, 0.5, 0.3}, l3{2.0, 0.0, 1.0};
    CHECK_THAT(oracle::passive_energy_exhaustive(q, l3), WithinAbs(0.3 + 0.4, 1e-15));
    CHECK_THAT(oracle::active_energy_exhaustive(q, l3), WithinAbs(1.0 + 0.3, 1e-15));
    const std::vector<double> zeros{1.0, 0.0, 0.0, 0.0};
    CHECK(oracle::passive_energy_exhaustive(zeros, std::vector<double>{0, 1}) == 0.0);
    const std::vector<double> many(12, 1.0 / 12), levels(12, 1.0);
    CHECK_THROWS_AS(oracle::passive_energy_exhaustive(many, levels), ValidationError);
    CHECK_THROWS_AS(oracle::passive_energy_exhaustive(q, std::vector<double>{0, 1}), ValidationError);
}

TEST_CASE("oracle reduced densities and spectra", "[oracle]") {
    const CMatrix w = oracle::reduced_density(catalog::w(3), PartitionMask::of(3, {2}));
    CHECK_THAT(w(0, 0).real(), WithinAbs(2.0 / 3.0, 1e-15));
    CHECK_THAT(w(1, 1).real(), WithinAbs(1.0 / 3.0, 1e-15));
    CHECK(std::abs(w(0, 1)) < 1e-15);
    const CMatrix pair = oracle::reduced_density(catalog::w(3), PartitionMask::of(3, {0, 1}));
    CHECK_THAT(pair(1, 2).real(), WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THAT(pair(0, 0).real(), WithinAbs(1.0 / 3.0, 1e-15));
    auto ev = oracle::eigenvalues(pair);
    std::sort(ev.begin(), ev.end());
    CHECK_THAT(ev[3], WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(ev[2], WithinAbs(1.0 / 3.0, 1e-12));
    CHECK_THAT(ev[0], WithinAbs(0.0, 1e-12));
}

TEST_CASE("oracle gaps and M_E on named states", "[oracle]") {
    const auto h3 = catalog::unit_qubits(3);
    CHECK_THAT(oracle::gap(catalog::ghz(3), PartitionMask::of(3, {0}), h3), WithinAbs(1.0, 1e-12));
    CHECK_THAT(oracle::gap(catalog::w(3), PartitionMask::of(3, {0}), h3), WithinAbs(2.0 / 3.0, 1e-12));
    CHECK(oracle::gap(catalog::w(3), PartitionMask::full(3), h3) == 0.0);
    CHECK_THAT(oracle::me(catalog::ghz(3), PartitionMask::full(3), h3), WithinAbs(0.75, 1e-12));
    CHECK_THAT(oracle::me(catalog::w(4), PartitionMask::full(4), catalog::unit_qubits(4)), WithinAbs(0.625, 1e-12));
    CHECK(oracle::subsystem_energies(h3, PartitionMask::of(3, {0, 2})) == std::vector<double>{0, 1, 1, 2});
}
