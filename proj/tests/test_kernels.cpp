#include <catch_amalgamated.hpp>

#include <omp.h>

#include "ergent/catalog.hpp"
#include "ergent/kernels.hpp"
#include "ergent/oracle.hpp"
#include "ergent/random.hpp"

using namespace ergent;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<PartitionMask> all_cuts(int n) {
    std::vector<PartitionMask> cuts;
    for (std::uint32_t b = 0; b < (1u << n); ++b) cuts.emplace_back(n, b);
    return cuts;
}

}  // namespace

TEST_CASE("serial and parallel cut evaluation agree bit for bit", "[kernels]") {
    omp_set_num_threads(4);
    CounterRng rng(31);
    for (int n : {3, 5, 8, 10}) {
        const Register reg = Register::qubits(n);
        const auto h = LocalHamiltonian::equispaced(reg, 0.7);
        const CutPlan plan(h, all_cuts(n));
        const auto psi = random_state(reg, rng);
        for (GapKind kind : {GapKind::ergotropic, GapKind::capacity}) {
            const auto a = plan.evaluate_serial(psi.view(), kind);
            const auto b = plan.evaluate_parallel(psi.view(), kind);
            REQUIRE(a.size() == b.size());
            for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
            const auto c = plan.evaluate(psi.view(), kind, Exec::parallel);
            CHECK(c == a);
        }
    }
}

TEST_CASE("cut gaps match the thermo reference and the oracle", "[kernels][oracle]") {
    CounterRng rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 3;
        std::vector<int> dims(static_cast<std::size_t>(n));
        for (int& d : dims) d = rng.integer(2, 3);
        const Register reg(dims);
        std::vector<std::vector<double>> e;
        for (int d : dims) {
            std::vector<double> lv{0.0};
            for (int j = 1; j < d; ++j) lv.push_back(lv.back() + rng.uniform(0.1, 1.5));
            e.push_back(lv);
        }
        const LocalHamiltonian h(reg, e);
        const auto psi = random_state(reg, rng);
        const CutPlan plan(h, all_cuts(n));
        const auto erg = plan.evaluate_serial(psi.view(), GapKind::ergotropic);
        const auto cap = plan.evaluate_serial(psi.view(), GapKind::capacity);
        for (std::size_t k = 0; k < plan.size(); ++k) {
            const auto& x = plan.cuts()[k];
            CHECK_THAT(erg[k], WithinAbs(ergotropic_gap(psi, x, h), 1e-10));
            CHECK_THAT(erg[k], WithinAbs(oracle::gap(psi, x, h), 1e-9));
            CHECK_THAT(cap[k], WithinAbs(capacity_gap(psi, x, h), 1e-10));
        }
    }
}

TEST_CASE("small-side spectrum agrees with marginal_spectrum", "[kernels]") {
    CounterRng rng(33);
    const Register reg({3, 2, 2});
    const auto psi = random_state(reg, rng);
    const auto x = PartitionMask::of(3, {1, 2});
    const auto a = small_side_spectrum(reg, x, psi.view());
    const auto b = marginal_spectrum(psi, x);
    REQUIRE(a.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(a[i], WithinAbs(b.padded(4)[i], 1e-12));
}

TEST_CASE("plans reject mismatched inputs", "[kernels]") {
    const auto h = catalog::unit_qubits(3);
    CHECK_THROWS_AS(CutPlan(h, {PartitionMask(4, 1)}), ValidationError);
    const CutPlan plan(h, all_cuts(3));
    const auto psi = catalog::ghz(4);
    CHECK_THROWS_AS(plan.evaluate_serial(psi.view(), GapKind::ergotropic), ValidationError);
    CHECK_THROWS_AS(plan.evaluate_parallel(psi.view(), GapKind::ergotropic), ValidationError);
}

TEST_CASE("GHZ cuts all give 1", "[kernels]") {
    for (int n : {3, 6, 9}) {
        const CutPlan plan(catalog::unit_qubits(n), all_cuts(n));
        const auto g = plan.evaluate(catalog::ghz(n).view(), GapKind::ergotropic);
        for (std::size_t k = 1; k + 1 < g.size(); ++k) CHECK_THAT(g[k], WithinAbs(1.0, 1e-12));
        CHECK(g.front() == 0.0);
        CHECK(g.back() == 0.0);
    }
}
