#include <catch_amalgamated.hpp>

#include <cmath>

#include "ergent/catalog.hpp"
#include "ergent/oracle.hpp"
#include "ergent/random.hpp"
#include "support.hpp"

using namespace ergent;
using Catch::Matchers::WithinAbs;
using testing::diag_rho;
using testing::ket;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("register indexing is big-endian", "[qcore]") {
    const Register reg({2, 3, 2});
    CHECK(reg.size() == 12);
    CHECK(reg.index(std::vector<int>{1, 0, 0}) == 6);
    CHECK(reg.index(std::vector<int>{0, 2, 1}) == 5);
    CHECK(reg.labels(11) == std::vector<int>{1, 2, 1});
    for (std::size_t i = 0; i < reg.size(); ++i) CHECK(reg.index(reg.labels(i)) == i);
    CHECK_THROWS_AS(Register({2, 1}), ValidationError);
    CHECK_THROWS_AS(Register(std::vector<int>{}), ValidationError);
    CHECK_THROWS_AS(Register::qubits(21), ValidationError);
    CHECK_NOTHROW(Register::qubits(20));
}

TEST_CASE("partition masks", "[qcore]") {
    const auto x = PartitionMask::of(4, {0, 2});
    CHECK(x.size() == 2);
    CHECK(x.complement() == PartitionMask::of(4, {1, 3}));
    CHECK(x.members() == std::vector<int>{0, 2});
    CHECK(PartitionMask::none(3).trivial());
    CHECK(PartitionMask::full(3).trivial());
    CHECK_FALSE(x.trivial());
    CHECK_THROWS_AS(PartitionMask(3, 0b1000), ValidationError);
}

TEST_CASE("pure states require unit norm", "[qcore]") {
    CVector a(2);
    a << 1.0, 1.0;
    CHECK_THROWS_AS(PureState(Register({2}), a), ValidationError);
    const auto p = PureState::normalized(Register({2}), a);
    CHECK_THAT(p.amplitudes().norm(), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(PureState::normalized(Register({2}), CVector::Zero(2)), ValidationError);
}

TEST_CASE("tensor_product examples", "[qcore]") {
    const auto k0 = PureState::basis(Register({2}), {0});
    const auto k1 = PureState::basis(Register({2}), {1});
    const auto p01 = tensor_product(k0, k1);
    CHECK(p01.reg().dims() == std::vector<int>{2, 2});
    CHECK(std::abs(p01.amplitudes()[1] - Complex(1.0)) == 0.0);

    const auto plus = ket({2}, {{{0}, 1.0}, {{1}, 1.0}});
    const auto pp = tensor_product(plus, plus);
    for (int i = 0; i < 4; ++i) CHECK_THAT(std::abs(pp.amplitudes()[i] - Complex(0.5)), WithinAbs(0.0, 1e-15));

    const double t = std::numbers::pi / 4;
    const auto pair = ket({2, 2}, {{{0, 0}, std::cos(t)}, {{1, 1}, std::sin(t)}});
    const auto three = tensor_product(tensor_product(pair, pair), pair);
    int nonzero = 0;
    for (Eigen::Index i = 0; i < three.amplitudes().size(); ++i) {
        if (std::abs(three.amplitudes()[i]) > 1e-14) {
            ++nonzero;
            CHECK_THAT(three.amplitudes()[i].real(), WithinAbs(std::pow(2.0, -1.5), 1e-15));
        }
    }
    CHECK(nonzero == 8);
    CHECK_THAT(three.amplitudes().norm(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("partial_trace examples", "[qcore]") {
    const auto ghz = DensityOperator::from_pure(catalog::ghz(3));
    const auto a = partial_trace(ghz, PartitionMask::of(3, {0}));
    CMatrix half = CMatrix::Identity(2, 2) * 0.5;
    CHECK(max_abs(a.matrix() - half) < 1e-15);

    const auto w = partial_trace(DensityOperator::from_pure(catalog::w(3)), PartitionMask::of(3, {0}));
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(0, 0) = 2.0 / 3.0;
    expect(1, 1) = 1.0 / 3.0;
    CHECK(max_abs(w.matrix() - expect) < 1e-15);

    const auto prod = DensityOperator::from_pure(PureState::basis(Register({2, 2}), {0, 1}));
    const auto b = partial_trace(prod, PartitionMask::of(2, {1}));
    CMatrix one = CMatrix::Zero(2, 2);
    one(1, 1) = 1.0;
    CHECK(max_abs(b.matrix() - one) < 1e-15);

    CHECK_THROWS_AS(partial_trace(ghz, PartitionMask::none(3)), ValidationError);
}

TEST_CASE("partial trace is associative and matches the pure-state path", "[qcore][property]") {
    CounterRng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + trial % 2;
        std::vector<int> dims(static_cast<std::size_t>(n));
        for (int& d : dims) d = rng.integer(2, 3);
        const Register reg(dims);
        const auto psi = random_state(reg, rng);
        const auto rho = DensityOperator::from_pure(psi);
        const auto keep_bits = static_cast<std::uint32_t>(rng.integer(1, (1 << n) - 1));
        const PartitionMask keep(n, keep_bits);
        const auto direct = partial_trace(rho, keep);
        CHECK(max_abs(direct.matrix() - reduced_density(psi, keep).matrix()) < 1e-12);
        CHECK(max_abs(direct.matrix() - oracle::reduced_density(psi, keep)) < 1e-12);

        // Trace out one kept party in a second step.
        const auto members = keep.members();
        if (members.size() < 2) continue;
        const int drop = members[static_cast<std::size_t>(rng.integer(0, static_cast<int>(members.size()) - 1))];
        std::vector<int> inner;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i] != drop) inner.push_back(static_cast<int>(i));
        }
        const auto two_step = partial_trace(direct, PartitionMask::of(static_cast<int>(members.size()), inner));
        std::vector<int> outer;
        for (int m : members) {
            if (m != drop) outer.push_back(m);
        }
        const auto one_step = partial_trace(rho, PartitionMask::of(n, outer));
        CHECK(max_abs(two_step.matrix() - one_step.matrix()) < 1e-10);
    }
}

TEST_CASE("marginal_spectrum examples", "[qcore]") {
    auto s = marginal_spectrum(catalog::ghz(3), PartitionMask::of(3, {0}));
    REQUIRE(s.size() == 2);
    CHECK_THAT(s[0], WithinAbs(0.5, 1e-12));
    CHECK_THAT(s[1], WithinAbs(0.5, 1e-12));

    s = marginal_spectrum(catalog::w(4), PartitionMask::of(4, {0, 1}));
    REQUIRE(s.size() == 4);
    const std::vector<double> expect{0.5, 0.5, 0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(s[i], WithinAbs(expect[i], 1e-12));

    const auto t = ket({2, 2, 2}, {{{0, 0, 0}, 1.0 / std::sqrt(3.0)}, {{1, 1, 1}, std::sqrt(2.0 / 3.0)}});
    s = marginal_spectrum(t, PartitionMask::of(3, {0}));
    CHECK_THAT(s[0], WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(s[1], WithinAbs(1.0 / 3.0, 1e-12));

    CHECK_THROWS_AS(marginal_spectrum(t, PartitionMask::full(3)), ValidationError);
    CHECK_THROWS_AS(marginal_spectrum(t, PartitionMask::none(3)), ValidationError);
}

TEST_CASE("Schmidt symmetry of marginal spectra", "[qcore][property]") {
    CounterRng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 3;
        std::vector<int> dims(static_cast<std::size_t>(n));
        for (int& d : dims) d = rng.integer(2, 3);
        const Register reg(dims);
        const auto psi = random_state(reg, rng);
        const PartitionMask x(n, static_cast<std::uint32_t>(rng.integer(1, (1 << n) - 2)));
        const auto a = marginal_spectrum(psi, x), b = marginal_spectrum(psi, x.complement());
        const std::size_t len = std::max(a.size(), b.size());
        const auto pa = a.padded(len), pb = b.padded(len);
        for (std::size_t i = 0; i < len; ++i) CHECK_THAT(pa[i], WithinAbs(pb[i], 1e-9));
        CHECK_THAT(a.sum(), WithinAbs(1.0, 1e-8));
    }
}

TEST_CASE("spectrum clamping", "[qcore]") {
    const auto s = clamp_spectrum({0.6, 0.4, -5e-10});
    CHECK(s[2] == 0.0);
    CHECK_THAT(s.sum(), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(clamp_spectrum({1.0, -1e-8}), ValidationError);
    CHECK_THROWS_AS(Spectrum(std::vector<double>{0.3, 0.7}), ValidationError);
    CHECK(Spectrum::from_values({0.3, 0.7})[0] == 0.7);
}

TEST_CASE("density operator validation", "[qcore]") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 0.5;
    CHECK_THROWS_AS(DensityOperator(Register({2}), m), ValidationError);
    m(1, 1) = 0.5;
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityOperator(Register({2}), m), ValidationError);
    m(1, 0) = 0.1;
    CHECK_NOTHROW(DensityOperator(Register({2}), m));
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.2;
    neg(1, 1) = -0.2;
    CHECK_THROWS_AS(DensityOperator(Register({2}), neg), ValidationError);
}

TEST_CASE("trace_distance examples", "[qcore]") {
    const auto rho = diag_rho({0.75, 0.25});
    CHECK_THAT(trace_distance(rho, rho), WithinAbs(0.0, 1e-15));
    CHECK_THAT(trace_distance(diag_rho({1.0, 0.0}), diag_rho({0.0, 1.0})), WithinAbs(1.0, 1e-12));
    CHECK_THAT(trace_distance(rho, diag_rho({0.25, 0.75})), WithinAbs(0.5, 1e-12));
    CHECK_THROWS_AS(trace_distance(rho, diag_rho({0.25, 0.25, 0.25, 0.25})), ValidationError);
}

TEST_CASE("trace distance is a metric on random states", "[qcore][property]") {
    CounterRng rng(13);
    const Register reg({2, 3});
    for (int trial = 0; trial < 100; ++trial) {
        auto random_mixed = [&] {
            const auto u = random_unitary(6, rng);
            const auto p = random_probabilities(6, rng);
            CMatrix m = CMatrix::Zero(6, 6);
            for (int i = 0; i < 6; ++i) m += p[static_cast<std::size_t>(i)] * u.col(i) * u.col(i).adjoint();
            return DensityOperator(reg, m);
        };
        const auto a = random_mixed(), b = random_mixed(), c = random_mixed();
        const double ab = trace_distance(a, b), bc = trace_distance(b, c), ac = trace_distance(a, c);
        CHECK(ac <= ab + bc + 1e-9);
        CHECK_THAT(ab, WithinAbs(trace_distance(b, a), 1e-12));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0 + 1e-12);
    }
}

TEST_CASE("majorizes examples", "[qcore]") {
    using V = std::vector<double>;
    CHECK(majorizes(Spectrum(V{0.5, 0.5}), Spectrum(V{1.0, 0.0})));
    CHECK_FALSE(majorizes(Spectrum(V{1.0, 0.0}), Spectrum(V{0.5, 0.5})));
    CHECK(majorizes(Spectrum(V{0.5, 0.3, 0.2}), Spectrum(V{0.6, 0.3, 0.1})));
    CHECK(majorizes(Spectrum(V{0.5, 0.5}), Spectrum(V{1.0})));
}

TEST_CASE("majorization is reflexive and transitive", "[qcore][property]") {
    CounterRng rng(14);
    int chains = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = rng.integer(2, 5);
        const auto a = Spectrum(random_probabilities(n, rng));
        const auto b = Spectrum(random_probabilities(n, rng));
        const auto c = Spectrum(random_probabilities(n, rng));
        CHECK(majorizes(a, a));
        if (majorizes(a, b) && majorizes(b, c)) {
            ++chains;
            CHECK(majorizes(a, c));
        }
    }
    CHECK(chains > 0);
}

TEST_CASE("Hermitian eigensolver agrees with the general solver", "[qcore]") {
    CounterRng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = rng.integer(2, 9);
        CMatrix g(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
        }
        const CMatrix h = g + g.adjoint();
        auto ours = hermitian_eigenvalues(h);
        auto ref = oracle::eigenvalues(h);
        std::sort(ref.begin(), ref.end(), std::greater<>());
        REQUIRE(ours.size() == ref.size());
        for (std::size_t i = 0; i < ours.size(); ++i) CHECK_THAT(ours[i], WithinAbs(ref[i], 1e-9));
        const auto eig = hermitian_eigen(h);
        for (int k = 0; k < d; ++k) {
            const CVector r = h * eig.vectors.col(k) - eig.values[static_cast<std::size_t>(k)] * eig.vectors.col(k);
            CHECK(r.norm() < 1e-9);
        }
    }
}
