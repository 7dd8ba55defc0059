#include "ergent/random.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/QR>

namespace ergent {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix(mix(seed + kGolden) ^ (stream * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull))) {}

CounterRng::result_type CounterRng::operator()() noexcept {
    ++counter_;
    return mix(key_ + counter_ * kGolden);
}

CounterRng CounterRng::split(std::uint64_t child) const noexcept { return CounterRng(key_, child + 1); }

double CounterRng::uniform() noexcept { return std::uniform_real_distribution<double>(0.0, 1.0)(*this); }

double CounterRng::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

// A fresh distribution per call: no cached second variate, so each draw
// depends only on the counter position.
double CounterRng::normal() noexcept { return std::normal_distribution<double>(0.0, 1.0)(*this); }

int CounterRng::integer(int lo, int hi) noexcept { return std::uniform_int_distribution<int>(lo, hi)(*this); }

PureState random_state(const Register& reg, CounterRng& rng) {
    CVector a(static_cast<Eigen::Index>(reg.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = Complex(rng.normal(), rng.normal());
    return PureState::normalized(reg, std::move(a));
}

CMatrix random_unitary(int n, CounterRng& rng) {
    CMatrix g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        const double ad = std::abs(d);
        if (ad > 0.0) q.col(k) *= d / ad;
    }
    return q;
}

CMatrix random_isometry(int m, int r, CounterRng& rng) { return random_unitary(m, rng).leftCols(r); }

std::vector<double> random_probabilities(int n, CounterRng& rng) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double s = 0.0;
    for (double& v : p) {
        v = -std::log(1.0 - rng.uniform());
        s += v;
    }
    for (double& v : p) v /= s;
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
}

}  // namespace ergent
