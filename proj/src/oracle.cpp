#include "ergent/oracle.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace ergent::oracle {

namespace {

template <class Better>
double exhaustive(std::span<const double> populations, std::span<const double> levels, double init, Better better) {
    std::vector<double> p;
    for (double x : populations) {
        if (x != 0.0) p.push_back(x);
    }
    if (p.size() > levels.size()) throw ValidationError("more nonzero populations than energy levels");
    double count = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) count *= static_cast<double>(levels.size() - i);
    if (count > kMaxAssignments) throw ValidationError("exhaustive assignment search is too large");

    std::vector<char> used(levels.size(), 0);
    double best = init;
    auto walk = [&](auto&& self, std::size_t i, double acc) -> void {
        if (i == p.size()) {
            if (better(acc, best)) best = acc;
            return;
        }
        for (std::size_t j = 0; j < levels.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            self(self, i + 1, acc + p[i] * levels[j]);
            used[j] = 0;
        }
    };
    walk(walk, 0, 0.0);
    return p.empty() ? 0.0 : best;
}

}  // namespace

double passive_energy_exhaustive(std::span<const double> populations, std::span<const double> levels) {
    return exhaustive(populations, levels, std::numeric_limits<double>::infinity(),
                      [](double a, double b) { return a < b; });
}

double active_energy_exhaustive(std::span<const double> populations, std::span<const double> levels) {
    return exhaustive(populations, levels, -std::numeric_limits<double>::infinity(),
                      [](double a, double b) { return a > b; });
}

CMatrix reduced_density(const PureState& psi, const PartitionMask& keep) {
    const Register& reg = psi.reg();
    const Register sub = reg.restricted(keep);
    const std::vector<int> kept = keep.members();
    const auto dk = static_cast<Eigen::Index>(sub.size());
    CMatrix rho = CMatrix::Zero(dk, dk);
    const CVector& a = psi.amplitudes();
    std::vector<int> sub_labels(kept.size());
    auto sub_index = [&](const std::vector<int>& labels) {
        for (std::size_t k = 0; k < kept.size(); ++k) sub_labels[k] = labels[static_cast<std::size_t>(kept[k])];
        return static_cast<Eigen::Index>(sub.index(sub_labels));
    };
    for (std::size_t i = 0; i < reg.size(); ++i) {
        const std::vector<int> li = reg.labels(i);
        const Eigen::Index ri = sub_index(li);
        for (std::size_t j = 0; j < reg.size(); ++j) {
            const std::vector<int> lj = reg.labels(j);
            bool traced_equal = true;
            for (int p = 0; p < reg.parties() && traced_equal; ++p) {
                if (!keep.contains(p) && li[static_cast<std::size_t>(p)] != lj[static_cast<std::size_t>(p)]) {
                    traced_equal = false;
                }
            }
            if (!traced_equal) continue;
            rho(ri, sub_index(lj)) += a[static_cast<Eigen::Index>(i)] * std::conj(a[static_cast<Eigen::Index>(j)]);
        }
    }
    return rho;
}

std::vector<double> eigenvalues(const CMatrix& m) {
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("complex eigensolver failed");
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double v = es.eigenvalues()[i].real();
        if (v < 0.0 && v >= -1e-12) v = 0.0;
        out.push_back(v);
    }
    return out;
}

std::vector<double> subsystem_energies(const LocalHamiltonian& h, const PartitionMask& subset) {
    const std::vector<int> parties = subset.members();
    const Register sub = h.reg().restricted(subset);
    std::vector<double> e(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const std::vector<int> labels = sub.labels(i);
        double acc = 0.0;
        for (std::size_t k = 0; k < parties.size(); ++k) acc += h.energies(parties[k])[static_cast<std::size_t>(labels[k])];
        e[i] = acc;
    }
    return e;
}

double gap(const PureState& psi, const PartitionMask& x, const LocalHamiltonian& h) {
    if (x.trivial()) return 0.0;
    double g = 0.0;
    for (const PartitionMask& side : {x, x.complement()}) {
        // Tiny eigenvalues of a rank-deficient marginal can come back as
        // roundoff; they are below any tolerance this oracle is used with.
        std::vector<double> ev = eigenvalues(oracle::reduced_density(psi, side));
        for (double& v : ev) {
            if (std::abs(v) < 1e-14) v = 0.0;
        }
        g += passive_energy_exhaustive(ev, subsystem_energies(h, side));
    }
    return g;
}

double me(const PureState& psi, const PartitionMask& s, const LocalHamiltonian& h) {
    const std::uint32_t bits = s.bits();
    double sum = 0.0;
    // Walk every submask of s.
    std::uint32_t sub = bits;
    while (true) {
        sum += gap(psi, PartitionMask(s.parties(), sub), h);
        if (sub == 0) break;
        sub = (sub - 1) & bits;
    }
    return std::ldexp(sum, -s.size());
}

}  // namespace ergent::oracle
