#include "ergent/kernels.hpp"

#include <algorithm>

#include <omp.h>

namespace ergent {

std::vector<double> small_side_spectrum(const Register& reg, const PartitionMask& small,
                                        std::span<const Complex> amps) {
    const auto rows = static_cast<Eigen::Index>(reg.subsystem_size(small));
    const auto cols = static_cast<Eigen::Index>(reg.size()) / rows;
    CMatrix m(rows, cols);
    for_each_split(reg, small, [&](std::size_t i, std::size_t ix, std::size_t ic) {
        m(static_cast<Eigen::Index>(ix), static_cast<Eigen::Index>(ic)) = amps[i];
    });
    CMatrix gram(rows, rows);
    gram.noalias() = m * m.adjoint();
    return clamp_spectrum(hermitian_eigenvalues(gram)).values();
}

CutPlan::CutPlan(const LocalHamiltonian& h, std::vector<PartitionMask> cuts) : reg_(h.reg()), cuts_(std::move(cuts)) {
    const int n = reg_.parties();
    total_max_ = ladder(h, PartitionMask::full(n)).max_level();
    entries_.reserve(cuts_.size());
    for (const auto& cut : cuts_) {
        if (cut.parties() != n) throw ValidationError("cut does not match the Hamiltonian register");
        Entry e;
        if (cut.trivial()) {
            e.trivial = true;
            entries_.push_back(std::move(e));
            continue;
        }
        const std::size_t dx = reg_.subsystem_size(cut);
        const std::size_t dc = reg_.size() / dx;
        e.small = dx <= dc ? cut : cut.complement();
        const PartitionMask large = e.small.complement();
        e.rows = std::min(dx, dc);
        e.cols = std::max(dx, dc);
        e.small_up = ladder(h, e.small).levels;
        auto lv = ladder(h, large).levels;
        e.small_max = e.small_up.back();
        e.large_max = lv.back();
        e.large_up.assign(lv.begin(), lv.begin() + static_cast<std::ptrdiff_t>(e.rows));
        e.large_down.assign(lv.rbegin(), lv.rbegin() + static_cast<std::ptrdiff_t>(e.rows));
        entries_.push_back(std::move(e));
    }
}

double CutPlan::gap(std::size_t k, std::span<const Complex> amps, GapKind kind) const {
    const Entry& e = entries_.at(k);
    if (e.trivial) return 0.0;
    const auto lam = small_side_spectrum(reg_, e.small, amps);
    if (kind == GapKind::ergotropic) {
        double g = 0.0;
        for (std::size_t j = 0; j < lam.size(); ++j) g += lam[j] * (e.small_up[j] + e.large_up[j]);
        return g;
    }
    // C(psi) - C(rho_small) - C(rho_large); the global pure state has capacity E_max.
    const std::size_t r = lam.size();
    double cap_small = 0.0, cap_large = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
        cap_small += lam[j] * (e.small_up[r - 1 - j] - e.small_up[j]);
        cap_large += lam[j] * (e.large_down[j] - e.large_up[j]);
    }
    return total_max_ - cap_small - cap_large;
}

std::vector<double> CutPlan::evaluate_serial(std::span<const Complex> amps, GapKind kind) const {
    if (amps.size() != reg_.size()) throw ValidationError("amplitude length does not match plan register");
    std::vector<double> out(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) out[k] = gap(k, amps, kind);
    return out;
}

std::vector<double> CutPlan::evaluate_parallel(std::span<const Complex> amps, GapKind kind) const {
    if (amps.size() != reg_.size()) throw ValidationError("amplitude length does not match plan register");
    const auto n = static_cast<std::ptrdiff_t>(entries_.size());
    std::vector<double> out(entries_.size());
    bool failed = false;
#pragma omp parallel for schedule(dynamic) shared(out, failed)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        try {
            out[static_cast<std::size_t>(k)] = gap(static_cast<std::size_t>(k), amps, kind);
        } catch (...) {
#pragma omp atomic write
            failed = true;
        }
    }
    // Re-run serially so the caller sees the original exception.
    if (failed) return evaluate_serial(amps, kind);
    return out;
}

std::vector<double> CutPlan::evaluate(std::span<const Complex> amps, GapKind kind, Exec exec) const {
    // Small plans are not worth a parallel region, and nested regions
    // (a parallel caller such as a trial sweep) stay serial.
    if (exec == Exec::serial || entries_.size() < 4 || omp_in_parallel()) return evaluate_serial(amps, kind);
    return evaluate_parallel(amps, kind);
}

}  // namespace ergent
