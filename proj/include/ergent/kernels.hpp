#pragma once

// Per-cut gap evaluation for pure states. A CutPlan fixes the register, the
// Hamiltonian and a list of cuts once; evaluating it on an amplitude vector
// returns one gap per cut. The serial path is the reference implementation;
// the OpenMP path distributes cuts across threads and must agree with it
// bit for bit (each cut is computed by the same code in both paths).

#include <span>
#include <vector>

#include "ergent/thermo.hpp"

namespace ergent {

enum class GapKind { ergotropic, capacity };

class CutPlan {
public:
    CutPlan(const LocalHamiltonian& h, std::vector<PartitionMask> cuts);

    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<PartitionMask>& cuts() const noexcept { return cuts_; }
    const Register& reg() const noexcept { return reg_; }

    /// Gap of cut k for normalized amplitudes; trivial cuts give 0.
    double gap(std::size_t k, std::span<const Complex> amps, GapKind kind) const;

    std::vector<double> evaluate(std::span<const Complex> amps, GapKind kind, Exec exec = Exec::parallel) const;
    std::vector<double> evaluate_serial(std::span<const Complex> amps, GapKind kind) const;
    std::vector<double> evaluate_parallel(std::span<const Complex> amps, GapKind kind) const;

private:
    struct Entry {
        bool trivial = false;
        PartitionMask small;          // side diagonalized (the smaller one)
        std::size_t rows = 0;         // dim of `small`
        std::size_t cols = 0;         // dim of the other side
        std::vector<double> small_up;    // small-side ladder, ascending
        std::vector<double> large_up;    // lowest `rows` levels of the large side
        std::vector<double> large_down;  // highest `rows` levels, descending
        double small_max = 0.0;
        double large_max = 0.0;
    };

    Register reg_;
    std::vector<PartitionMask> cuts_;
    std::vector<Entry> entries_;
    double total_max_ = 0.0;
};

/// Eigenvalues of rho_X for the plan entry's small side, clamped and
/// normalized, nonincreasing. Exposed for tests.
std::vector<double> small_side_spectrum(const Register& reg, const PartitionMask& small,
                                        std::span<const Complex> amps);

}  // namespace ergent
