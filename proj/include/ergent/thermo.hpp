#pragma once

// Work-extraction bookkeeping for local Hamiltonians diagonal in the
// computational basis: passive/active energies, ergotropy, anti-ergotropy,
// battery capacity, and the bipartite ergotropic and capacity gaps.

#include <string>
#include <vector>

#include "ergent/qcore.hpp"

namespace ergent {

/// Per-party energy ladders eps_0 = 0 <= eps_1 <= ... <= eps_{d-1}. The
/// composite Hamiltonian is the sum of the local terms. Repeated local
/// levels (eps_1 = 0 or eps_j = eps_{j+1}) are rejected unless
/// `allow_degenerate` is set.
class LocalHamiltonian {
public:
    LocalHamiltonian(Register reg, std::vector<std::vector<double>> energies, bool allow_degenerate = false,
                     std::string id = "custom");

    /// eps_j = j * step on every party.
    static LocalHamiltonian equispaced(const Register& reg, double step = 1.0);
    /// Per-party steps, eps^{(i)}_j = j * steps[i].
    static LocalHamiltonian equispaced(const Register& reg, const std::vector<double>& steps);
    /// H_i = |L_i><L_i| with L_i = min(level, d_i - 1); requires L_i = d_i - 1
    /// (a projector on a lower level would not be a nondecreasing ladder).
    static LocalHamiltonian top_projector(const Register& reg, int level);

    const Register& reg() const noexcept { return reg_; }
    const std::vector<double>& energies(int party) const { return energies_.at(static_cast<std::size_t>(party)); }
    const std::vector<std::vector<double>>& all_energies() const noexcept { return energies_; }
    const std::string& id() const noexcept { return id_; }
    bool allows_degenerate() const noexcept { return allow_degenerate_; }

    /// True when every party's ladder is j * eps for some eps > 0 (within 1e-12 relative).
    bool is_equispaced() const;
    /// True when every party is a qubit with energies (0, 1).
    bool is_unit_qubit() const;

    /// Hamiltonian of the parties in `subset`, in increasing party order.
    LocalHamiltonian restricted(const PartitionMask& subset) const;

    /// Energy of every basis state of the subsystem `subset`, in that
    /// subsystem's own (big-endian) index order.
    std::vector<double> basis_energies(const PartitionMask& subset) const;

private:
    Register reg_;
    std::vector<std::vector<double>> energies_;
    bool allow_degenerate_ = false;
    std::string id_;
};

/// Sorted composite energies of a subsystem.
struct CompositeEnergyLadder {
    PartitionMask subset;
    std::vector<double> levels;  // nondecreasing, levels[0] == 0

    double max_level() const { return levels.empty() ? 0.0 : levels.back(); }
};

CompositeEnergyLadder ladder(const LocalHamiltonian& h, const PartitionMask& subset);

/// Elementwise sum eps^X_j + eps^{X^c}_j of the two sorted side ladders,
/// truncated to the shorter one: the energies a shared Schmidt frame pairs.
std::vector<double> cut_ladder(const LocalHamiltonian& h, const PartitionMask& x);

/// sum_j lambda_j^down * eps_j^up. The spectrum is zero-padded to the ladder;
/// nonzero entries beyond the ladder length are an error.
double passive_energy(const Spectrum& spec, const CompositeEnergyLadder& lad);
double passive_energy(std::span<const double> spec_desc, std::span<const double> levels_asc);
/// sum_j lambda_j^down * eps_j^down.
double active_energy(const Spectrum& spec, const CompositeEnergyLadder& lad);
double active_energy(std::span<const double> spec_desc, std::span<const double> levels_asc);

/// tr(rho H) for rho on the register of `subset`'s parties.
double mean_energy(const DensityOperator& rho, const LocalHamiltonian& h, const PartitionMask& subset);

double ergotropy(const DensityOperator& rho, const LocalHamiltonian& h, const PartitionMask& subset);
double anti_ergotropy(const DensityOperator& rho, const LocalHamiltonian& h, const PartitionMask& subset);
double battery_capacity(const DensityOperator& rho, const LocalHamiltonian& h, const PartitionMask& subset);

/// Delta_{X|X^c} = E_p(rho_X) + E_p(rho_{X^c}) - E_p(rho). Zero on trivial cuts.
double ergotropic_gap(const DensityOperator& rho, const PartitionMask& x, const LocalHamiltonian& h);
/// Pure-state form: E_p(rho_X) + E_p(rho_{X^c}).
double ergotropic_gap(const PureState& psi, const PartitionMask& x, const LocalHamiltonian& h);

/// C(rho) - C(rho_X) - C(rho_{X^c}). Zero on trivial cuts.
double capacity_gap(const DensityOperator& rho, const PartitionMask& x, const LocalHamiltonian& h);
double capacity_gap(const PureState& psi, const PartitionMask& x, const LocalHamiltonian& h);

/// sum_i E_p(rho_{A_i}) over single parties.
double fully_separable_gap(const PureState& psi, const LocalHamiltonian& h);

}  // namespace ergent
