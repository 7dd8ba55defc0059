#pragma once

// Brute-force reference evaluators. They share no code path with thermo or
// kernels: marginals come from explicit index loops, spectra from Eigen's
// general complex eigensolver, and passive energies from exhaustive search
// over every assignment of populations to energy levels.

#include <span>
#include <vector>

#include "ergent/thermo.hpp"

namespace ergent::oracle {

/// Largest number of injective assignments the exhaustive search will walk.
inline constexpr double kMaxAssignments = 2e7;

/// min over injective maps pi of sum_i p_i e_{pi(i)}; zero populations are
/// skipped. Neither input needs to be sorted.
double passive_energy_exhaustive(std::span<const double> populations, std::span<const double> levels);
/// max over the same maps.
double active_energy_exhaustive(std::span<const double> populations, std::span<const double> levels);

/// rho_keep from explicit loops over basis labels.
CMatrix reduced_density(const PureState& psi, const PartitionMask& keep);

/// Eigenvalues of a Hermitian matrix via the general complex eigensolver,
/// real parts, entries in [-1e-12, 0) set to 0.
std::vector<double> eigenvalues(const CMatrix& m);

/// Energies of the subsystem basis states from sums of local levels.
std::vector<double> subsystem_energies(const LocalHamiltonian& h, const PartitionMask& subset);

double gap(const PureState& psi, const PartitionMask& x, const LocalHamiltonian& h);
/// 2^{-|s|} sum_{X subset of s} gap(X), every X evaluated separately.
double me(const PureState& psi, const PartitionMask& s, const LocalHamiltonian& h);

}  // namespace ergent::oracle
