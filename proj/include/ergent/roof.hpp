#pragma once

// Convex-roof estimation of M_E^(s) / M_B^(s) for mixed states.
//
// Every size-m pure-state decomposition of a rank-r state rho = sum_i mu_i
// |e_i><e_i| is |psi~_k> = sum_i U_{ki} sqrt(mu_i) |e_i> for an m x r
// isometry U. The estimator minimizes sum_k p_k M(psi_k) over U with
// random restarts and a derivative-free local search made of Givens
// rotations between pairs of ensemble members. The result is an upper
// bound on the roof: it is the value of an explicit decomposition.

#include <cstdint>
#include <vector>

#include "ergent/measures.hpp"

namespace ergent {

struct EnsembleMember {
    double probability = 0.0;
    PureState state;
};

struct Ensemble {
    std::vector<EnsembleMember> members;

    /// sum_k p_k |psi_k><psi_k|.
    CMatrix reconstruct() const;
};

struct RoofConfig {
    int ensemble_size = 0;  // 0 means rank^2
    int restarts = 64;
    int max_iters = 400;    // local-search sweeps per restart
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
};

struct RoofResult {
    double value = 0.0;
    Ensemble ensemble;
    bool converged = false;
    int restarts = 0;
    int ensemble_size = 0;
    int rank = 0;
};

/// Eigen-ensemble parameterization: rows of U select the members. U must be
/// m x r with orthonormal columns (1e-10), r = rank(rho). Members with
/// p < 1e-12 are dropped.
Ensemble decomposition_from_unitary(const DensityOperator& rho, const CMatrix& u);

/// Numerical rank of rho (eigenvalues above 1e-12).
int numerical_rank(const DensityOperator& rho);

RoofResult roof_me(const DensityOperator& rho, const SubsetChoice& s, const LocalHamiltonian& h,
                   const RoofConfig& cfg = {});
RoofResult roof_mb(const DensityOperator& rho, const SubsetChoice& s, const LocalHamiltonian& h,
                   const RoofConfig& cfg = {});

/// Average of M over the eigen-ensemble (U = identity); the estimator never
/// exceeds it.
double eigen_ensemble_average(const DensityOperator& rho, const SubsetChoice& s, const LocalHamiltonian& h,
                              GapKind kind = GapKind::ergotropic);

}  // namespace ergent
