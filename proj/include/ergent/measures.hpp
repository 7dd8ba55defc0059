#pragma once

// Concentratable-entanglement measures for pure states and the checkers for
// the relations they satisfy.
//
// For a subset s of the parties, M_E^(s) averages the ergotropic gap
// Delta_{X|X^c} over all 2^|s| subsets X of s (trivial cuts contribute 0);
// M_B^(s) does the same with the battery-capacity gap. Delta_min, Delta_avg
// and Delta_V aggregate the 2^n - 2 nontrivial cuts of the full party set.

#include <map>
#include <string>
#include <vector>

#include "ergent/kernels.hpp"

namespace ergent {

struct RoofConfig;

enum class MeasureKind { ME, MB, DMIN, DAVG, DVOL, FULLSEP };

std::string to_string(MeasureKind k);
MeasureKind parse_measure_kind(const std::string& s);

/// Nonempty set of parties over whose power set a measure averages.
class SubsetChoice {
public:
    explicit SubsetChoice(PartitionMask parties);
    static SubsetChoice full(int parties) { return SubsetChoice(PartitionMask::full(parties)); }

    const PartitionMask& mask() const noexcept { return mask_; }
    int size() const noexcept { return mask_.size(); }

private:
    PartitionMask mask_;
};

struct MeasureReport {
    MeasureKind kind = MeasureKind::ME;
    double value = 0.0;
    /// Gap per X in P(s) (ME, MB) or per nontrivial cut of [n] (DMIN/DAVG/DVOL);
    /// empty for FULLSEP.
    std::map<PartitionMask, double> per_cut;
    PartitionMask subset;
    std::string hamiltonian_id;
};

/// Reusable evaluator of M_E^(s) or M_B^(s) on raw amplitude vectors.
/// Complementary cuts share one Schmidt computation.
class PowerSetEvaluator {
public:
    PowerSetEvaluator(const LocalHamiltonian& h, const SubsetChoice& s, GapKind kind);

    double value(std::span<const Complex> amps, Exec exec = Exec::parallel) const;
    /// Gap for each X in P(s), keyed by X.
    std::map<PartitionMask, double> per_cut(std::span<const Complex> amps, Exec exec = Exec::parallel) const;

    const SubsetChoice& subset() const noexcept { return subset_; }
    GapKind kind() const noexcept { return kind_; }

private:
    SubsetChoice subset_;
    GapKind kind_;
    CutPlan plan_;
    std::vector<PartitionMask> members_;       // P(s) in increasing bit order
    std::vector<std::size_t> plan_index_;      // members_[i] -> plan entry
};

MeasureReport me_pure(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h,
                      Exec exec = Exec::parallel);
MeasureReport mb_pure(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h,
                      Exec exec = Exec::parallel);

/// Report for Delta_min / Delta_avg / Delta_V over the 2^n - 2 nontrivial cuts.
/// `s` must be the full party set.
MeasureReport bipartition_report(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h,
                                 MeasureKind kind, Exec exec = Exec::parallel);
double delta_min(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h);
double delta_avg(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h);
double delta_vol(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h);

/// Any of the six kinds; FULLSEP ignores `s`.
MeasureReport measure(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h, MeasureKind kind,
                      Exec exec = Exec::parallel);

struct Theorem1Check {
    double mb = 0.0;
    double me = 0.0;
    double ratio = 2.0;  // reported as 2 when me == 0
    bool holds = false;  // |mb - 2 me| <= 1e-9 max(1, mb)
};
/// Requires an equispaced Hamiltonian; throws ValidationError otherwise.
Theorem1Check relation_theorem1_check(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h);

struct ContinuityCheck {
    double lhs = 0.0;
    double trace_distance = 0.0;
    double bound = 0.0;
    bool holds = false;
};
/// Spectra of two states sharing a Schmidt frame across one cut, paired
/// termwise with the cut ladder eps_j = eps^X_j + eps^{X^c}_j.
/// lhs = |sum_j (lambda_j - eta_j) eps_j|, bound = 2 eps_max D.
ContinuityCheck continuity_check(const Spectrum& a, const Spectrum& b, std::span<const double> cut_levels);

struct MajorizationCheck {
    bool premise = false;     // every nontrivial cut: spec(psi) ≺ spec(phi)
    bool conclusion = false;  // M_E(psi) >= M_E(phi) - 1e-9
    double me_psi = 0.0;
    double me_phi = 0.0;
};
MajorizationCheck majorization_check(const PureState& psi, const PureState& phi, const SubsetChoice& s,
                                     const LocalHamiltonian& h);

struct MonogamyCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    std::vector<double> pair_values;  // roof M_E of rho_{A_i A_j}, j != i, in party order
    bool holds = false;
};
inline constexpr double kMonogamySlack = 1e-3;
/// Requires unit qubit Hamiltonians (|1><1| per party) and alpha >= 1.
MonogamyCheck monogamy_check(const PureState& psi, int party, double alpha, const LocalHamiltonian& h,
                             const RoofConfig& cfg);

struct GmeCheck {
    double me = 0.0;
    double sep_threshold = 0.0;
    bool gme_certified = false;
    bool ent_certified = false;
};
/// Three qubits, H = |1><1| per party, s = [3].
GmeCheck gme_criterion_3q(const PureState& psi);

struct Prop4Check {
    double dmin = 0.0;
    double me = 0.0;
    double davg = 0.0;
    double dvol = 0.0;
    double vol_lower_bound = 0.0;  // 2^{-(2^n - 1 + n)} * prod of nontrivial gaps
    double fullsep = 0.0;
    bool chain_holds = false;       // dmin <= me <= davg
    bool scaled_chain_holds = false;  // (1 - 2^{1-n}) dmin <= me
    bool identity_holds = false;    // me == (1 - 2^{1-n}) davg
    bool volume_holds = false;
    bool fullsep_holds = false;
    bool holds = false;
};
/// s = [n]; the volume and fully separable bounds assume H = |1><1| per qubit.
Prop4Check prop4_bounds_check(const PureState& psi, const LocalHamiltonian& h);

}  // namespace ergent
