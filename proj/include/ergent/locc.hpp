#pragma once

// Local instruments and outcome-conditioned LOCC trees acting on pure
// states, plus the trial used to probe average monotonicity of M_E.

#include <cstdint>
#include <vector>

#include "ergent/measures.hpp"
#include "ergent/random.hpp"

namespace ergent {

inline constexpr int kMaxInstrumentOutcomes = 4;
inline constexpr int kMaxLoccDepth = 2;

/// Kraus operators {K_a} on one party, sum_a K_a^dagger K_a = I (1e-10).
struct LocalInstrument {
    int party = 0;
    std::vector<CMatrix> kraus;

    void validate(const Register& reg) const;
};

/// One instrument followed, per outcome, by an optional subtree. `next` is
/// either empty (leaf) or has one entry per Kraus operator.
struct LoccTree {
    LocalInstrument instrument;
    std::vector<LoccTree> next;

    int depth() const;
    void validate(const Register& reg) const;
};

struct Branch {
    double probability = 0.0;
    PureState state;
    int outcome = 0;  // Kraus index that produced the branch
};

/// Outcome states K_a|psi>/sqrt(p_a); branches with p_a < 1e-12 are dropped.
std::vector<Branch> apply_instrument(const PureState& psi, const LocalInstrument& inst);

/// Leaves of the tree with their joint probabilities.
std::vector<Branch> apply_tree(const PureState& psi, const LoccTree& tree);

/// Kraus operators are the d x d row blocks of the first d columns of a Haar
/// unitary on C^{d * n_outcomes}.
LocalInstrument random_instrument(int party, int d, int n_outcomes, std::uint64_t seed);
LocalInstrument random_instrument(int party, int d, int n_outcomes, CounterRng& rng);

/// Random tree of the given depth; each node picks a random party and
/// 1..max_outcomes outcomes.
LoccTree random_locc_tree(const Register& reg, int depth, int max_outcomes, CounterRng& rng);

struct MonotonicityTrial {
    double before = 0.0;
    double after_avg = 0.0;
    bool holds = false;  // after_avg <= before + 1e-9
};

MonotonicityTrial monotonicity_trial(const PureState& psi, const LoccTree& tree, const SubsetChoice& s,
                                     const LocalHamiltonian& h);

/// Same comparison for the single ergotropic gap of cut X.
MonotonicityTrial cut_monotonicity_trial(const PureState& psi, const LoccTree& tree, const PartitionMask& x,
                                         const LocalHamiltonian& h);

}  // namespace ergent
