#include "ergent/locc.hpp"

#include <cmath>
#include <string>

namespace ergent {

namespace {

constexpr double kBranchDrop = 1e-12;
constexpr double kMonotoneTol = 1e-9;

CVector apply_local(const Register& reg, int party, const CMatrix& k, std::span<const Complex> amps) {
    const auto d = static_cast<std::size_t>(reg.dim(party));
    const std::size_t stride = reg.stride(party);
    const std::size_t block = d * stride;
    CVector out = CVector::Zero(static_cast<Eigen::Index>(reg.size()));
    for (std::size_t hi = 0; hi < reg.size(); hi += block) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
            const std::size_t base = hi + lo;
            for (std::size_t a = 0; a < d; ++a) {
                Complex acc(0.0, 0.0);
                for (std::size_t b = 0; b < d; ++b) {
                    acc += k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * amps[base + b * stride];
                }
                out[static_cast<Eigen::Index>(base + a * stride)] = acc;
            }
        }
    }
    return out;
}

void collect(const PureState& psi, const LoccTree& tree, double weight, std::vector<Branch>& out) {
    for (auto& br : apply_instrument(psi, tree.instrument)) {
        const double p = weight * br.probability;
        if (tree.next.empty()) {
            out.push_back({p, std::move(br.state), br.outcome});
        } else {
            collect(br.state, tree.next[static_cast<std::size_t>(br.outcome)], p, out);
        }
    }
}

}  // namespace

void LocalInstrument::validate(const Register& reg) const {
    if (party < 0 || party >= reg.parties()) throw ValidationError("instrument party out of range");
    if (kraus.empty()) throw ValidationError("instrument has no Kraus operators");
    if (static_cast<int>(kraus.size()) > kMaxInstrumentOutcomes) {
        throw ValidationError("instrument has more than " + std::to_string(kMaxInstrumentOutcomes) + " outcomes");
    }
    const int d = reg.dim(party);
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d) throw ValidationError("Kraus operator has the wrong shape");
        sum += k.adjoint() * k;
    }
    if ((sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
        throw ValidationError("Kraus operators are not complete (sum K^dagger K != I)");
    }
}

int LoccTree::depth() const {
    int sub = 0;
    for (const auto& t : next) sub = std::max(sub, t.depth());
    return 1 + sub;
}

void LoccTree::validate(const Register& reg) const {
    instrument.validate(reg);
    if (!next.empty() && next.size() != instrument.kraus.size()) {
        throw ValidationError("LOCC tree needs one subtree per outcome");
    }
    if (depth() > kMaxLoccDepth) throw ValidationError("LOCC tree deeper than " + std::to_string(kMaxLoccDepth));
    for (const auto& t : next) t.validate(reg);
}

std::vector<Branch> apply_instrument(const PureState& psi, const LocalInstrument& inst) {
    inst.validate(psi.reg());
    std::vector<Branch> out;
    for (std::size_t a = 0; a < inst.kraus.size(); ++a) {
        CVector v = apply_local(psi.reg(), inst.party, inst.kraus[a], psi.view());
        const double p = v.squaredNorm();
        if (p < kBranchDrop) continue;
        v /= std::sqrt(p);
        out.push_back({p, PureState(psi.reg(), std::move(v)), static_cast<int>(a)});
    }
    return out;
}

std::vector<Branch> apply_tree(const PureState& psi, const LoccTree& tree) {
    tree.validate(psi.reg());
    std::vector<Branch> out;
    collect(psi, tree, 1.0, out);
    return out;
}

LocalInstrument random_instrument(int party, int d, int n_outcomes, CounterRng& rng) {
    if (n_outcomes < 1 || n_outcomes > kMaxInstrumentOutcomes) {
        throw ValidationError("instrument outcomes must be in 1.." + std::to_string(kMaxInstrumentOutcomes));
    }
    if (d < 2) throw ValidationError("instrument dimension must be >= 2");
    const CMatrix u = random_unitary(d * n_outcomes, rng);
    LocalInstrument inst;
    inst.party = party;
    for (int a = 0; a < n_outcomes; ++a) inst.kraus.push_back(u.block(a * d, 0, d, d));
    return inst;
}

LocalInstrument random_instrument(int party, int d, int n_outcomes, std::uint64_t seed) {
    CounterRng rng(seed);
    return random_instrument(party, d, n_outcomes, rng);
}

LoccTree random_locc_tree(const Register& reg, int depth, int max_outcomes, CounterRng& rng) {
    if (depth < 1 || depth > kMaxLoccDepth) throw ValidationError("LOCC depth must be in 1.." + std::to_string(kMaxLoccDepth));
    if (max_outcomes < 1 || max_outcomes > kMaxInstrumentOutcomes) throw ValidationError("bad outcome bound");
    LoccTree t;
    const int party = rng.integer(0, reg.parties() - 1);
    const int outcomes = rng.integer(1, max_outcomes);
    t.instrument = random_instrument(party, reg.dim(party), outcomes, rng);
    if (depth > 1) {
        for (int a = 0; a < outcomes; ++a) t.next.push_back(random_locc_tree(reg, depth - 1, max_outcomes, rng));
    }
    return t;
}

MonotonicityTrial monotonicity_trial(const PureState& psi, const LoccTree& tree, const SubsetChoice& s,
                                     const LocalHamiltonian& h) {
    const PowerSetEvaluator eval(h, s, GapKind::ergotropic);
    MonotonicityTrial r;
    r.before = eval.value(psi.view(), Exec::serial);
    for (const auto& br : apply_tree(psi, tree)) r.after_avg += br.probability * eval.value(br.state.view(), Exec::serial);
    r.holds = r.after_avg <= r.before + kMonotoneTol;
    return r;
}

MonotonicityTrial cut_monotonicity_trial(const PureState& psi, const LoccTree& tree, const PartitionMask& x,
                                         const LocalHamiltonian& h) {
    const CutPlan plan(h, {x});
    MonotonicityTrial r;
    r.before = plan.gap(0, psi.view(), GapKind::ergotropic);
    for (const auto& br : apply_tree(psi, tree)) r.after_avg += br.probability * plan.gap(0, br.state.view(), GapKind::ergotropic);
    r.holds = r.after_avg <= r.before + kMonotoneTol;
    return r;
}

}  // namespace ergent
