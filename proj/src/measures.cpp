#include "ergent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ergent/roof.hpp"

namespace ergent {

std::string to_string(MeasureKind k) {
    switch (k) {
        case MeasureKind::ME: return "ME";
        case MeasureKind::MB: return "MB";
        case MeasureKind::DMIN: return "DMIN";
        case MeasureKind::DAVG: return "DAVG";
        case MeasureKind::DVOL: return "DVOL";
        case MeasureKind::FULLSEP: return "FULLSEP";
    }
    return "?";
}

MeasureKind parse_measure_kind(const std::string& s) {
    for (auto k : {MeasureKind::ME, MeasureKind::MB, MeasureKind::DMIN, MeasureKind::DAVG, MeasureKind::DVOL,
                   MeasureKind::FULLSEP}) {
        if (to_string(k) == s) return k;
    }
    throw ValidationError("unknown measure kind '" + s + "'");
}

SubsetChoice::SubsetChoice(PartitionMask parties) : mask_(parties) {
    if (mask_.empty()) throw ValidationError("subset s must be nonempty");
}

// ------------------------------------------------------- PowerSetEvaluator

namespace {

std::vector<PartitionMask> power_set(const PartitionMask& s) {
    std::vector<PartitionMask> out;
    // Enumerate submasks of s in increasing numeric order.
    const std::uint32_t full = s.bits();
    std::uint32_t sub = 0;
    while (true) {
        out.emplace_back(s.parties(), sub);
        if (sub == full) break;
        sub = (sub - full) & full;
    }
    std::sort(out.begin(), out.end());
    return out;
}

PartitionMask canonical(const PartitionMask& x) {
    if (x.trivial()) return PartitionMask::none(x.parties());
    const PartitionMask c = x.complement();
    return c.bits() < x.bits() ? c : x;
}

std::vector<PartitionMask> unique_canonical(const std::vector<PartitionMask>& members) {
    std::vector<PartitionMask> keys;
    for (const auto& x : members) keys.push_back(canonical(x));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

}  // namespace

PowerSetEvaluator::PowerSetEvaluator(const LocalHamiltonian& h, const SubsetChoice& s, GapKind kind)
    : subset_(s), kind_(kind), plan_(h, unique_canonical(power_set(s.mask()))), members_(power_set(s.mask())) {
    if (s.mask().parties() != h.reg().parties()) throw ValidationError("subset does not match register");
    const auto& keys = plan_.cuts();
    plan_index_.reserve(members_.size());
    for (const auto& x : members_) {
        const auto it = std::lower_bound(keys.begin(), keys.end(), canonical(x));
        plan_index_.push_back(static_cast<std::size_t>(it - keys.begin()));
    }
}

std::map<PartitionMask, double> PowerSetEvaluator::per_cut(std::span<const Complex> amps, Exec exec) const {
    const auto gaps = plan_.evaluate(amps, kind_, exec);
    std::map<PartitionMask, double> out;
    for (std::size_t i = 0; i < members_.size(); ++i) out.emplace(members_[i], gaps[plan_index_[i]]);
    return out;
}

double PowerSetEvaluator::value(std::span<const Complex> amps, Exec exec) const {
    const auto gaps = plan_.evaluate(amps, kind_, exec);
    double acc = 0.0;
    for (std::size_t i = 0; i < members_.size(); ++i) acc += gaps[plan_index_[i]];
    return acc / static_cast<double>(members_.size());
}

// ----------------------------------------------------------- measures

namespace {

void check_inputs(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h) {
    if (!(psi.reg() == h.reg())) throw ValidationError("state and Hamiltonian registers differ");
    if (s.mask().parties() != psi.reg().parties()) throw ValidationError("subset does not match register");
}

MeasureReport power_set_report(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h,
                               GapKind gk, MeasureKind kind, Exec exec) {
    check_inputs(psi, s, h);
    PowerSetEvaluator ev(h, s, gk);
    MeasureReport r;
    r.kind = kind;
    r.subset = s.mask();
    r.hamiltonian_id = h.id();
    r.per_cut = ev.per_cut(psi.view(), exec);
    double acc = 0.0;
    for (const auto& [x, g] : r.per_cut) acc += g;
    r.value = acc / static_cast<double>(r.per_cut.size());
    return r;
}

}  // namespace

MeasureReport me_pure(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h, Exec exec) {
    return power_set_report(psi, s, h, GapKind::ergotropic, MeasureKind::ME, exec);
}

MeasureReport mb_pure(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h, Exec exec) {
    return power_set_report(psi, s, h, GapKind::capacity, MeasureKind::MB, exec);
}

MeasureReport bipartition_report(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h,
                                 MeasureKind kind, Exec exec) {
    check_inputs(psi, s, h);
    const int n = psi.reg().parties();
    if (n < 2) throw ValidationError("bipartition measures need at least two parties");
    if (!s.mask().is_full()) throw ValidationError("Delta_min/avg/V are defined for s = all parties");
    MeasureReport full = power_set_report(psi, s, h, GapKind::ergotropic, kind, exec);
    MeasureReport r;
    r.kind = kind;
    r.subset = s.mask();
    r.hamiltonian_id = h.id();
    for (const auto& [x, g] : full.per_cut) {
        if (!x.trivial()) r.per_cut.emplace(x, g);
    }
    const auto count = static_cast<double>(r.per_cut.size());  // 2^n - 2
    switch (kind) {
        case MeasureKind::DMIN: {
            double m = std::numeric_limits<double>::infinity();
            for (const auto& [x, g] : r.per_cut) m = std::min(m, g);
            r.value = m;
            break;
        }
        case MeasureKind::DAVG: {
            double acc = 0.0;
            for (const auto& [x, g] : r.per_cut) acc += g;
            r.value = acc / count;
            break;
        }
        case MeasureKind::DVOL: {
            double logsum = 0.0;
            bool zero = false;
            for (const auto& [x, g] : r.per_cut) {
                if (g <= 0.0) {
                    zero = true;
                    break;
                }
                logsum += std::log(g);
            }
            r.value = zero ? 0.0 : std::exp(logsum / count);
            break;
        }
        default: throw ValidationError("bipartition_report handles DMIN, DAVG and DVOL only");
    }
    return r;
}

double delta_min(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h) {
    return bipartition_report(psi, s, h, MeasureKind::DMIN).value;
}

double delta_avg(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h) {
    return bipartition_report(psi, s, h, MeasureKind::DAVG).value;
}

double delta_vol(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h) {
    return bipartition_report(psi, s, h, MeasureKind::DVOL).value;
}

MeasureReport measure(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h, MeasureKind kind,
                      Exec exec) {
    switch (kind) {
        case MeasureKind::ME: return me_pure(psi, s, h, exec);
        case MeasureKind::MB: return mb_pure(psi, s, h, exec);
        case MeasureKind::FULLSEP: {
            check_inputs(psi, s, h);
            MeasureReport r;
            r.kind = kind;
            r.subset = s.mask();
            r.hamiltonian_id = h.id();
            r.value = fully_separable_gap(psi, h);
            return r;
        }
        default: return bipartition_report(psi, s, h, kind, exec);
    }
}

// ------------------------------------------------------------ checkers

Theorem1Check relation_theorem1_check(const PureState& psi, const SubsetChoice& s, const LocalHamiltonian& h) {
    if (!h.is_equispaced()) {
        throw ValidationError("the M_B = 2 M_E relation needs equispaced local ladders");
    }
    Theorem1Check c;
    c.me = me_pure(psi, s, h).value;
    c.mb = mb_pure(psi, s, h).value;
    c.ratio = c.me > 1e-15 ? c.mb / c.me : 2.0;
    c.holds = std::abs(c.mb - 2.0 * c.me) <= 1e-9 * std::max(1.0, c.mb);
    return c;
}

ContinuityCheck continuity_check(const Spectrum& a, const Spectrum& b, std::span<const double> cut_levels) {
    if (cut_levels.empty()) throw ValidationError("continuity check needs a nonempty ladder");
    const std::size_t n = std::max(a.size(), b.size());
    const auto pa = a.padded(n).values();
    const auto pb = b.padded(n).values();
    ContinuityCheck c;
    double weighted = 0.0, l1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = pa[j] - pb[j];
        l1 += std::abs(d);
        if (j < cut_levels.size()) {
            weighted += d * cut_levels[j];
        } else if (std::abs(pa[j]) > 1e-12 || std::abs(pb[j]) > 1e-12) {
            throw ValidationError("spectra have more populated entries than the cut ladder");
        }
    }
    const double eps_max = *std::max_element(cut_levels.begin(), cut_levels.end());
    c.lhs = std::abs(weighted);
    c.trace_distance = 0.5 * l1;
    c.bound = 2.0 * eps_max * c.trace_distance;
    c.holds = c.lhs <= c.bound + 1e-12;
    return c;
}

MajorizationCheck majorization_check(const PureState& psi, const PureState& phi, const SubsetChoice& s,
                                     const LocalHamiltonian& h) {
    if (!(psi.reg() == phi.reg())) throw ValidationError("majorization check needs states on the same register");
    MajorizationCheck c;
    c.premise = true;
    for (const auto& x : power_set(s.mask())) {
        if (x.trivial()) continue;
        if (!majorizes(marginal_spectrum(psi, x), marginal_spectrum(phi, x))) {
            c.premise = false;
            break;
        }
    }
    c.me_psi = me_pure(psi, s, h).value;
    c.me_phi = me_pure(phi, s, h).value;
    c.conclusion = c.me_psi >= c.me_phi - 1e-9;
    return c;
}

MonogamyCheck monogamy_check(const PureState& psi, int party, double alpha, const LocalHamiltonian& h,
                             const RoofConfig& cfg) {
    if (!(alpha >= 1.0)) throw ValidationError("monogamy exponent alpha must be >= 1");
    if (!h.is_unit_qubit()) throw ValidationError("monogamy relation assumes H = |1><1| on every qubit");
    if (!(psi.reg() == h.reg())) throw ValidationError("state and Hamiltonian registers differ");
    const int n = psi.reg().parties();
    if (party < 0 || party >= n) throw ValidationError("party index out of range");
    MonogamyCheck c;
    const double m_single = me_pure(psi, SubsetChoice(PartitionMask::of(n, {party})), h).value;
    c.lhs = std::pow(m_single, alpha);
    for (int j = 0; j < n; ++j) {
        if (j == party) continue;
        const PartitionMask pair = PartitionMask::of(n, {party, j});
        const DensityOperator rho = reduced_density(psi, pair);
        const int pos = party < j ? 0 : 1;
        const auto res = roof_me(rho, SubsetChoice(PartitionMask::of(2, {pos})), h.restricted(pair), cfg);
        c.pair_values.push_back(res.value);
        c.rhs += std::pow(std::max(res.value, 0.0), alpha);
    }
    c.holds = c.lhs >= c.rhs - kMonogamySlack;
    return c;
}

GmeCheck gme_criterion_3q(const PureState& psi) {
    const auto& d = psi.reg().dims();
    if (d.size() != 3 || d[0] != 2 || d[1] != 2 || d[2] != 2) {
        throw ValidationError("GME criterion applies to three-qubit states");
    }
    const LocalHamiltonian h = LocalHamiltonian::equispaced(psi.reg());
    GmeCheck c;
    c.me = me_pure(psi, SubsetChoice::full(3), h).value;
    double threshold = 0.25;
    for (auto pair : {PartitionMask::of(3, {0, 1}), PartitionMask::of(3, {0, 2}), PartitionMask::of(3, {1, 2})}) {
        const Spectrum sp = spectrum(reduced_density(psi, pair));
        threshold = std::min(threshold, 0.5 * (sp[1] + sp[2]));
    }
    c.sep_threshold = threshold;
    c.ent_certified = c.me > c.sep_threshold + 1e-9;
    c.gme_certified = c.me > 0.5 + 1e-9;
    return c;
}

Prop4Check prop4_bounds_check(const PureState& psi, const LocalHamiltonian& h) {
    const int n = psi.reg().parties();
    if (n < 2) throw ValidationError("Proposition-4 bounds need at least two parties");
    const SubsetChoice s = SubsetChoice::full(n);
    const MeasureReport me = me_pure(psi, s, h);
    Prop4Check c;
    c.me = me.value;
    double mn = std::numeric_limits<double>::infinity(), sum = 0.0, prod = 1.0, logsum = 0.0;
    bool zero = false;
    int count = 0;
    for (const auto& [x, g] : me.per_cut) {
        if (x.trivial()) continue;
        mn = std::min(mn, g);
        sum += g;
        prod *= g;
        if (g <= 0.0) zero = true; else logsum += std::log(g);
        ++count;
    }
    c.dmin = mn;
    c.davg = sum / count;
    c.dvol = zero ? 0.0 : std::exp(logsum / count);
    c.vol_lower_bound = std::ldexp(prod, -((1 << n) - 1 + n));
    c.fullsep = fully_separable_gap(psi, h);
    constexpr double tol = 1e-9;
    c.chain_holds = c.dmin <= c.me + tol && c.me <= c.davg + tol;
    c.scaled_chain_holds = (1.0 - std::ldexp(1.0, 1 - n)) * c.dmin <= c.me + tol;
    c.identity_holds = std::abs(c.me - (1.0 - std::ldexp(1.0, 1 - n)) * c.davg) <= tol;
    c.volume_holds = c.vol_lower_bound <= c.me + tol;
    c.fullsep_holds = c.me <= c.fullsep + tol;
    c.holds = c.chain_holds && c.identity_holds && c.volume_holds && c.fullsep_holds;
    return c;
}

}  // namespace ergent
