#include "ergent/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ergent {

namespace {

void check_mask(const PartitionMask& m, const Register& reg) {
    if (m.parties() != reg.parties()) throw ValidationError("partition mask does not match Hamiltonian register");
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

LocalHamiltonian::LocalHamiltonian(Register reg, std::vector<std::vector<double>> energies, bool allow_degenerate,
                                   std::string id)
    : reg_(std::move(reg)), energies_(std::move(energies)), allow_degenerate_(allow_degenerate), id_(std::move(id)) {
    if (energies_.size() != static_cast<std::size_t>(reg_.parties())) {
        throw ValidationError("Hamiltonian needs one ladder per party");
    }
    for (int p = 0; p < reg_.parties(); ++p) {
        const auto& e = energies_[static_cast<std::size_t>(p)];
        const std::string who = "party " + std::to_string(p + 1);
        if (e.size() != static_cast<std::size_t>(reg_.dim(p))) {
            throw ValidationError(who + ": ladder has " + std::to_string(e.size()) + " levels, register dimension is " +
                                  std::to_string(reg_.dim(p)));
        }
        for (double v : e) {
            if (!std::isfinite(v)) throw ValidationError(who + ": non-finite energy");
        }
        if (e[0] != 0.0) throw ValidationError(who + ": ground energy must be 0, got " + fmt_double(e[0]));
        for (std::size_t j = 0; j + 1 < e.size(); ++j) {
            if (e[j + 1] < e[j]) throw ValidationError(who + ": energies must be nondecreasing");
            if (e[j + 1] == e[j] && !allow_degenerate_) {
                throw ValidationError(who + ": repeated energy level " + fmt_double(e[j]) +
                                      " (degenerate local ladders need the explicit override)");
            }
        }
        if (e.back() <= 0.0) throw ValidationError(who + ": ladder has no excited level");
    }
}

LocalHamiltonian LocalHamiltonian::equispaced(const Register& reg, double step) {
    return equispaced(reg, std::vector<double>(static_cast<std::size_t>(reg.parties()), step));
}

LocalHamiltonian LocalHamiltonian::equispaced(const Register& reg, const std::vector<double>& steps) {
    if (steps.size() != static_cast<std::size_t>(reg.parties())) throw ValidationError("one step per party required");
    std::vector<std::vector<double>> e;
    bool uniform = true;
    for (int p = 0; p < reg.parties(); ++p) {
        const double st = steps[static_cast<std::size_t>(p)];
        if (!(st > 0.0) || !std::isfinite(st)) throw ValidationError("equispaced step must be positive");
        uniform = uniform && st == steps[0];
        std::vector<double> lad(static_cast<std::size_t>(reg.dim(p)));
        for (std::size_t j = 0; j < lad.size(); ++j) lad[j] = static_cast<double>(j) * st;
        e.push_back(std::move(lad));
    }
    return LocalHamiltonian(reg, std::move(e), false,
                            uniform ? "equispaced:" + fmt_double(steps[0]) : std::string("equispaced:mixed"));
}

LocalHamiltonian LocalHamiltonian::top_projector(const Register& reg, int level) {
    if (level < 1) throw ValidationError("top:LEVEL needs LEVEL >= 1");
    std::vector<std::vector<double>> e;
    for (int p = 0; p < reg.parties(); ++p) {
        const int d = reg.dim(p);
        const int target = std::min(level, d - 1);
        if (target != d - 1) {
            throw ValidationError("top:" + std::to_string(level) + " would put the excited level below the top of party " +
                                  std::to_string(p + 1) + "'s ladder");
        }
        std::vector<double> lad(static_cast<std::size_t>(d), 0.0);
        lad[static_cast<std::size_t>(target)] = 1.0;
        e.push_back(std::move(lad));
    }
    return LocalHamiltonian(reg, std::move(e), true, "top:" + std::to_string(level));
}

bool LocalHamiltonian::is_equispaced() const {
    for (const auto& e : energies_) {
        const double step = e[1];
        if (!(step > 0.0)) return false;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (std::abs(e[j] - static_cast<double>(j) * step) > 1e-12 * std::max(1.0, e.back())) return false;
        }
    }
    return true;
}

bool LocalHamiltonian::is_unit_qubit() const {
    for (const auto& e : energies_) {
        if (e.size() != 2 || e[0] != 0.0 || e[1] != 1.0) return false;
    }
    return true;
}

LocalHamiltonian LocalHamiltonian::restricted(const PartitionMask& subset) const {
    check_mask(subset, reg_);
    if (subset.empty()) throw ValidationError("cannot restrict a Hamiltonian to no parties");
    std::vector<std::vector<double>> e;
    for (int p : subset.members()) e.push_back(energies_[static_cast<std::size_t>(p)]);
    return LocalHamiltonian(reg_.restricted(subset), std::move(e), allow_degenerate_, id_);
}

std::vector<double> LocalHamiltonian::basis_energies(const PartitionMask& subset) const {
    check_mask(subset, reg_);
    std::vector<double> out{0.0};
    for (int p : subset.members()) {
        const auto& e = energies_[static_cast<std::size_t>(p)];
        std::vector<double> next;
        next.reserve(out.size() * e.size());
        for (double base : out)
            for (double v : e) next.push_back(base + v);
        out = std::move(next);
    }
    return out;
}

CompositeEnergyLadder ladder(const LocalHamiltonian& h, const PartitionMask& subset) {
    if (subset.empty()) throw ValidationError("energy ladder needs a nonempty subset");
    CompositeEnergyLadder lad{subset, h.basis_energies(subset)};
    std::sort(lad.levels.begin(), lad.levels.end());
    return lad;
}

std::vector<double> cut_ladder(const LocalHamiltonian& h, const PartitionMask& x) {
    if (x.trivial()) throw ValidationError("cut ladder needs a nontrivial cut");
    const auto a = ladder(h, x).levels;
    const auto b = ladder(h, x.complement()).levels;
    std::vector<double> out(std::min(a.size(), b.size()));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] + b[j];
    return out;
}

double passive_energy(std::span<const double> spec, std::span<const double> levels) {
    double e = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        if (j < levels.size()) {
            e += spec[j] * levels[j];
        } else if (std::abs(spec[j]) > 1e-12) {
            throw ValidationError("spectrum has more populated levels than the ladder");
        }
    }
    return e;
}

double active_energy(std::span<const double> spec, std::span<const double> levels) {
    double e = 0.0;
    const std::size_t n = levels.size();
    for (std::size_t j = 0; j < spec.size(); ++j) {
        if (j < n) {
            e += spec[j] * levels[n - 1 - j];
        } else if (std::abs(spec[j]) > 1e-12) {
            throw ValidationError("spectrum has more populated levels than the ladder");
        }
    }
    return e;
}

double passive_energy(const Spectrum& spec, const CompositeEnergyLadder& lad) {
    return passive_energy(spec.values(), lad.levels);
}

double active_energy(const Spectrum& spec, const CompositeEnergyLadder& lad) {
    return active_energy(spec.values(), lad.levels);
}

namespace {

void check_slice(const DensityOperator& rho, const LocalHamiltonian& h, const PartitionMask& subset) {
    check_mask(subset, h.reg());
    if (subset.empty()) throw ValidationError("empty subset");
    if (!(rho.reg() == h.reg().restricted(subset))) {
        throw ValidationError("density operator does not live on the selected subsystem");
    }
}

}  // namespace

double mean_energy(const DensityOperator& rho, const LocalHamiltonian& h, const PartitionMask& subset) {
    check_slice(rho, h, subset);
    const auto e = h.basis_energies(subset);
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) acc += rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real() * e[i];
    return acc;
}

double ergotropy(const DensityOperator& rho, const LocalHamiltonian& h, const PartitionMask& subset) {
    const double mean = mean_energy(rho, h, subset);
    return mean - passive_energy(spectrum(rho), ladder(h, subset));
}

double anti_ergotropy(const DensityOperator& rho, const LocalHamiltonian& h, const PartitionMask& subset) {
    const double mean = mean_energy(rho, h, subset);
    return mean - active_energy(spectrum(rho), ladder(h, subset));
}

double battery_capacity(const DensityOperator& rho, const LocalHamiltonian& h, const PartitionMask& subset) {
    check_slice(rho, h, subset);
    const Spectrum sp = spectrum(rho);
    const auto lad = ladder(h, subset);
    return active_energy(sp, lad) - passive_energy(sp, lad);
}

namespace {

double side_passive(const DensityOperator& rho, const PartitionMask& side, const LocalHamiltonian& h) {
    return passive_energy(spectrum(partial_trace(rho, side)), ladder(h, side));
}

double side_capacity(const DensityOperator& rho, const PartitionMask& side, const LocalHamiltonian& h) {
    const Spectrum sp = spectrum(partial_trace(rho, side));
    const auto lad = ladder(h, side);
    return active_energy(sp, lad) - passive_energy(sp, lad);
}

void check_state(const Register& reg, const PartitionMask& x, const LocalHamiltonian& h) {
    check_mask(x, reg);
    if (!(reg == h.reg())) throw ValidationError("state and Hamiltonian registers differ");
}

}  // namespace

double ergotropic_gap(const DensityOperator& rho, const PartitionMask& x, const LocalHamiltonian& h) {
    check_state(rho.reg(), x, h);
    if (x.trivial()) return 0.0;
    const PartitionMask all = PartitionMask::full(x.parties());
    return side_passive(rho, x, h) + side_passive(rho, x.complement(), h) -
           passive_energy(spectrum(rho), ladder(h, all));
}

double ergotropic_gap(const PureState& psi, const PartitionMask& x, const LocalHamiltonian& h) {
    check_state(psi.reg(), x, h);
    if (x.trivial()) return 0.0;
    const Spectrum sx = marginal_spectrum(psi, x);
    const Spectrum sc = marginal_spectrum(psi, x.complement());
    return passive_energy(sx, ladder(h, x)) + passive_energy(sc, ladder(h, x.complement()));
}

double capacity_gap(const DensityOperator& rho, const PartitionMask& x, const LocalHamiltonian& h) {
    check_state(rho.reg(), x, h);
    if (x.trivial()) return 0.0;
    const PartitionMask all = PartitionMask::full(x.parties());
    return battery_capacity(rho, h, all) - side_capacity(rho, x, h) - side_capacity(rho, x.complement(), h);
}

double capacity_gap(const PureState& psi, const PartitionMask& x, const LocalHamiltonian& h) {
    check_state(psi.reg(), x, h);
    if (x.trivial()) return 0.0;
    const PartitionMask all = PartitionMask::full(x.parties());
    // A pure global state has capacity E_max - 0.
    double gap = ladder(h, all).max_level();
    for (const PartitionMask& side : {x, x.complement()}) {
        const Spectrum sp = marginal_spectrum(psi, side);
        const auto lad = ladder(h, side);
        gap -= active_energy(sp, lad) - passive_energy(sp, lad);
    }
    return gap;
}

double fully_separable_gap(const PureState& psi, const LocalHamiltonian& h) {
    if (!(psi.reg() == h.reg())) throw ValidationError("state and Hamiltonian registers differ");
    const int n = psi.reg().parties();
    if (n < 2) return 0.0;
    double total = 0.0;
    for (int p = 0; p < n; ++p) {
        const PartitionMask single = PartitionMask::of(n, {p});
        total += passive_energy(marginal_spectrum(psi, single), ladder(h, single));
    }
    return total;
}

}  // namespace ergent
