#include "ergent/qcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace ergent {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kNegativeEigTol = 1e-9;

std::string dims_str(const std::vector<int>& dims) {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(dims[i]);
    }
    return s;
}

}  // namespace

// ---------------------------------------------------------------- Register

Register::Register(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ValidationError("register needs at least one party");
    if (dims_.size() > 31) throw ValidationError("register supports at most 31 parties");
    strides_.assign(dims_.size(), 1);
    for (int d : dims_) {
        if (d < 2) throw ValidationError("local dimension must be >= 2, got " + std::to_string(d));
        if (size_ > kMaxDimension / static_cast<std::size_t>(d)) {
            throw ValidationError("register " + dims_str(dims_) + " exceeds the dimension cap 2^20");
        }
        size_ *= static_cast<std::size_t>(d);
    }
    for (int p = static_cast<int>(dims_.size()) - 2; p >= 0; --p) {
        const auto up = static_cast<std::size_t>(p);
        strides_[up] = strides_[up + 1] * static_cast<std::size_t>(dims_[up + 1]);
    }
}

Register Register::qubits(int n) {
    if (n < 1) throw ValidationError("qubit register needs n >= 1");
    return Register(std::vector<int>(static_cast<std::size_t>(n), 2));
}

std::size_t Register::index(std::span<const int> labels) const {
    if (labels.size() != dims_.size()) throw ValidationError("label count does not match party count");
    std::size_t idx = 0;
    for (std::size_t p = 0; p < dims_.size(); ++p) {
        if (labels[p] < 0 || labels[p] >= dims_[p]) {
            throw ValidationError("basis label " + std::to_string(labels[p]) + " out of range for party " +
                                  std::to_string(p + 1));
        }
        idx += static_cast<std::size_t>(labels[p]) * strides_[p];
    }
    return idx;
}

std::vector<int> Register::labels(std::size_t index) const {
    std::vector<int> out(dims_.size());
    for (std::size_t p = 0; p < dims_.size(); ++p) {
        out[p] = static_cast<int>((index / strides_[p]) % static_cast<std::size_t>(dims_[p]));
    }
    return out;
}

Register Register::restricted(const PartitionMask& mask) const {
    std::vector<int> d;
    for (int p : mask.members()) d.push_back(dim(p));
    return Register(std::move(d));
}

std::size_t Register::subsystem_size(const PartitionMask& mask) const {
    std::size_t s = 1;
    for (int p : mask.members()) s *= static_cast<std::size_t>(dim(p));
    return s;
}

// ----------------------------------------------------------- PartitionMask

PartitionMask::PartitionMask(int parties, std::uint32_t bits) : parties_(parties), bits_(bits) {
    if (parties < 1 || parties > 31) throw ValidationError("party count out of range");
    if (bits >> parties) throw ValidationError("partition mask names a party outside the register");
}

PartitionMask PartitionMask::of(int parties, std::span<const int> members) {
    std::uint32_t bits = 0;
    for (int p : members) {
        if (p < 0 || p >= parties) {
            throw ValidationError("party index " + std::to_string(p) + " outside 0.." + std::to_string(parties - 1));
        }
        bits |= 1u << p;
    }
    return PartitionMask(parties, bits);
}

PartitionMask PartitionMask::of(int parties, std::initializer_list<int> members) {
    return of(parties, std::span<const int>(members.begin(), members.size()));
}

PartitionMask PartitionMask::full(int parties) {
    return PartitionMask(parties, parties >= 32 ? ~0u : (1u << parties) - 1u);
}

PartitionMask PartitionMask::none(int parties) { return PartitionMask(parties, 0); }

int PartitionMask::size() const noexcept { return std::popcount(bits_); }

bool PartitionMask::is_full() const noexcept { return bits_ == (1u << parties_) - 1u; }

PartitionMask PartitionMask::complement() const noexcept {
    PartitionMask c;
    c.parties_ = parties_;
    c.bits_ = ~bits_ & ((1u << parties_) - 1u);
    return c;
}

std::vector<int> PartitionMask::members() const {
    std::vector<int> out;
    for (int p = 0; p < parties_; ++p) {
        if (contains(p)) out.push_back(p);
    }
    return out;
}

// --------------------------------------------------------------- PureState

PureState::PureState(Register reg, CVector amplitudes) : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != reg_.size()) {
        throw ValidationError("amplitude vector length " + std::to_string(amps_.size()) +
                              " does not match register dimension " + std::to_string(reg_.size()));
    }
    const double norm = amps_.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTol) {
        throw ValidationError("state is not normalized (norm = " + std::to_string(norm) + ")");
    }
}

PureState PureState::normalized(Register reg, CVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("cannot normalize a zero vector");
    amplitudes /= norm;
    return PureState(std::move(reg), std::move(amplitudes));
}

PureState PureState::basis(Register reg, std::span<const int> labels) {
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(reg.size()));
    amps(static_cast<Eigen::Index>(reg.index(labels))) = 1.0;
    return PureState(std::move(reg), std::move(amps));
}

PureState PureState::basis(Register reg, std::initializer_list<int> labels) {
    return basis(std::move(reg), std::span<const int>(labels.begin(), labels.size()));
}

Complex PureState::amplitude(std::initializer_list<int> labels) const {
    return amps_(static_cast<Eigen::Index>(reg_.index(std::span<const int>(labels.begin(), labels.size()))));
}

// ---------------------------------------------------------------- Spectrum

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!(v >= -kNegativeEigTol && v <= 1.0 + kNegativeEigTol)) {
            throw ValidationError("spectrum entry " + std::to_string(v) + " outside [0, 1]");
        }
        if (i > 0 && v > values_[i - 1]) throw ValidationError("spectrum must be sorted nonincreasing");
    }
}

Spectrum Spectrum::from_values(std::vector<double> values) {
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    return Spectrum(std::move(values));
}

double Spectrum::sum() const noexcept { return std::accumulate(values_.begin(), values_.end(), 0.0); }

Spectrum Spectrum::padded(std::size_t n) const {
    Spectrum out = *this;
    if (out.values_.size() < n) out.values_.resize(n, 0.0);
    return out;
}

// --------------------------------------------------------- DensityOperator

DensityOperator::DensityOperator(Register reg, CMatrix matrix) : reg_(std::move(reg)), rho_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(reg_.size());
    if (reg_.size() > kMaxDensityDimension) {
        throw ValidationError("density operators are limited to dimension " + std::to_string(kMaxDensityDimension));
    }
    if (rho_.rows() != d || rho_.cols() != d) throw ValidationError("density matrix shape does not match register");
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i; j < d; ++j) {
            if (std::abs(rho_(i, j) - std::conj(rho_(j, i))) > kNormTol) {
                throw ValidationError("density matrix is not Hermitian");
            }
        }
    }
    const Complex tr = rho_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kNormTol) {
        throw ValidationError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    const auto ev = hermitian_eigenvalues(rho_);
    if (!ev.empty() && ev.back() < -kNegativeEigTol) {
        throw ValidationError("density matrix is not positive semidefinite (eigenvalue " + std::to_string(ev.back()) +
                              ")");
    }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    const CVector& a = psi.amplitudes();
    CMatrix rho = a * a.adjoint();
    return DensityOperator(psi.reg(), std::move(rho));
}

// -------------------------------------------------------------- eigen

HermitianEigen hermitian_eigen(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw ValidationError("Hermitian eigensolver failed");
    const auto n = m.rows();
    HermitianEigen out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    // Eigen returns ascending order.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    const auto n = m.rows();
    if (n == 1) return {m(0, 0).real()};
    if (n == 2) {
        const double a = m(0, 0).real(), d = m(1, 1).real();
        const double half_tr = 0.5 * (a + d);
        const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
        return {half_tr + disc, half_tr - disc};
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ValidationError("Hermitian eigensolver failed");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    return out;
}

Spectrum clamp_spectrum(std::vector<double> ev) {
    std::stable_sort(ev.begin(), ev.end(), std::greater<>());
    double total = 0.0;
    for (double& v : ev) {
        if (v < -kNegativeEigTol) {
            throw ValidationError("negative eigenvalue " + std::to_string(v) + " below tolerance");
        }
        if (v < 0.0) v = 0.0;
        total += v;
    }
    if (total > 0.0) {
        for (double& v : ev) v /= total;
    }
    return Spectrum(std::move(ev));
}

// ---------------------------------------------------------- operations

PureState tensor_product(const PureState& a, const PureState& b) {
    std::vector<int> dims = a.reg().dims();
    dims.insert(dims.end(), b.reg().dims().begin(), b.reg().dims().end());
    Register reg(std::move(dims));
    const CVector& x = a.amplitudes();
    const CVector& y = b.amplitudes();
    CVector out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
    return PureState::normalized(std::move(reg), std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho, const PartitionMask& keep) {
    const Register& reg = rho.reg();
    if (keep.parties() != reg.parties()) throw ValidationError("partition mask does not match register");
    if (keep.empty()) throw ValidationError("partial trace must keep at least one party");
    if (keep.is_full()) return rho;
    const std::size_t dk = reg.subsystem_size(keep);
    const std::size_t dt = reg.size() / dk;
    // full index for every (kept, traced) pair
    std::vector<std::size_t> full(reg.size());
    for_each_split(reg, keep, [&](std::size_t i, std::size_t x, std::size_t c) { full[x * dt + c] = i; });
    const CMatrix& m = rho.matrix();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t b = 0; b < dk; ++b) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < dt; ++c) {
                acc += m(static_cast<Eigen::Index>(full[a * dt + c]), static_cast<Eigen::Index>(full[b * dt + c]));
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    }
    // Hermitize to remove rounding asymmetry before validation.
    CMatrix herm = 0.5 * (out + out.adjoint());
    return DensityOperator(reg.restricted(keep), std::move(herm));
}

namespace {

// Coefficient matrix M with psi = sum M(x, c) |x>|c>, so rho_X = M M^dagger.
CMatrix coefficient_matrix(const PureState& psi, const PartitionMask& x) {
    const Register& reg = psi.reg();
    const auto rows = static_cast<Eigen::Index>(reg.subsystem_size(x));
    const auto cols = static_cast<Eigen::Index>(reg.size()) / rows;
    CMatrix m(rows, cols);
    const CVector& a = psi.amplitudes();
    for_each_split(reg, x, [&](std::size_t i, std::size_t ix, std::size_t ic) {
        m(static_cast<Eigen::Index>(ix), static_cast<Eigen::Index>(ic)) = a(static_cast<Eigen::Index>(i));
    });
    return m;
}

}  // namespace

DensityOperator reduced_density(const PureState& psi, const PartitionMask& keep) {
    if (keep.parties() != psi.reg().parties()) throw ValidationError("partition mask does not match register");
    if (keep.empty()) throw ValidationError("partial trace must keep at least one party");
    const CMatrix m = coefficient_matrix(psi, keep);
    CMatrix rho = m * m.adjoint();
    CMatrix herm = 0.5 * (rho + rho.adjoint());
    return DensityOperator(psi.reg().restricted(keep), std::move(herm));
}

Spectrum marginal_spectrum(const PureState& psi, const PartitionMask& cut) {
    if (cut.parties() != psi.reg().parties()) throw ValidationError("partition mask does not match register");
    if (cut.trivial()) throw ValidationError("marginal spectrum needs a nontrivial cut");
    const std::size_t dx = psi.reg().subsystem_size(cut);
    const std::size_t dc = psi.reg().size() / dx;
    // Diagonalize the smaller side; the larger side shares its nonzero spectrum.
    const PartitionMask small = dx <= dc ? cut : cut.complement();
    const CMatrix m = coefficient_matrix(psi, small);
    const CMatrix gram = m * m.adjoint();
    std::vector<double> ev = hermitian_eigenvalues(gram);
    ev.resize(dx, 0.0);
    return clamp_spectrum(std::move(ev));
}

Spectrum spectrum(const DensityOperator& rho) { return clamp_spectrum(hermitian_eigenvalues(rho.matrix())); }

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (!(a.reg() == b.reg())) throw ValidationError("trace distance needs operators on the same register");
    const CMatrix diff = a.matrix() - b.matrix();
    double s = 0.0;
    for (double v : hermitian_eigenvalues(diff)) s += std::abs(v);
    return std::clamp(0.5 * s, 0.0, 1.0);
}

bool majorizes(const Spectrum& a, const Spectrum& b) {
    constexpr double tol = 1e-9;
    const std::size_t n = std::max(a.size(), b.size());
    const auto pa = a.padded(n).values();
    const auto pb = b.padded(n).values();
    double sa = 0.0, sb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sa += pa[k];
        sb += pb[k];
        if (sa > sb + tol) return false;
    }
    return std::abs(sa - sb) <= tol;
}

}  // namespace ergent
