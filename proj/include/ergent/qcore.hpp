#pragma once

// Registers, state containers and the small amount of linear algebra the
// measures need: tensor products, partial traces, spectra, trace distance
// and majorization.
//
// Basis convention: party 0 is the most significant digit, so the ket
// |a_0 a_1 ... a_{m-1}> has index sum_i a_i * prod_{j>i} d_j. Party indices
// are 0-based throughout the library; the CLI converts from 1-based labels.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "ergent/common.hpp"

namespace ergent {

class PartitionMask;

class Register {
public:
    explicit Register(std::vector<int> dims);

    static Register qubits(int n);

    int parties() const noexcept { return static_cast<int>(dims_.size()); }
    int dim(int party) const { return dims_.at(static_cast<std::size_t>(party)); }
    const std::vector<int>& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return size_; }
    std::size_t stride(int party) const { return strides_.at(static_cast<std::size_t>(party)); }

    std::size_t index(std::span<const int> labels) const;
    std::vector<int> labels(std::size_t index) const;

    /// Register of the parties selected by `mask`, in increasing party order.
    Register restricted(const PartitionMask& mask) const;
    std::size_t subsystem_size(const PartitionMask& mask) const;

    friend bool operator==(const Register&, const Register&) = default;

private:
    std::vector<int> dims_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 1;
};

/// Subset X of the parties of a register, stored as a bitmask.
class PartitionMask {
public:
    PartitionMask() = default;
    PartitionMask(int parties, std::uint32_t bits);

    static PartitionMask of(int parties, std::initializer_list<int> members);
    static PartitionMask of(int parties, std::span<const int> members);
    static PartitionMask full(int parties);
    static PartitionMask none(int parties);

    int parties() const noexcept { return parties_; }
    std::uint32_t bits() const noexcept { return bits_; }
    bool contains(int party) const noexcept { return (bits_ >> party) & 1u; }
    int size() const noexcept;
    bool empty() const noexcept { return bits_ == 0; }
    bool is_full() const noexcept;
    /// X = {} or X = all parties.
    bool trivial() const noexcept { return empty() || is_full(); }
    bool subset_of(const PartitionMask& other) const noexcept { return (bits_ & ~other.bits_) == 0; }

    PartitionMask complement() const noexcept;
    std::vector<int> members() const;

    friend bool operator==(const PartitionMask&, const PartitionMask&) = default;
    friend auto operator<=>(const PartitionMask& a, const PartitionMask& b) {
        return a.bits_ <=> b.bits_;
    }

private:
    int parties_ = 0;
    std::uint32_t bits_ = 0;
};

class PureState {
public:
    /// Throws ValidationError unless the amplitudes have unit norm within 1e-10.
    PureState(Register reg, CVector amplitudes);

    /// Rescales `amplitudes` to unit norm; throws on a zero vector.
    static PureState normalized(Register reg, CVector amplitudes);
    static PureState basis(Register reg, std::span<const int> labels);
    static PureState basis(Register reg, std::initializer_list<int> labels);

    const Register& reg() const noexcept { return reg_; }
    const CVector& amplitudes() const noexcept { return amps_; }
    std::span<const Complex> view() const noexcept { return {amps_.data(), static_cast<std::size_t>(amps_.size())}; }
    Complex amplitude(std::initializer_list<int> labels) const;

private:
    Register reg_;
    CVector amps_;
};

/// Eigenvalues sorted nonincreasing. Built either from a validated operator
/// (entries in [-1e-9, 1 + 1e-9]) or via `from_values`, which sorts.
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<double> values);

    static Spectrum from_values(std::vector<double> values);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double sum() const noexcept;
    Spectrum padded(std::size_t n) const;

private:
    std::vector<double> values_;
};

class DensityOperator {
public:
    /// Validates Hermiticity and unit trace (1e-10) and positivity (eigenvalues >= -1e-9).
    DensityOperator(Register reg, CMatrix matrix);

    static DensityOperator from_pure(const PureState& psi);

    const Register& reg() const noexcept { return reg_; }
    const CMatrix& matrix() const noexcept { return rho_; }

private:
    Register reg_;
    CMatrix rho_;
};

struct HermitianEigen {
    std::vector<double> values;  // nonincreasing
    CMatrix vectors;             // column k belongs to values[k]
};

/// Hermitian eigendecomposition (eigenvalues sorted nonincreasing).
HermitianEigen hermitian_eigen(const CMatrix& m);
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// Applies the spectrum clamping rule: entries in [-1e-9, 0) become 0 and the
/// list is renormalized; anything below -1e-9 is a ValidationError.
Spectrum clamp_spectrum(std::vector<double> eigenvalues);

PureState tensor_product(const PureState& a, const PureState& b);

/// rho_X = tr_{X^c} rho. `keep` must be nonempty.
DensityOperator partial_trace(const DensityOperator& rho, const PartitionMask& keep);

/// rho_X = tr_{X^c} |psi><psi| computed without forming |psi><psi|.
DensityOperator reduced_density(const PureState& psi, const PartitionMask& keep);

/// Eigenvalues of tr_{X^c}|psi><psi|, nonincreasing, length prod_{i in X} d_i.
Spectrum marginal_spectrum(const PureState& psi, const PartitionMask& cut);

Spectrum spectrum(const DensityOperator& rho);

double trace_distance(const DensityOperator& a, const DensityOperator& b);

/// True iff a is majorized by b (a ≺ b); shorter inputs are zero-padded.
bool majorizes(const Spectrum& a, const Spectrum& b);

/// Calls f(full_index, index_in_X, index_in_Xc) for every basis index of `reg`.
template <class F>
void for_each_split(const Register& reg, const PartitionMask& x, F&& f);

}  // namespace ergent

#include "ergent/detail/split.hpp"
