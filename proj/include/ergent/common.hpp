#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace ergent {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Largest composite dimension accepted for a Register (pure states).
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 20;

/// Largest dimension accepted for an explicit D x D density matrix.
inline constexpr std::size_t kMaxDensityDimension = std::size_t{1} << 10;

/// Raised when an input is well-formed but violates a mathematical
/// precondition (non-normalized state, bad Hamiltonian, dimension cap).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the text-format readers on malformed input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Execution policy for the data-parallel kernels. `serial` is the
/// reference path used by tests; `parallel` uses OpenMP.
enum class Exec { serial, parallel };

}  // namespace ergent
