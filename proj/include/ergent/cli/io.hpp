#pragma once

// Text formats read by the command-line tool.
//
//   state file        dims d1 .. dm
//                     ket a1 .. am RE IM        (repeatable, labels 0-based)
//   mixture file      dims d1 .. dm
//                     mix P                     (starts a member)
//                     ket a1 .. am RE IM
//   Hamiltonian file  party i e0 .. e_{d-1}     (i is 1-based)
//                     allow-degenerate          (optional)
//
// Blank lines and text after '#' are ignored. Malformed text raises
// ParseError; well-formed input that violates a precondition raises
// ValidationError.

#include <string>
#include <vector>

#include "ergent/measures.hpp"
#include "ergent/roof.hpp"

namespace ergent::cli {

inline constexpr double kInputNormTol = 1e-8;
inline constexpr double kMixtureSumTol = 1e-9;

std::string read_file(const std::string& path);

/// States off unit norm by more than 1e-8 are rejected unless `normalize`.
PureState parse_state(const std::string& text, bool normalize = false);

struct Mixture {
    Ensemble ensemble;
    DensityOperator rho;
};
Mixture parse_mixture(const std::string& text, bool normalize = false);

/// Writes an ensemble in mixture-file form.
std::string format_mixture(const Ensemble& ens);

/// `equispaced:STEP`, `top:LEVEL`, or a path to a Hamiltonian file.
LocalHamiltonian parse_hamiltonian(const std::string& spec, const Register& reg);
LocalHamiltonian parse_hamiltonian_text(const std::string& text, const Register& reg);

/// Comma-separated 1-based parties; empty means all parties.
SubsetChoice parse_subset(const std::string& spec, int parties);

std::vector<MeasureKind> parse_kinds(const std::string& spec);

/// 1-based label of a cut, e.g. "1+2|3"; an empty side is left blank.
std::string cut_label(const PartitionMask& x);

}  // namespace ergent::cli
