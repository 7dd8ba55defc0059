#pragma once

#include <utility>
#include <vector>

#include "ergent/qcore.hpp"
#include "ergent/thermo.hpp"

namespace testing {

using ergent::CMatrix;
using ergent::Complex;
using ergent::CVector;

// Normalized state from (labels, amplitude) pairs.
inline ergent::PureState ket(std::vector<int> dims, const std::vector<std::pair<std::vector<int>, Complex>>& terms) {
    ergent::Register reg(std::move(dims));
    CVector a = CVector::Zero(static_cast<Eigen::Index>(reg.size()));
    for (const auto& [labels, amp] : terms) a[static_cast<Eigen::Index>(reg.index(labels))] += amp;
    return ergent::PureState::normalized(reg, a);
}

inline ergent::DensityOperator diag_rho(const std::vector<double>& p) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
    std::vector<int> dims;
    std::size_t d = p.size();
    // Factor into qubits when possible so the operator matches a qubit register.
    while (d % 2 == 0 && d > 1) {
        dims.push_back(2);
        d /= 2;
    }
    if (d > 1) dims.push_back(static_cast<int>(d));
    return ergent::DensityOperator(ergent::Register(dims), m);
}

inline ergent::DensityOperator mix(const std::vector<std::pair<double, ergent::PureState>>& terms) {
    const auto& reg = terms.front().second.reg();
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(reg.size()), static_cast<Eigen::Index>(reg.size()));
    for (const auto& [p, s] : terms) m += p * s.amplitudes() * s.amplitudes().adjoint();
    return ergent::DensityOperator(reg, m);
}

}  // namespace testing
