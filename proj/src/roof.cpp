#include "ergent/roof.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "ergent/random.hpp"

namespace ergent {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kDropTol = 1e-12;
constexpr double kInitialStep = 0.5;
constexpr double kMinStep = 1e-8;

// rho = W W^dagger with W = [sqrt(mu_1) e_1, ..., sqrt(mu_r) e_r].
struct Factor {
    int rank = 0;
    CMatrix w;
};

Factor factorize(const DensityOperator& rho) {
    const HermitianEigen eig = hermitian_eigen(rho.matrix());
    Factor f;
    for (double v : eig.values) {
        if (v > kRankTol) ++f.rank;
    }
    if (f.rank == 0) throw ValidationError("density operator has no positive eigenvalue");
    f.w.resize(rho.matrix().rows(), f.rank);
    for (int i = 0; i < f.rank; ++i) f.w.col(i) = std::sqrt(eig.values[static_cast<std::size_t>(i)]) * eig.vectors.col(i);
    return f;
}

class Objective {
public:
    Objective(const LocalHamiltonian& h, const SubsetChoice& s, GapKind kind) : eval_(h, s, kind) {}

    // p * M(v / |v|) for an unnormalized member v with p = |v|^2.
    double term(const CVector& v) const {
        const double p = v.squaredNorm();
        if (p < 1e-14) return 0.0;
        const CVector u = v / std::sqrt(p);
        return p * eval_.value({u.data(), static_cast<std::size_t>(u.size())}, Exec::serial);
    }

    double value(std::span<const Complex> amps) const { return eval_.value(amps, Exec::serial); }

private:
    PowerSetEvaluator eval_;
};

struct SearchResult {
    double value = 0.0;
    CMatrix u;
    bool converged = false;
};

SearchResult local_search(const Factor& f, const Objective& obj, CMatrix u, const RoofConfig& cfg) {
    const auto m = u.rows();
    CMatrix members = f.w * u.transpose();  // column k is member k
    std::vector<double> terms(static_cast<std::size_t>(m));
    for (Eigen::Index k = 0; k < m; ++k) terms[static_cast<std::size_t>(k)] = obj.term(members.col(k));
    auto total = [&] {
        double t = 0.0;
        for (double v : terms) t += v;
        return t;
    };

    std::vector<double> history{total()};
    double step = kInitialStep;
    bool stalled = false;
    const Complex phases[2] = {Complex(1.0, 0.0), Complex(0.0, 1.0)};
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        bool improved = false;
        for (Eigen::Index k = 0; k < m; ++k) {
            for (Eigen::Index l = k + 1; l < m; ++l) {
                const auto uk = static_cast<std::size_t>(k), ul = static_cast<std::size_t>(l);
                for (const Complex& e : phases) {
                    for (double sign : {1.0, -1.0}) {
                        const double c = std::cos(sign * step), s = std::sin(sign * step);
                        CVector nk = c * members.col(k) + (s * e) * members.col(l);
                        CVector nl = (-s * std::conj(e)) * members.col(k) + c * members.col(l);
                        const double tk = obj.term(nk), tl = obj.term(nl);
                        if (tk + tl < terms[uk] + terms[ul] - 1e-15) {
                            members.col(k) = std::move(nk);
                            members.col(l) = std::move(nl);
                            const Eigen::RowVectorXcd rk = u.row(k), rl = u.row(l);
                            u.row(k) = c * rk + (s * e) * rl;
                            u.row(l) = (-s * std::conj(e)) * rk + c * rl;
                            terms[uk] = tk;
                            terms[ul] = tl;
                            improved = true;
                        }
                    }
                }
            }
        }
        history.push_back(total());
        if (history.back() <= 0.0) {
            stalled = true;
            break;
        }
        if (!improved) {
            step *= 0.5;
            if (step < kMinStep) {
                stalled = true;
                break;
            }
        }
    }
    SearchResult r;
    r.value = history.back();
    r.u = std::move(u);
    const std::size_t mark = (history.size() - 1) * 4 / 5;
    r.converged = stalled || history[mark] - history.back() < cfg.tolerance;
    return r;
}

Ensemble ensemble_from(const Factor& f, const CMatrix& u, const Register& reg) {
    Ensemble ens;
    const CMatrix members = f.w * u.transpose();
    for (Eigen::Index k = 0; k < members.cols(); ++k) {
        const double p = members.col(k).squaredNorm();
        if (p < kDropTol) continue;
        ens.members.push_back({p, PureState::normalized(reg, members.col(k))});
    }
    // Renormalize away the dropped mass so probabilities sum to 1.
    double total = 0.0;
    for (const auto& mbr : ens.members) total += mbr.probability;
    for (auto& mbr : ens.members) mbr.probability /= total;
    return ens;
}

double ensemble_value(const Ensemble& ens, const Objective& obj) {
    double v = 0.0;
    for (const auto& mbr : ens.members) v += mbr.probability * obj.value(mbr.state.view());
    return v;
}

RoofResult estimate(const DensityOperator& rho, const SubsetChoice& s, const LocalHamiltonian& h,
                    const RoofConfig& cfg, GapKind kind) {
    if (!(rho.reg() == h.reg())) throw ValidationError("density operator and Hamiltonian registers differ");
    if (cfg.restarts < 1) throw ValidationError("roof estimator needs restarts >= 1");
    if (cfg.max_iters < 1) throw ValidationError("roof estimator needs max_iters >= 1");
    const Factor f = factorize(rho);
    const Objective obj(h, s, kind);
    RoofResult res;
    res.rank = f.rank;
    if (f.rank == 1) {
        res.ensemble = ensemble_from(f, CMatrix::Identity(1, 1), rho.reg());
        res.value = obj.value(res.ensemble.members.front().state.view());
        res.converged = true;
        res.restarts = 0;
        res.ensemble_size = 1;
        return res;
    }
    const int m = cfg.ensemble_size == 0 ? f.rank * f.rank : cfg.ensemble_size;
    if (m < f.rank) {
        throw ValidationError("ensemble size " + std::to_string(m) + " is below the rank " + std::to_string(f.rank));
    }
    res.ensemble_size = m;
    res.restarts = cfg.restarts;

    std::vector<SearchResult> results(static_cast<std::size_t>(cfg.restarts));
    std::exception_ptr error;
    const CounterRng root(cfg.seed);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < cfg.restarts; ++k) {
        try {
            CMatrix u0;
            if (k == 0) {
                u0 = CMatrix::Identity(m, f.rank);  // eigen-ensemble, padded with empty members
            } else {
                CounterRng rng = root.split(static_cast<std::uint64_t>(k));
                u0 = random_isometry(m, f.rank, rng);
            }
            results[static_cast<std::size_t>(k)] = local_search(f, obj, std::move(u0), cfg);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    std::size_t best = 0;
    int converged = 0;
    for (std::size_t k = 0; k < results.size(); ++k) {
        if (results[k].value < results[best].value) best = k;
        if (results[k].converged) ++converged;
    }
    res.converged = 2 * converged >= cfg.restarts;
    res.ensemble = ensemble_from(f, results[best].u, rho.reg());
    res.value = ensemble_value(res.ensemble, obj);
    return res;
}

}  // namespace

CMatrix Ensemble::reconstruct() const {
    if (members.empty()) return {};
    const auto d = members.front().state.amplitudes().size();
    CMatrix rho = CMatrix::Zero(d, d);
    for (const auto& mbr : members) {
        const CVector& a = mbr.state.amplitudes();
        rho += mbr.probability * (a * a.adjoint());
    }
    return rho;
}

int numerical_rank(const DensityOperator& rho) {
    int r = 0;
    for (double v : hermitian_eigenvalues(rho.matrix())) {
        if (v > kRankTol) ++r;
    }
    return r;
}

Ensemble decomposition_from_unitary(const DensityOperator& rho, const CMatrix& u) {
    const Factor f = factorize(rho);
    if (u.cols() != f.rank) {
        throw ValidationError("isometry has " + std::to_string(u.cols()) + " columns, rank is " +
                              std::to_string(f.rank));
    }
    if (u.rows() < u.cols()) throw ValidationError("isometry needs at least as many rows as columns");
    const CMatrix gram = u.adjoint() * u;
    if ((gram - CMatrix::Identity(f.rank, f.rank)).cwiseAbs().maxCoeff() > 1e-10) {
        throw ValidationError("decomposition matrix columns are not orthonormal");
    }
    return ensemble_from(f, u, rho.reg());
}

RoofResult roof_me(const DensityOperator& rho, const SubsetChoice& s, const LocalHamiltonian& h,
                   const RoofConfig& cfg) {
    return estimate(rho, s, h, cfg, GapKind::ergotropic);
}

RoofResult roof_mb(const DensityOperator& rho, const SubsetChoice& s, const LocalHamiltonian& h,
                   const RoofConfig& cfg) {
    return estimate(rho, s, h, cfg, GapKind::capacity);
}

double eigen_ensemble_average(const DensityOperator& rho, const SubsetChoice& s, const LocalHamiltonian& h,
                              GapKind kind) {
    const Factor f = factorize(rho);
    const Objective obj(h, s, kind);
    return ensemble_value(ensemble_from(f, CMatrix::Identity(f.rank, f.rank), rho.reg()), obj);
}

}  // namespace ergent
