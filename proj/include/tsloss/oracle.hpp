#pragma once

// Independent check of the closed-form minimizers: the discrete functional
// is a convex quadratic in the interior values pi_1..pi_{N-1}, so its
// minimizer is the solution of a symmetric tridiagonal linear system.
// Nothing here uses the characteristic roots.

#include "tsloss/elmodel.hpp"
#include "tsloss/timescale.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace tsloss::oracle {

/// Gradient-equals-zero system for the interior unknowns, row i <-> pi_{i+1}.
/// sub[i] couples row i to row i-1 (sub[0] unused), sup[i] to row i+1.
struct StationaritySystem {
    PeriodicScale scale;
    std::vector<double> diag;
    std::vector<double> sub;
    std::vector<double> sup;
    std::vector<double> rhs;

    std::size_t dimension() const noexcept { return diag.size(); }
};

StationaritySystem assemble_stationarity(const ModelParams& params, double h);

struct TridiagonalSolution {
    std::vector<double> x;
    /// Pivots of the LDL^T factorization; all positive iff the matrix is SPD.
    std::vector<double> pivots;
};

/// Symmetric tridiagonal solve; throws SingularSystem on a nonpositive pivot.
TridiagonalSolution solve_spd_tridiagonal(const StationaritySystem& system);

/// Unique minimizer of Lambda_h with pi(0) = pi0, pi(T) = piT.
GridFunction qp_minimize(const ModelParams& params, double h);

/// max_{k <= N-2} |Omega pi^DD + A pi^D - B pi| from finite differences of `path`.
double el_residual(const ModelParams& params, double h, const GridFunction& path);
double el_residual(const ElSystem& system, const GridFunction& path);

struct PerturbationReport {
    double min_gap;
    bool all_nonnegative;
};

inline constexpr double kPerturbationMagnitudes[] = {1e-3, -1e-3, 1e-1, -1e-1};
inline constexpr double kGapTolerance = 1e-12;

/// min over random boundary-vanishing directions eta and magnitudes eps of
/// Lambda_h(path + eps eta) - Lambda_h(path).
PerturbationReport perturbation_check(const ModelParams& params, double h, const GridFunction& path,
                                      std::size_t samples, std::uint64_t seed);

struct Instance {
    ModelParams params;
    double h;
};

/// Random valid instance: N in [3, 500], h = T/N, T in [5, 15], and h kept
/// well below the pole of Omega (Omega >= (1 + alpha beta^2) / 4).
Instance random_instance(std::mt19937_64& rng);

/// Closed form vs. tridiagonal minimizer on one instance.
struct CrossCheck {
    double deviation;     // max_k |qp_k - closed_k| / (1 + max|closed|)
    double residual;      // el_residual(closed) / max(1, max|closed|)
    double objective_gap; // |Lambda_h(qp) - Lambda_h(closed)| / Lambda_h(closed)
};

CrossCheck cross_check(const ModelParams& params, double h);

} // namespace tsloss::oracle
