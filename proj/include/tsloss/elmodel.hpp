#pragma once

// Social-loss variational model: the Lagrangian
//     lambda(pi, v) = (v / (beta j))^2 + alpha (v / j + pi)^2
// discounted by e_{(-)delta}(t, 0), its functionals on R and hZ, the
// Euler-Lagrange coefficients and the closed-form minimizers.

#include "tsloss/dynexp.hpp"
#include "tsloss/timescale.hpp"

#include <cstddef>

namespace tsloss {

inline constexpr double kLeadingTolerance = 1e-12;
inline constexpr double kCommensurateTolerance = 1e-9;
inline constexpr double kBoundaryDenominatorTolerance = 1e-14;

/// Economic constants plus boundary data, validated on construction.
///
/// Defaults are the reference constants alpha = 1/2, beta = 3, j = 3/4,
/// delta = 1/4 over one year of monthly data (T = 11) with unit boundaries.
class ModelParams {
public:
    struct Values {
        double alpha = 0.5;
        double beta = 3.0;
        double j = 0.75;
        double delta = 0.25;
        double pi0 = 1.0;
        double piT = 1.0;
        double T = 11.0;
    };

    ModelParams() : ModelParams(Values{}) {}
    explicit ModelParams(const Values& values);

    double alpha() const noexcept { return v_.alpha; }
    double beta() const noexcept { return v_.beta; }
    double j() const noexcept { return v_.j; }
    double delta() const noexcept { return v_.delta; }
    double pi0() const noexcept { return v_.pi0; }
    double piT() const noexcept { return v_.piT; }
    double horizon() const noexcept { return v_.T; }
    const Values& values() const noexcept { return v_; }

    ModelParams with_boundary(double pi0, double piT) const;
    ModelParams with_horizon(double T) const;

private:
    Values v_;
};

/// Undiscounted integrand lambda(pi, v).
double lagrangian(const ModelParams& params, double pi, double v) noexcept;

/// Coefficients of Omega pi^DD + A pi^D - B pi = 0 and its characteristic data.
struct ElSystem {
    double omega;
    double a_coef;
    double b_coef;
    double zeta;
    FundamentalSystem roots;
    double h;

    /// phi(l) = l^2 + (A/Omega) l - B/Omega.
    double characteristic(double lambda) const noexcept;
    double growth1() const noexcept { return 1.0 + roots.lambda1 * h; }
    double growth2() const noexcept { return 1.0 + roots.lambda2 * h; }
};

/// Omega = 1 + a b^2 - a b^2 j h, A = -(d + a b^2 d + a b^2 j^2 h), B = a b^2 j (d + j).
/// h == 0 gives the continuous model. Throws DegenerateLeadingCoefficient.
ElSystem el_coefficients(const ModelParams& params, double h);

/// Builds an ElSystem from raw (Omega, A, B); used to reach branches that
/// positive economic constants cannot produce.
ElSystem el_system_from_coefficients(double omega, double a_coef, double b_coef, double h);

enum class PathKind { HzDistinct, HzDouble, Continuous };

/// Evaluable minimizer.
///
/// HzDistinct: c1 g1^(t/h) + c2 g2^(t/h), g_i = 1 + l_i h, c1 = C, c2 = pi0 - C.
/// HzDouble:   c1 g^(t/h) + c2 g^(t/h) t / g  (c1 = K1, c2 = K2, g = 1 + p h).
/// Continuous: c1 e^(r1 t) + c2 e^(r2 t).
///
/// On hZ kinds, grid times use integer powers. Off-grid times use the real
/// power when every base is positive and linear interpolation between the
/// neighbouring grid values otherwise.
class ClosedFormPath {
public:
    static ClosedFormPath hz_distinct(double pi0, double piT, double g1, double g2, double h, std::size_t steps);
    static ClosedFormPath hz_double(double pi0, double piT, double g, double h, std::size_t steps);
    static ClosedFormPath continuous(double c1, double r1, double c2, double r2, double T);

    PathKind kind() const noexcept { return kind_; }
    double c1() const noexcept { return c1_; }
    double c2() const noexcept { return c2_; }
    /// Growth factors 1 + l_i h (hZ) or rates r_i (continuous).
    double base1() const noexcept { return b1_; }
    double base2() const noexcept { return b2_; }
    double step() const noexcept { return h_; }
    std::size_t steps() const noexcept { return n_; }
    double horizon() const noexcept { return T_; }

    double operator()(double t) const;
    /// pi'(t); continuous kind only.
    double derivative(double t) const;

    /// Values on the path's own grid (hZ kinds only).
    GridFunction sample() const;

private:
    ClosedFormPath() = default;
    double grid_value(std::int64_t k) const;

    PathKind kind_ = PathKind::Continuous;
    double c1_ = 0.0;
    double c2_ = 0.0;
    double b1_ = 0.0;
    double b2_ = 0.0;
    double h_ = 0.0;
    std::size_t n_ = 0;
    double T_ = 0.0;
    // Boundary data kept for the overflow-safe evaluation of the growing mode.
    double pi0_ = 0.0;
    double piT_ = 0.0;
};

/// Number of steps N with T = N h; throws NonCommensurateHorizon.
std::size_t commensurate_steps(double T, double h);

/// Closed-form minimizer of the hZ functional subject to pi(0) = pi0, pi(T) = piT.
ClosedFormPath optimal_path_hz(const ModelParams& params, double h);
/// Same, for an injected coefficient record. Requires `system.h > 0`.
ClosedFormPath optimal_path_hz(const ElSystem& system, double pi0, double piT, double T);

ClosedFormPath optimal_path_continuous(const ModelParams& params);

/// Discount weight e_{(-)delta}(t_k, 0) = (1 + h delta)^(-k).
double discount_weight(double delta, double h, std::size_t k) noexcept;

/// Lambda_h(pi) = sum_{k=0}^{N-1} lambda(pi_k, pi^D_k) e_{(-)delta}(t_k, 0) h.
double social_loss_hz(const ModelParams& params, double h, const GridFunction& path);

inline constexpr double kDefaultQuadratureTolerance = 1e-10;

/// Lambda_C(pi) = int_0^T lambda(pi, pi') e^(-delta t) dt by adaptive quadrature.
double social_loss_continuous(const ModelParams& params, const ClosedFormPath& path,
                              double tol = kDefaultQuadratureTolerance);

} // namespace tsloss
