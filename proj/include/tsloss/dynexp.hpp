#pragma once

// Delta exponential, regressivity, and fundamental systems for
//     y^DD + alpha y^D + beta y = 0
// with constant coefficients on hZ (h > 0) or on R (h == 0).

#include <cstdint>

namespace tsloss {

inline constexpr double kRegressiveTolerance = 1e-14;
inline constexpr double kDoubleRootTolerance = 1e-12;
/// Relative tolerance on (t - t0)/h being an integer.
inline constexpr double kOffsetTolerance = 1e-9;

/// base^n by repeated squaring; negative n uses the reciprocal.
double ipow(double base, std::int64_t n) noexcept;

bool is_regressive(double p, double h) noexcept;

/// (+)-inverse: -p / (1 + p h). Throws NotRegressive.
double ominus(double p, double h);

/// e_p(t, t0): (1 + p h)^((t - t0)/h) on hZ, exp(p (t - t0)) on R.
double delta_exp(double p, double t, double t0, double h);

enum class RootKind { Distinct, Double };

/// Basis {e_l1, e_l2} (Distinct) or {e_p, e_p * int_0^t 1/(1+p mu)} (Double),
/// anchored at t0 = 0. lambda1 >= lambda2; for Double both equal p = -alpha/2.
struct FundamentalSystem {
    RootKind kind;
    double lambda1;
    double lambda2;
    double h;

    double basis1(double t) const;
    double basis2(double t) const;
    /// W(y1, y2)(t) = y1 y2^D - y2 y1^D.
    double wronskian(double t) const;
};

FundamentalSystem solve_second_order(double alpha, double beta, double h);

class GeneralSolution {
public:
    GeneralSolution(FundamentalSystem fs, double c1, double c2) : fs_(fs), c1_(c1), c2_(c2) {}

    double operator()(double t) const { return c1_ * fs_.basis1(t) + c2_ * fs_.basis2(t); }
    const FundamentalSystem& system() const noexcept { return fs_; }

private:
    FundamentalSystem fs_;
    double c1_;
    double c2_;
};

inline GeneralSolution general_solution(const FundamentalSystem& fs, double c1, double c2) {
    return GeneralSolution(fs, c1, c2);
}

} // namespace tsloss
