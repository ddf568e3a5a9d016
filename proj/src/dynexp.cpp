#include "tsloss/dynexp.hpp"

#include "tsloss/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tsloss {

double ipow(double base, std::int64_t n) noexcept {
    const bool invert = n < 0;
    auto e = static_cast<std::uint64_t>(invert ? -n : n);
    double result = 1.0;
    while (e != 0) {
        if (e & 1U) result *= base;
        base *= base;
        e >>= 1U;
    }
    return invert ? 1.0 / result : result;
}

bool is_regressive(double p, double h) noexcept {
    return h == 0.0 || std::abs(1.0 + p * h) > kRegressiveTolerance;
}

double ominus(double p, double h) {
    if (!is_regressive(p, h)) {
        throw Error(ErrorKind::NotRegressive, "1 + p h = 0 for p=" + std::to_string(p) + ", h=" + std::to_string(h));
    }
    return -p / (1.0 + p * h);
}

namespace {

std::int64_t grid_offset(double t, double t0, double h) {
    const double n = (t - t0) / h;
    const double k = std::round(n);
    if (!std::isfinite(n) || std::abs(n - k) > kOffsetTolerance * std::max(1.0, std::abs(n))) {
        throw Error(ErrorKind::NotAGridOffset,
                    "(t - t0)/h = " + std::to_string(n) + " is not an integer for h=" + std::to_string(h));
    }
    return static_cast<std::int64_t>(k);
}

} // namespace

double delta_exp(double p, double t, double t0, double h) {
    if (h < 0.0) throw Error(ErrorKind::InvalidArgument, "negative graininess");
    if (!is_regressive(p, h)) {
        throw Error(ErrorKind::NotRegressive, "1 + p h = 0 for p=" + std::to_string(p) + ", h=" + std::to_string(h));
    }
    if (h == 0.0) return std::exp(p * (t - t0));
    return ipow(1.0 + p * h, grid_offset(t, t0, h));
}

double FundamentalSystem::basis1(double t) const { return delta_exp(lambda1, t, 0.0, h); }

double FundamentalSystem::basis2(double t) const {
    if (kind == RootKind::Distinct) return delta_exp(lambda2, t, 0.0, h);
    // int_0^t dtau / (1 + p mu) = t / (1 + p h) for constant p
    return delta_exp(lambda1, t, 0.0, h) * t / (1.0 + lambda1 * h);
}

double FundamentalSystem::wronskian(double t) const {
    if (h > 0.0) {
        const double ts = t + h;
        return (basis1(t) * basis2(ts) - basis2(t) * basis1(ts)) / h;
    }
    if (kind == RootKind::Distinct) return (lambda2 - lambda1) * std::exp((lambda1 + lambda2) * t);
    return std::exp(2.0 * lambda1 * t);
}

FundamentalSystem solve_second_order(double alpha, double beta, double h) {
    if (h < 0.0 || !std::isfinite(h)) throw Error(ErrorKind::InvalidArgument, "graininess must be >= 0");
    if (!std::isfinite(alpha) || !std::isfinite(beta)) throw Error(ErrorKind::InvalidArgument, "non-finite coefficient");
    const double lead = 1.0 - alpha * h + beta * h * h;
    if (std::abs(lead) <= kRegressiveTolerance * std::max({1.0, std::abs(alpha * h), std::abs(beta * h * h)})) {
        throw Error(ErrorKind::NotRegressiveEquation,
                    "1 - alpha h + beta h^2 = 0 for alpha=" + std::to_string(alpha) + ", beta=" +
                        std::to_string(beta) + ", h=" + std::to_string(h));
    }

    const double disc = alpha * alpha - 4.0 * beta;
    const double scale = std::max({alpha * alpha, 4.0 * std::abs(beta), 1.0});
    if (std::abs(disc) <= kDoubleRootTolerance * scale) {
        const double p = -alpha / 2.0;
        if (!is_regressive(p, h)) throw Error(ErrorKind::NotRegressive, "double root p is not regressive");
        return {RootKind::Double, p, p, h};
    }
    if (disc < 0.0) {
        throw Error(ErrorKind::OscillatoryUnsupported,
                    "alpha^2 - 4 beta = " + std::to_string(disc) + " < 0 (complex characteristic roots)");
    }

    // Larger-magnitude root from the sign-matched formula, the other from l1 l2 = beta.
    const double s = std::sqrt(disc);
    const double q = -0.5 * (alpha + std::copysign(s, alpha));
    const double r1 = q;
    const double r2 = beta / q;
    return {RootKind::Distinct, std::max(r1, r2), std::min(r1, r2), h};
}

} // namespace tsloss
