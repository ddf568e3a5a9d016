#include "tsloss/elmodel.hpp"

#include "tsloss/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tsloss {

namespace {

double sq(double x) noexcept { return x * x; }

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

bool positive(double x) noexcept { return std::isfinite(x) && x > 0.0; }

} // namespace

ModelParams::ModelParams(const Values& values) : v_(values) {
    require(positive(v_.alpha), "alpha must be positive");
    require(positive(v_.beta), "beta must be positive");
    require(positive(v_.j) && v_.j <= 1.0, "j must lie in (0, 1]");
    require(positive(v_.delta), "delta must be positive");
    require(positive(v_.pi0), "pi0 must be positive");
    require(positive(v_.piT), "piT must be positive");
    require(positive(v_.T), "T must be positive");
}

ModelParams ModelParams::with_boundary(double pi0, double piT) const {
    Values v = v_;
    v.pi0 = pi0;
    v.piT = piT;
    return ModelParams(v);
}

ModelParams ModelParams::with_horizon(double T) const {
    Values v = v_;
    v.T = T;
    return ModelParams(v);
}

double lagrangian(const ModelParams& params, double pi, double v) noexcept {
    return sq(v / (params.beta() * params.j())) + params.alpha() * sq(v / params.j() + pi);
}

double ElSystem::characteristic(double lambda) const noexcept {
    return lambda * lambda + (a_coef / omega) * lambda - b_coef / omega;
}

ElSystem el_system_from_coefficients(double omega, double a_coef, double b_coef, double h) {
    if (std::abs(omega) <= kLeadingTolerance) {
        throw Error(ErrorKind::DegenerateLeadingCoefficient, "Omega = " + std::to_string(omega) + " at h=" +
                                                                 std::to_string(h));
    }
    const double zeta = (a_coef * a_coef + 4.0 * b_coef * omega) / (omega * omega);
    return {omega, a_coef, b_coef, zeta, solve_second_order(a_coef / omega, -b_coef / omega, h), h};
}

ElSystem el_coefficients(const ModelParams& params, double h) {
    if (!(h >= 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidArgument, "h must be >= 0");
    const double d = params.delta();
    const double j = params.j();
    const double k = params.alpha() * params.beta() * params.beta();
    const double omega = 1.0 + k - k * j * h;
    const double a_coef = -(d + k * d + k * j * j * h);
    const double b_coef = k * j * (d + j);
    if (std::abs(omega) <= kLeadingTolerance * (1.0 + k)) {
        throw Error(ErrorKind::DegenerateLeadingCoefficient,
                    "1 + alpha beta^2 - alpha beta^2 j h vanishes at h=" + std::to_string(h));
    }
    return el_system_from_coefficients(omega, a_coef, b_coef, h);
}

std::size_t commensurate_steps(double T, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidArgument, "h must be positive");
    const double n = T / h;
    const double k = std::round(n);
    if (!std::isfinite(n) || std::abs(n - k) > kCommensurateTolerance * std::max(1.0, n)) {
        throw Error(ErrorKind::NonCommensurateHorizon,
                    "T/h = " + std::to_string(n) + " is not an integer (T=" + std::to_string(T) +
                        ", h=" + std::to_string(h) + ")");
    }
    if (k < 3.0) {
        throw Error(ErrorKind::NonCommensurateHorizon, "T = N h needs N >= 3, got N=" + std::to_string(k));
    }
    return static_cast<std::size_t>(k);
}

ClosedFormPath ClosedFormPath::hz_distinct(double pi0, double piT, double g1, double g2, double h,
                                           std::size_t steps) {
    const auto n = static_cast<std::int64_t>(steps);
    const double g1n = ipow(g1, n);
    const double g2n = ipow(g2, n);
    const double denom = g1n - g2n;
    if (std::abs(denom) < kBoundaryDenominatorTolerance) {
        throw Error(ErrorKind::SingularBoundarySystem, "growth factors coincide: (1+l1 h)^N - (1+l2 h)^N = " +
                                                           std::to_string(denom));
    }
    ClosedFormPath p;
    p.kind_ = PathKind::HzDistinct;
    p.c1_ = (piT - pi0 * g2n) / denom;
    p.c2_ = pi0 - p.c1_;
    p.b1_ = g1;
    p.b2_ = g2;
    p.h_ = h;
    p.n_ = steps;
    p.T_ = static_cast<double>(steps) * h;
    p.pi0_ = pi0;
    p.piT_ = piT;
    return p;
}

ClosedFormPath ClosedFormPath::hz_double(double pi0, double piT, double g, double h, std::size_t steps) {
    if (g == 0.0) throw Error(ErrorKind::NotRegressive, "double root p = -1/h");
    ClosedFormPath p;
    p.kind_ = PathKind::HzDouble;
    p.b1_ = g;
    p.b2_ = g;
    p.h_ = h;
    p.n_ = steps;
    p.T_ = static_cast<double>(steps) * h;
    p.pi0_ = pi0;
    p.piT_ = piT;
    p.c1_ = pi0;
    // K2 from pi(T) = piT with the second basis e_p(t,0) t / (1 + p h)
    p.c2_ = g * (piT * ipow(g, -static_cast<std::int64_t>(steps)) - pi0) / p.T_;
    return p;
}

ClosedFormPath ClosedFormPath::continuous(double c1, double r1, double c2, double r2, double T) {
    ClosedFormPath p;
    p.kind_ = PathKind::Continuous;
    p.c1_ = c1;
    p.c2_ = c2;
    p.b1_ = r1;
    p.b2_ = r2;
    p.T_ = T;
    p.pi0_ = c1 + c2;
    return p;
}

double ClosedFormPath::grid_value(std::int64_t k) const {
    const auto n = static_cast<std::int64_t>(n_);
    if (kind_ == PathKind::HzDouble) {
        const double t = static_cast<double>(k) * h_;
        // g^k pi0 + g^k [piT g^-N - pi0] t / T
        return ipow(b1_, k) * pi0_ + (piT_ * ipow(b1_, k - n) - pi0_ * ipow(b1_, k)) * (t / T_);
    }
    if (std::abs(b1_) >= std::abs(b2_)) {
        // C g1^k rewritten with g1^(k-N) so the growing mode never overflows.
        const double num = piT_ - pi0_ * ipow(b2_, n);
        const double growing = num * ipow(b1_, k - n) / (1.0 - ipow(b2_ / b1_, n));
        return growing + c2_ * ipow(b2_, k);
    }
    return c1_ * ipow(b1_, k) + c2_ * ipow(b2_, k);
}

double ClosedFormPath::operator()(double t) const {
    if (kind_ == PathKind::Continuous) return c1_ * std::exp(b1_ * t) + c2_ * std::exp(b2_ * t);

    const double x = t / h_;
    const double k = std::round(x);
    if (std::abs(x - k) <= kGridTolerance * std::max(1.0, std::abs(x))) {
        return grid_value(static_cast<std::int64_t>(k));
    }
    if (b1_ > 0.0 && b2_ > 0.0) {
        if (kind_ == PathKind::HzDouble) {
            return std::pow(b1_, x) * pi0_ + (piT_ * std::pow(b1_, x - static_cast<double>(n_)) -
                                              pi0_ * std::pow(b1_, x)) * (t / T_);
        }
        return c1_ * std::pow(b1_, x) + c2_ * std::pow(b2_, x);
    }
    const double lo = std::clamp(std::floor(x), 0.0, static_cast<double>(n_));
    const double hi = std::min(lo + 1.0, static_cast<double>(n_));
    const double w = std::clamp(x - lo, 0.0, 1.0);
    const double vlo = grid_value(static_cast<std::int64_t>(lo));
    const double vhi = grid_value(static_cast<std::int64_t>(hi));
    return vlo + w * (vhi - vlo);
}

double ClosedFormPath::derivative(double t) const {
    if (kind_ != PathKind::Continuous) {
        throw Error(ErrorKind::InvalidArgument, "derivative() is defined for the continuous path only");
    }
    return c1_ * b1_ * std::exp(b1_ * t) + c2_ * b2_ * std::exp(b2_ * t);
}

GridFunction ClosedFormPath::sample() const {
    if (kind_ == PathKind::Continuous) {
        throw Error(ErrorKind::InvalidArgument, "a continuous path has no grid; sample it explicitly");
    }
    std::vector<double> v(n_ + 1);
    for (std::size_t k = 0; k <= n_; ++k) v[k] = grid_value(static_cast<std::int64_t>(k));
    return GridFunction(PeriodicScale(h_, n_), std::move(v));
}

ClosedFormPath optimal_path_hz(const ElSystem& system, double pi0, double piT, double T) {
    if (!(system.h > 0.0)) throw Error(ErrorKind::InvalidArgument, "optimal_path_hz needs h > 0");
    const std::size_t n = commensurate_steps(T, system.h);
    if (system.roots.kind == RootKind::Double) {
        return ClosedFormPath::hz_double(pi0, piT, system.growth1(), system.h, n);
    }
    const double g1 = system.growth1();
    const double g2 = system.growth2();
    if (std::abs(g1) <= kRegressiveTolerance || std::abs(g2) <= kRegressiveTolerance) {
        throw Error(ErrorKind::NotRegressive, "a growth factor 1 + l h vanishes");
    }
    return ClosedFormPath::hz_distinct(pi0, piT, g1, g2, system.h, n);
}

ClosedFormPath optimal_path_hz(const ModelParams& params, double h) {
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "optimal_path_hz needs h > 0");
    commensurate_steps(params.horizon(), h);
    return optimal_path_hz(el_coefficients(params, h), params.pi0(), params.piT(), params.horizon());
}

ClosedFormPath optimal_path_continuous(const ModelParams& params) {
    const ElSystem sys = el_coefficients(params, 0.0);
    const double r1 = sys.roots.lambda1;
    const double r2 = sys.roots.lambda2;
    if (sys.roots.kind != RootKind::Distinct || !(r1 > 0.0 && r2 < 0.0)) {
        throw Error(ErrorKind::SingularBoundarySystem, "continuous characteristic roots are not of opposite sign");
    }
    const double T = params.horizon();
    const double e1 = std::exp(r1 * T);
    const double e2 = std::exp(r2 * T);
    const double c1 = (params.piT() - params.pi0() * e2) / (e1 - e2);
    return ClosedFormPath::continuous(c1, r1, params.pi0() - c1, r2, T);
}

double discount_weight(double delta, double h, std::size_t k) noexcept {
    return std::pow(1.0 + h * delta, -static_cast<double>(k));
}

double social_loss_hz(const ModelParams& params, double h, const GridFunction& path) {
    const PeriodicScale& scale = path.scale();
    if (std::abs(scale.step() - h) > kGridTolerance * h ||
        std::abs(scale.horizon() - params.horizon()) > kCommensurateTolerance * params.horizon()) {
        throw Error(ErrorKind::ScaleMismatch, "path lives on h=" + std::to_string(scale.step()) + ", T=" +
                                                  std::to_string(scale.horizon()) + " but the functional expects h=" +
                                                  std::to_string(h) + ", T=" + std::to_string(params.horizon()));
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < scale.steps(); ++k) {
        const double v = (path[k + 1] - path[k]) / h;
        sum += lagrangian(params, path[k], v) * discount_weight(params.delta(), h, k) * h;
    }
    return sum;
}

double social_loss_continuous(const ModelParams& params, const ClosedFormPath& path, double tol) {
    if (path.kind() != PathKind::Continuous) {
        throw Error(ErrorKind::InvalidArgument, "social_loss_continuous needs a continuous path");
    }
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    const auto integrand = [&](double t) {
        return lagrangian(params, path(t), path.derivative(t)) * std::exp(-params.delta() * t);
    };
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double T = params.horizon();
    // The integrand is nonnegative, so its L1 norm is the integral; turn the
    // absolute tolerance into the relative one the rule expects.
    const double rough = Rule::integrate(integrand, 0.0, T, 0);
    if (rough == 0.0) return 0.0;
    const double rel = std::max(tol / rough, 4.0 * std::numeric_limits<double>::epsilon());
    return Rule::integrate(integrand, 0.0, T, 30, rel);
}

} // namespace tsloss
