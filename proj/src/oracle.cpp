#include "tsloss/oracle.hpp"

#include "tsloss/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace tsloss::oracle {

StationaritySystem assemble_stationarity(const ModelParams& params, double h) {
    const std::size_t n = commensurate_steps(params.horizon(), h);
    const double alpha = params.alpha();
    const double beta = params.beta();
    const double j = params.j();

    // lambda(x, (y - x)/h) = a v^2 + 2 b v x + c x^2 with v = (y - x)/h.
    // Multiplying by h^2 gives P y^2 + Q x^2 + R x y with:
    const double a = 1.0 / (beta * beta * j * j) + alpha / (j * j);
    const double b = alpha / j;
    const double c = alpha;
    const double P = a;
    const double Q = a - 2.0 * b * h + c * h * h;
    const double R = -2.0 * a + 2.0 * b * h;

    // Step weights h * (1 - h delta / (1 + h delta))^k.
    const double ratio = 1.0 - h * params.delta() / (1.0 + h * params.delta());
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = h * std::pow(ratio, static_cast<double>(k));

    const std::size_t m = n - 1;
    StationaritySystem sys{PeriodicScale(h, n), std::vector<double>(m), std::vector<double>(m, 0.0),
                           std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t i = r + 1; // unknown pi_i
        sys.diag[r] = w[i] * Q + w[i - 1] * P;
        if (r > 0) sys.sub[r] = 0.5 * w[i - 1] * R;
        if (r + 1 < m) sys.sup[r] = 0.5 * w[i] * R;
    }
    sys.rhs[0] -= 0.5 * w[0] * R * params.pi0();
    sys.rhs[m - 1] -= 0.5 * w[n - 1] * R * params.piT();
    return sys;
}

TridiagonalSolution solve_spd_tridiagonal(const StationaritySystem& system) {
    const std::size_t m = system.dimension();
    if (m == 0) return {};
    std::vector<double> d(m);
    std::vector<double> l(m, 0.0);
    std::vector<double> z(m);
    for (std::size_t r = 0; r < m; ++r) {
        if (r == 0) {
            d[r] = system.diag[r];
            z[r] = system.rhs[r];
        } else {
            l[r] = system.sub[r] / d[r - 1];
            d[r] = system.diag[r] - l[r] * system.sup[r - 1];
            z[r] = system.rhs[r] - l[r] * z[r - 1];
        }
        if (!(d[r] > 0.0)) {
            throw Error(ErrorKind::SingularSystem, "nonpositive pivot " + std::to_string(d[r]) + " at row " +
                                                       std::to_string(r));
        }
    }
    std::vector<double> x(m);
    x[m - 1] = z[m - 1] / d[m - 1];
    for (std::size_t r = m - 1; r-- > 0;) x[r] = (z[r] - system.sup[r] * x[r + 1]) / d[r];
    return {std::move(x), std::move(d)};
}

GridFunction qp_minimize(const ModelParams& params, double h) {
    const StationaritySystem sys = assemble_stationarity(params, h);
    const TridiagonalSolution sol = solve_spd_tridiagonal(sys);
    std::vector<double> values;
    values.reserve(sys.scale.size());
    values.push_back(params.pi0());
    values.insert(values.end(), sol.x.begin(), sol.x.end());
    values.push_back(params.piT());
    return GridFunction(sys.scale, std::move(values));
}

double el_residual(const ElSystem& system, const GridFunction& path) {
    if (std::abs(path.scale().step() - system.h) > kGridTolerance * system.h) {
        throw Error(ErrorKind::ScaleMismatch, "path step " + std::to_string(path.scale().step()) +
                                                  " differs from h=" + std::to_string(system.h));
    }
    if (path.scale().steps() < 2) return 0.0;
    const GridFunction d1 = delta_derivative(path);
    const GridFunction d2 = delta_derivative(d1);
    double worst = 0.0;
    for (std::size_t k = 0; k < d2.size(); ++k) {
        const double r = system.omega * d2[k] + system.a_coef * d1[k] - system.b_coef * path[k];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double el_residual(const ModelParams& params, double h, const GridFunction& path) {
    if (std::abs(path.scale().horizon() - params.horizon()) > kCommensurateTolerance * params.horizon()) {
        throw Error(ErrorKind::ScaleMismatch, "path horizon " + std::to_string(path.scale().horizon()) +
                                                  " differs from T=" + std::to_string(params.horizon()));
    }
    return el_residual(el_coefficients(params, h), path);
}

PerturbationReport perturbation_check(const ModelParams& params, double h, const GridFunction& path,
                                      std::size_t samples, std::uint64_t seed) {
    const double base = social_loss_hz(params, h, path);
    const std::size_t size = path.size();
    std::mt19937_64 rng(seed);
    // Top 53 bits -> [0, 1), mapped to [-1, 1); identical on every platform.
    const auto uniform = [&rng] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };

    double min_gap = std::numeric_limits<double>::infinity();
    std::vector<double> eta(size, 0.0);
    std::vector<double> trial(size);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t k = 1; k + 1 < size; ++k) eta[k] = uniform();
        for (const double eps : kPerturbationMagnitudes) {
            for (std::size_t k = 0; k < size; ++k) trial[k] = path[k] + eps * eta[k];
            const double gap = social_loss_hz(params, h, GridFunction(path.scale(), trial)) - base;
            min_gap = std::min(min_gap, gap);
        }
    }
    return {min_gap, min_gap >= -kGapTolerance};
}

Instance random_instance(std::mt19937_64& rng) {
    const auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    while (true) {
        ModelParams::Values v;
        v.alpha = uniform(0.1, 2.0);
        v.beta = uniform(0.5, 3.0);
        v.j = uniform(0.2, 1.0);
        v.delta = uniform(0.02, 0.5);
        v.pi0 = uniform(0.5, 20.0);
        v.piT = uniform(0.5, 20.0);
        v.T = uniform(5.0, 15.0);
        const auto n = static_cast<std::size_t>(3 + rng() % 498);
        const double h = v.T / static_cast<double>(n);
        const double k = v.alpha * v.beta * v.beta;
        if (k * v.j * h > 0.75 * (1.0 + k)) continue;
        return {ModelParams(v), h};
    }
}

CrossCheck cross_check(const ModelParams& params, double h) {
    const GridFunction closed = optimal_path_hz(params, h).sample();
    const GridFunction qp = qp_minimize(params, h);
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t k = 0; k < closed.size(); ++k) {
        scale = std::max(scale, std::abs(closed[k]));
        diff = std::max(diff, std::abs(qp[k] - closed[k]));
    }
    const double lc = social_loss_hz(params, h, closed);
    const double lq = social_loss_hz(params, h, qp);
    return {diff / (1.0 + scale), el_residual(params, h, closed) / std::max(1.0, scale), std::abs(lq - lc) / lc};
}

} // namespace tsloss::oracle
