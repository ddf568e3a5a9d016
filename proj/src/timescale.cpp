#include "tsloss/timescale.hpp"

#include "tsloss/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tsloss {

PeriodicScale::PeriodicScale(double h, std::size_t steps) : h_(h), n_(steps) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorKind::InvalidArgument, "step h must be finite and positive, got " + std::to_string(h));
    }
}

bool PeriodicScale::contains(double t) const noexcept {
    if (!std::isfinite(t)) return false;
    const double k = std::round(t / h_);
    if (k < 0.0 || k > static_cast<double>(n_)) return false;
    return std::abs(t - k * h_) <= kGridTolerance * std::max(std::abs(t), h_);
}

std::size_t PeriodicScale::index_of(double t) const {
    if (!contains(t)) {
        throw Error(ErrorKind::NotAGridPoint, std::to_string(t) + " is not on the grid h=" + std::to_string(h_) +
                                                   ", N=" + std::to_string(n_));
    }
    return static_cast<std::size_t>(std::round(t / h_));
}

PeriodicScale PeriodicScale::reduced() const {
    if (n_ == 0) throw Error(ErrorKind::InvalidArgument, "a single-point scale has no reduced domain");
    return PeriodicScale(h_, n_ - 1);
}

JumpOperators jump_operators(const PeriodicScale& scale, double t) {
    const std::size_t k = scale.index_of(t);
    const std::size_t sk = std::min(k + 1, scale.steps());
    const std::size_t rk = k == 0 ? 0 : k - 1;
    const double tk = scale.at(k);
    return {scale.at(sk), scale.at(rk), scale.at(sk) - tk, tk - scale.at(rk)};
}

GridFunction::GridFunction(PeriodicScale scale, std::vector<double> values)
    : scale_(scale), values_(std::move(values)) {
    if (values_.size() != scale_.size()) {
        throw Error(ErrorKind::ScaleMismatch, "expected " + std::to_string(scale_.size()) + " values, got " +
                                                  std::to_string(values_.size()));
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw Error(ErrorKind::InvalidArgument, "non-finite value at index " + std::to_string(k));
        }
    }
}

GridFunction delta_derivative(const GridFunction& f) {
    const PeriodicScale domain = f.scale().reduced();
    const double h = f.scale().step();
    std::vector<double> g(domain.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = (f[k + 1] - f[k]) / h;
    return GridFunction(domain, std::move(g));
}

double delta_integral(const GridFunction& f, double a, double b) {
    const std::size_t ka = f.scale().index_of(a);
    const std::size_t kb = f.scale().index_of(b);
    if (ka == kb) return 0.0;
    const auto [lo, hi] = std::minmax(ka, kb);
    double sum = 0.0;
    for (std::size_t k = lo; k < hi; ++k) sum += f[k];
    sum *= f.scale().step();
    return ka < kb ? sum : -sum;
}

} // namespace tsloss
