#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tsloss {

/// Relative tolerance used to decide whether a time lies on k*h.
inline constexpr double kGridTolerance = 1e-12;

/// The periodic time scale hZ restricted to [0, T], T = N*h.
///
/// The horizon is always derived from (h, N). Grid points are t_k = k*h
/// for k = 0..N. A scale with N = 0 is the single point {0}; it only
/// arises as the domain of repeated delta derivatives.
class PeriodicScale {
public:
    PeriodicScale(double h, std::size_t steps);

    double step() const noexcept { return h_; }
    std::size_t steps() const noexcept { return n_; }
    double horizon() const noexcept { return static_cast<double>(n_) * h_; }
    std::size_t size() const noexcept { return n_ + 1; }
    double at(std::size_t k) const noexcept { return static_cast<double>(k) * h_; }

    bool contains(double t) const noexcept;
    /// Index k with t == k*h; throws NotAGridPoint.
    std::size_t index_of(double t) const;

    /// The scale [0, T - h], i.e. the domain T^kappa of a delta derivative.
    PeriodicScale reduced() const;

    friend bool operator==(const PeriodicScale&, const PeriodicScale&) = default;

private:
    double h_;
    std::size_t n_;
};

struct JumpOperators {
    double sigma;
    double rho;
    double mu;
    double nu;
};

JumpOperators jump_operators(const PeriodicScale& scale, double t);

/// A real-valued path sampled at every point of a PeriodicScale.
class GridFunction {
public:
    GridFunction(PeriodicScale scale, std::vector<double> values);

    const PeriodicScale& scale() const noexcept { return scale_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t k) const noexcept { return values_[k]; }
    double front() const noexcept { return values_.front(); }
    double back() const noexcept { return values_.back(); }

private:
    PeriodicScale scale_;
    std::vector<double> values_;
};

/// Forward difference quotient (f(t+h) - f(t)) / h on [0, T - h].
GridFunction delta_derivative(const GridFunction& f);

/// Delta integral over [a, b]: h * sum_{k=a/h}^{b/h-1} f(kh), oriented.
double delta_integral(const GridFunction& f, double a, double b);

} // namespace tsloss
