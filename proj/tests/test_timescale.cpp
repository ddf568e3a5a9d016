#include "support.hpp"

#include "tsloss/error.hpp"
#include "tsloss/timescale.hpp"

#include <doctest.h>

using namespace tsloss;
using tsloss::test::Gen;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected a tsloss::Error");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("jump operators on hZ") {
    SUBCASE("interior point") {
        const auto j = jump_operators(PeriodicScale(1.0, 12), 3.0);
        CHECK(j.sigma == 4.0);
        CHECK(j.rho == 2.0);
        CHECK(j.mu == 1.0);
        CHECK(j.nu == 1.0);
    }
    SUBCASE("sigma clamps at sup T") {
        const auto j = jump_operators(PeriodicScale(0.25, 12), 3.0);
        CHECK(j.sigma == 3.0);
        CHECK(j.mu == 0.0);
        CHECK(j.rho == 2.75);
    }
    SUBCASE("rho clamps at inf T") {
        const auto j = jump_operators(PeriodicScale(1.0, 12), 0.0);
        CHECK(j.rho == 0.0);
        CHECK(j.nu == 0.0);
        CHECK(j.sigma == 1.0);
    }
    SUBCASE("decimal steps are recognised as grid points") {
        const PeriodicScale s(0.11, 100);
        CHECK(s.contains(11.0));
        CHECK(s.contains(0.33));
        CHECK(s.index_of(0.33) == 3);
        CHECK(jump_operators(s, 11.0).sigma == doctest::Approx(11.0));
    }
    SUBCASE("off-grid and out-of-range times") {
        const PeriodicScale s(1.0, 12);
        CHECK(kind_of([&] { jump_operators(s, 2.5); }) == ErrorKind::NotAGridPoint);
        CHECK(kind_of([&] { jump_operators(s, 13.0); }) == ErrorKind::NotAGridPoint);
        CHECK(kind_of([&] { jump_operators(s, -1.0); }) == ErrorKind::NotAGridPoint);
    }
}

TEST_CASE("scale and grid function validation") {
    CHECK(kind_of([] { PeriodicScale(0.0, 3); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { PeriodicScale(-1.0, 3); }) == ErrorKind::InvalidArgument);
    const PeriodicScale s(0.5, 4);
    CHECK(s.horizon() == 2.0);
    CHECK(kind_of([&] { GridFunction(s, {1, 2, 3}); }) == ErrorKind::ScaleMismatch);
    CHECK(kind_of([&] { GridFunction(s, {1, 2, 3, NAN, 5}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("delta derivative is the forward difference quotient") {
    SUBCASE("constant") {
        const auto g = delta_derivative(GridFunction(PeriodicScale(0.3, 5), std::vector<double>(6, 7.5)));
        CHECK(g.size() == 5);
        for (const double x : g.values()) CHECK(x == 0.0);
    }
    SUBCASE("squares, h = 1") {
        const auto g = delta_derivative(GridFunction(PeriodicScale(1.0, 3), {0, 1, 4, 9}));
        CHECK(g.scale() == PeriodicScale(1.0, 2));
        CHECK(std::vector<double>(g.values().begin(), g.values().end()) == std::vector<double>{1, 3, 5});
    }
    SUBCASE("powers of two, h = 0.5") {
        const auto g = delta_derivative(GridFunction(PeriodicScale(0.5, 4), {1, 2, 4, 8, 16}));
        CHECK(std::vector<double>(g.values().begin(), g.values().end()) == std::vector<double>{2, 4, 8, 16});
    }
    SUBCASE("a single point has no derivative") {
        CHECK(kind_of([] { delta_derivative(GridFunction(PeriodicScale(1.0, 0), {1.0})); }) ==
              ErrorKind::InvalidArgument);
    }
}

TEST_CASE("delta integral") {
    const PeriodicScale s(0.25, 12);
    const GridFunction one(s, std::vector<double>(13, 1.0));
    CHECK(delta_integral(one, 0.0, s.horizon()) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(delta_integral(one, 1.0, 1.0) == 0.0);
    CHECK(delta_integral(one, 2.0, 0.5) == doctest::Approx(-1.5));

    Gen gen(11);
    const GridFunction f(s, gen.values(13));
    for (std::size_t k = 0; k < 12; ++k) {
        // int_t^sigma(t) f = mu(t) f(t)
        CHECK(delta_integral(f, s.at(k), s.at(k + 1)) == doctest::Approx(0.25 * f[k]).epsilon(1e-15));
    }
    CHECK(kind_of([&] { delta_integral(f, 0.1, 1.0); }) == ErrorKind::NotAGridPoint);
}

TEST_CASE("property: linearity, additivity and orientation of the delta integral") {
    Gen gen(20240601);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = gen.index(1, 60);
        const PeriodicScale s(gen.uniform(0.01, 2.0), n);
        const GridFunction f(s, gen.values(n + 1));
        const GridFunction g(s, gen.values(n + 1));
        const double c = gen.uniform(-5.0, 5.0);
        std::vector<double> comb(n + 1);
        for (std::size_t k = 0; k <= n; ++k) comb[k] = c * f[k] + g[k];
        const GridFunction fg(s, comb);

        std::size_t ia = gen.index(0, n);
        std::size_t ib = gen.index(0, n);
        if (ia > ib) std::swap(ia, ib);
        const std::size_t ic = gen.index(ia, ib);
        const double a = s.at(ia);
        const double b = s.at(ib);
        const double mid = s.at(ic);

        const double lhs = delta_integral(fg, a, b);
        const double rhs = c * delta_integral(f, a, b) + delta_integral(g, a, b);
        double mag = 0.0;
        for (std::size_t k = ia; k < ib; ++k) mag += (std::abs(c * f[k]) + std::abs(g[k])) * s.step();
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, mag));
        CHECK(std::abs(delta_integral(f, a, b) - delta_integral(f, a, mid) - delta_integral(f, mid, b)) <=
              1e-12 * std::max(1.0, mag));
        CHECK(delta_integral(f, a, b) == -delta_integral(f, b, a));
    }
}

TEST_CASE("property: f^sigma = f + mu f^Delta and summation by parts") {
    Gen gen(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = gen.index(2, 80);
        const PeriodicScale s(gen.uniform(0.05, 1.5), n);
        const GridFunction f(s, gen.values(n + 1));
        const GridFunction g(s, gen.values(n + 1));
        const GridFunction fd = delta_derivative(f);
        const GridFunction gd = delta_derivative(g);
        for (std::size_t k = 0; k < n; ++k) {
            const double rebuilt = f[k] + s.step() * fd[k];
            CHECK(std::abs(rebuilt - f[k + 1]) <= 1e-12 * std::max({1.0, std::abs(f[k]), std::abs(f[k + 1])}));
        }

        // int_0^T f g^D = [f g]_0^T - int_0^T f^D g^sigma, evaluated on the reduced grid
        const PeriodicScale red = s.reduced();
        std::vector<double> lhs_v(n);
        std::vector<double> rhs_v(n);
        double mag = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            lhs_v[k] = f[k] * gd[k];
            rhs_v[k] = fd[k] * g[k + 1];
            mag += (std::abs(lhs_v[k]) + std::abs(rhs_v[k])) * s.step();
        }
        // pad to the full scale so both integrals run over [0, T]
        lhs_v.push_back(0.0);
        rhs_v.push_back(0.0);
        const double lhs = delta_integral(GridFunction(s, lhs_v), 0.0, s.horizon());
        const double rhs = f.back() * g.back() - f.front() * g.front() -
                           delta_integral(GridFunction(s, rhs_v), 0.0, s.horizon());
        CHECK(red.size() == n);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, mag));
    }
}

TEST_CASE("property: nonnegative integrands integrate to nonnegative values") {
    Gen gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = gen.index(1, 40);
        const PeriodicScale s(gen.uniform(0.01, 3.0), n);
        const GridFunction f(s, gen.values(n + 1, 0.0, 4.0));
        std::size_t ia = gen.index(0, n);
        std::size_t ib = gen.index(0, n);
        if (ia > ib) std::swap(ia, ib);
        CHECK(delta_integral(f, s.at(ia), s.at(ib)) >= 0.0);
    }
}
