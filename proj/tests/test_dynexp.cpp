#include "support.hpp"

#include "tsloss/dynexp.hpp"
#include "tsloss/error.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

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

TEST_CASE("ipow") {
    CHECK(ipow(2.0, 10) == 1024.0);
    CHECK(ipow(2.0, -3) == 0.125);
    CHECK(ipow(-1.5, 3) == -3.375);
    CHECK(ipow(7.0, 0) == 1.0);
}

TEST_CASE("ominus and regressivity") {
    CHECK(ominus(0.25, 1.0) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(ominus(0.3, 0.0) == -0.3);
    CHECK(is_regressive(0.5, 1.0));
    CHECK_FALSE(is_regressive(-1.0, 1.0));
    CHECK_FALSE(is_regressive(-4.0, 0.25));
    CHECK(is_regressive(-4.0, 0.0));
    CHECK(kind_of([] { ominus(-1.0, 1.0); }) == ErrorKind::NotRegressive);
    CHECK(kind_of([] { ominus(-2.0, 0.5); }) == ErrorKind::NotRegressive);
}

TEST_CASE("delta exponential examples") {
    CHECK(delta_exp(1.0, 3.0, 0.0, 1.0) == 8.0);
    CHECK(delta_exp(ominus(0.25, 1.0), 2.0, 0.0, 1.0) == doctest::Approx(0.64).epsilon(1e-15));
    CHECK(delta_exp(0.5, 0.0, 2.0, 0.5) == doctest::Approx(std::pow(1.25, -4)).epsilon(1e-15));
    CHECK(delta_exp(0.7, 1.3, 0.3, 0.0) == doctest::Approx(std::exp(0.7)).epsilon(1e-15));
    CHECK(delta_exp(-3.0, 0.5, 0.0, 0.5) == -0.5);
    CHECK(delta_exp(0.0, 4.4, 0.0, 0.11) == 1.0);
    CHECK(kind_of([] { delta_exp(1.0, 0.5, 0.0, 1.0); }) == ErrorKind::NotAGridOffset);
    CHECK(kind_of([] { delta_exp(-1.0, 2.0, 0.0, 1.0); }) == ErrorKind::NotRegressive);
    CHECK(kind_of([] { delta_exp(1.0, 2.0, 0.0, -1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("delta exponential converges to exp as h -> 0") {
    double previous = std::numeric_limits<double>::infinity();
    for (const double h : {0.1, 0.01, 0.001}) {
        const double err = std::abs(delta_exp(0.8, 2.0, 0.0, h) - std::exp(1.6));
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-2);
}

TEST_CASE("second-order solver: distinct roots") {
    const auto fs = solve_second_order(-0.5, -0.5, 1.0);
    CHECK(fs.kind == RootKind::Distinct);
    CHECK(fs.lambda1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fs.lambda2 == doctest::Approx(-0.5).epsilon(1e-15));
    const auto y = general_solution(fs, 1.0, 1.0);
    CHECK(y(0.0) == 2.0);
    CHECK(y(2.0) == doctest::Approx(4.25).epsilon(1e-15));

    // y^DD + a y^D + b y = 0 holds on every grid point
    Gen gen(3);
    for (int trial = 0; trial < 100; ++trial) {
        const double h = gen.uniform(0.05, 1.0);
        const double a = gen.uniform(-3.0, 3.0);
        const double b = gen.uniform(-3.0, 0.0);
        const auto sys = solve_second_order(a, b, h);
        const auto z = general_solution(sys, gen.uniform(-2, 2), gen.uniform(-2, 2));
        for (int k = 0; k < 8; ++k) {
            const double y0 = z(k * h);
            const double y1 = z((k + 1) * h);
            const double y2 = z((k + 2) * h);
            const double d1 = (y1 - y0) / h;
            const double d2 = (y2 - 2 * y1 + y0) / (h * h);
            const double scale = std::max({1.0, std::abs(y0), std::abs(y1), std::abs(y2)}) / (h * h);
            CHECK(std::abs(d2 + a * d1 + b * y0) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("second-order solver: continuous case") {
    const auto fs = solve_second_order(-1.0, -2.0, 0.0);
    CHECK(fs.lambda1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(fs.lambda2 == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(fs.basis1(1.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
    CHECK(fs.wronskian(0.0) == doctest::Approx(-3.0).epsilon(1e-15));
}

TEST_CASE("second-order solver: double root") {
    // (l - 1)^2 = l^2 - 2 l + 1
    const auto fs = solve_second_order(-2.0, 1.0, 1.0);
    CHECK(fs.kind == RootKind::Double);
    CHECK(fs.lambda1 == 1.0);
    CHECK(fs.lambda2 == 1.0);
    CHECK(fs.basis1(3.0) == 8.0);
    // e_1(t, 0) t / (1 + 1)
    CHECK(fs.basis2(3.0) == doctest::Approx(12.0).epsilon(1e-15));
    for (int k = 0; k < 6; ++k) {
        const double y0 = fs.basis2(k);
        const double y1 = fs.basis2(k + 1);
        const double y2 = fs.basis2(k + 2);
        CHECK((y2 - 2 * y1 + y0) - 2.0 * (y1 - y0) + y0 == doctest::Approx(0.0));
        CHECK(fs.wronskian(k) != 0.0);
    }
}

TEST_CASE("second-order solver: failure modes") {
    CHECK(kind_of([] { solve_second_order(0.0, 1.0, 0.5); }) == ErrorKind::OscillatoryUnsupported);
    // 1 - a h + b h^2 = 1 - 2 + 1 = 0
    CHECK(kind_of([] { solve_second_order(2.0, 1.0, 1.0); }) == ErrorKind::NotRegressiveEquation);
    CHECK(kind_of([] { solve_second_order(NAN, 1.0, 1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: exponential identities over random regressive draws") {
    Gen gen(424242);
    for (int trial = 0; trial < 1000; ++trial) {
        const double h = gen.uniform(0.01, 1.0);
        double p = gen.uniform(-0.9 / h, 2.0);
        if (!is_regressive(p, h)) continue;
        const double t = h * static_cast<double>(gen.index(0, 40));
        const double s = h * static_cast<double>(gen.index(0, 40));
        const double e = delta_exp(p, t, s, h);
        CHECK(tsloss::test::rel_diff(delta_exp(p, t + h, s, h), (1 + h * p) * e) <= 1e-12);
        CHECK(std::abs(e * delta_exp(ominus(p, h), t, s, h) - 1.0) <= 1e-12);
        CHECK(delta_exp(0.0, t, s, h) == 1.0);
    }
}
