#include <doctest.h>

#include "ngs/quadrature.hpp"

#include <cmath>
#include <numeric>

using namespace ngs;

TEST_CASE("Gauss-Legendre rules integrate polynomials up to degree 2n-1 exactly")
{
    for (std::size_t n = 1; n <= 10; ++n) {
        const QuadratureRule& rule = QuadratureRule::cached(n);
        CHECK(rule.size() == n);
        CHECK(rule.order == static_cast<int>(2 * n - 1));
        CHECK(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
        for (int p = 0; p <= rule.order; ++p) {
            const double got = rule.integrate(0.3, 1.7, [p](double x) { return std::pow(x, p); });
            const double exact = (std::pow(1.7, p + 1) - std::pow(0.3, p + 1)) / (p + 1);
            CHECK(got == doctest::Approx(exact).epsilon(1e-13));
        }
        const int p = rule.order + 1;
        const double got = rule.integrate(0.0, 1.0, [p](double x) { return std::pow(x, p); });
        CHECK(std::abs(got - 1.0 / (p + 1)) > 1e-15);
    }
}

TEST_CASE("rule points are sorted and symmetric")
{
    const QuadratureRule r = QuadratureRule::gauss_legendre(7);
    for (std::size_t q = 0; q + 1 < r.size(); ++q) {
        CHECK(r.points[q] < r.points[q + 1]);
    }
    for (std::size_t q = 0; q < r.size(); ++q) {
        CHECK(r.points[q] == doctest::Approx(-r.points[r.size() - 1 - q]).epsilon(1e-15));
        CHECK(r.weights[q] == doctest::Approx(r.weights[r.size() - 1 - q]).epsilon(1e-14));
    }
    CHECK(std::abs(r.points[3]) < 1e-15);
}

TEST_CASE("cached rules equal freshly computed ones")
{
    const QuadratureRule fresh = QuadratureRule::gauss_legendre(5);
    const QuadratureRule& cached = QuadratureRule::cached(5);
    CHECK(fresh.points == cached.points);
    CHECK(fresh.weights == cached.weights);
}
