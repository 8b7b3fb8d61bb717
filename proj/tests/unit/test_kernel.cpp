#include <doctest.h>

#include "ngs/error.hpp"
#include "ngs/kernel.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

using namespace ngs;

namespace {

// Adaptive oracle for int_lo^hi gamma(z) dz, split at the kink and the horizon.
double oracle_integral(const Kernel& k, double lo, double hi)
{
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double z) { return k(z); };
    if (std::isinf(lo) && std::isinf(hi)) {
        if (k.has_finite_horizon()) {
            return oracle_integral(k, -k.horizon(), k.horizon());
        }
        boost::math::quadrature::exp_sinh<double> tail;
        return 2.0 * tail.integrate(f, 0.0, std::numeric_limits<double>::infinity());
    }
    std::vector<double> cuts{lo, hi};
    for (double c : {0.0, -k.horizon(), k.horizon()}) {
        if (c > lo && c < hi) {
            cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, 1e-15);
    }
    return total;
}

const Kernel gaussian = Kernel::gaussian();
const Kernel expo = Kernel::exponential();
const Kernel growing = Kernel::truncated_growing_exp(0.5, 2.0);
const Kernel dispersal = Kernel::dispersal_exp(3.0, 5.0);

} // namespace

TEST_CASE("kernel point values")
{
    CHECK(gaussian(0.0) == 1.0);
    CHECK(dispersal(6.0) == 0.0);
    CHECK(growing(1.0) == doctest::Approx(0.5 * std::numbers::e).epsilon(1e-15));
    CHECK(growing(1.0) == doctest::Approx(1.3591409).epsilon(1e-7));
    CHECK(growing(2.5) == 0.0);
    for (const Kernel& k : {gaussian, expo, growing, dispersal}) {
        for (double z : {0.1, 0.7, 1.9, 4.2}) {
            CHECK(k(z) == k(-z));
            CHECK(k(z) >= 0.0);
        }
    }
}

TEST_CASE("closed-form total mass")
{
    CHECK(gaussian.total_mass() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
    CHECK(gaussian.total_mass() == doctest::Approx(1.7724539).epsilon(1e-7));
    CHECK(dispersal.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(growing.total_mass() == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
    CHECK(growing.total_mass() == doctest::Approx(6.3890561).epsilon(1e-7));
    CHECK(expo.total_mass() == doctest::Approx(2.0).epsilon(1e-15));

    for (const Kernel& k : {gaussian, expo, growing, dispersal, Kernel::dispersal_exp(50.0, 5.0)}) {
        const double inf = std::numeric_limits<double>::infinity();
        CHECK(k.total_mass() == doctest::Approx(oracle_integral(k, -inf, inf)).epsilon(1e-10));
    }
}

TEST_CASE("partial mass")
{
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(gaussian.partial_mass(0.0, {-inf, inf}) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
    CHECK(dispersal.partial_mass(0.0, {-10.0, 10.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dispersal.partial_mass(3.0, {-40.0, 40.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dispersal.partial_mass(10.0, {-10.0, 10.0}) == doctest::Approx(0.5).epsilon(1e-15));

    // against the adaptive oracle: int_J gamma(x - y) dy = int_{x - J.hi}^{x - J.lo} gamma(z) dz
    for (const Kernel& k : {gaussian, expo, growing, dispersal}) {
        for (double x : {-1.3, 0.0, 0.4, 2.2}) {
            for (Interval J : {Interval{-1.0, 1.0}, Interval{0.0, 0.3}, Interval{-5.0, 0.5}, Interval{1.5, 9.0}}) {
                const double oracle = oracle_integral(k, x - J.hi, x - J.lo);
                CHECK(k.partial_mass(x, J) == doctest::Approx(oracle).epsilon(1e-10).scale(1e-300));
            }
        }
    }
}

TEST_CASE("partial mass is additive over adjacent intervals")
{
    for (const Kernel& k : {gaussian, expo, growing, dispersal}) {
        for (double x : {-0.7, 0.0, 1.1}) {
            const double whole = k.partial_mass(x, {-3.0, 2.5});
            const double split = k.partial_mass(x, {-3.0, -0.2}) + k.partial_mass(x, {-0.2, 1.0}) +
                                 k.partial_mass(x, {1.0, 2.5});
            CHECK(whole == doctest::Approx(split).epsilon(1e-14));
        }
    }
}

TEST_CASE("second moment")
{
    CHECK(gaussian.second_moment() == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-15));
    CHECK(gaussian.second_moment() == doctest::Approx(0.8862269).epsilon(1e-7));
    CHECK(expo.second_moment() == doctest::Approx(4.0).epsilon(1e-14));

    const double a = 3.0;
    const double R = 5.0;
    const double A = a / (2.0 * (1.0 - std::exp(-a * R)));
    const double closed = 2.0 * A / (a * a * a) * (2.0 - std::exp(-a * R) * (2.0 + 2.0 * a * R + a * a * R * R));
    CHECK(dispersal.second_moment() == doctest::Approx(closed).epsilon(1e-13));

    using boost::math::quadrature::gauss_kronrod;
    for (const Kernel& k : {growing, dispersal, Kernel::dispersal_exp(9.0, 5.0)}) {
        const double R_k = k.horizon();
        const double num = 2.0 * gauss_kronrod<double, 61>::integrate([&](double z) { return z * z * k(z); }, 0.0, R_k,
                                                                      15, 1e-15);
        CHECK(k.second_moment() == doctest::Approx(num).epsilon(1e-10));
    }
}

TEST_CASE("dispersal normalization and Laplacian scale")
{
    CHECK(dispersal.normalization() == doctest::Approx(1.50000046).epsilon(1e-8));
    CHECK(dispersal.normalization() == doctest::Approx(3.0 / (2.0 * (1.0 - std::exp(-15.0)))).epsilon(1e-15));

    const Kernel sharp = Kernel::dispersal_exp(50.0, 5.0);
    const double paper = sharp.laplacian_scale(ScaleFormula::paper);
    const double moment = sharp.laplacian_scale(ScaleFormula::moment);
    CHECK(std::abs(paper - moment) <= 1e-10 * std::abs(moment));
    CHECK(paper == doctest::Approx(2500.0).epsilon(1e-12));

    for (double a : {3.0, 5.0, 7.0, 9.0}) {
        const Kernel k = Kernel::dispersal_exp(a, 5.0);
        CHECK(k.laplacian_scale(ScaleFormula::paper) ==
              doctest::Approx(k.laplacian_scale(ScaleFormula::moment)).epsilon(1e-4));
    }

    CHECK_THROWS_AS(gaussian.laplacian_scale(), Error);
    CHECK_THROWS_AS(growing.normalization(), Error);
}

TEST_CASE("kernel validation per constraint type")
{
    CHECK(gaussian.validate(KernelUsage::Dirichlet).empty());
    const auto v = gaussian.validate(KernelUsage::Neumann);
    REQUIRE(v.size() == 1);
    CHECK(v.front() == "infinite horizon");
    CHECK(dispersal.validate(KernelUsage::Dirichlet).empty());
    CHECK(dispersal.validate(KernelUsage::Neumann).empty());
    CHECK(growing.validate(KernelUsage::Neumann).empty());
    CHECK_THROWS_AS(Kernel::dispersal_exp(-1.0, 5.0), Error);
    CHECK_THROWS_AS(Kernel::truncated_growing_exp(0.5, std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("kinks and horizons")
{
    CHECK_FALSE(gaussian.has_kink_at_origin());
    CHECK(expo.has_kink_at_origin());
    CHECK(growing.has_kink_at_origin());
    CHECK(dispersal.has_kink_at_origin());
    CHECK_FALSE(gaussian.has_finite_horizon());
    CHECK(dispersal.horizon() == 5.0);
    CHECK(growing.horizon() == 2.0);
}
