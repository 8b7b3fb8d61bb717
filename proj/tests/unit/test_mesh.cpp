#include <doctest.h>

#include "ngs/error.hpp"
#include "ngs/mesh.hpp"

#include <cmath>
#include <tuple>

using namespace ngs;

TEST_CASE("uniform mesh sizes")
{
    const Mesh1D m = Mesh1D::uniform({0.0, 1.0}, 0.0, 0.05);
    CHECK(m.element_count() == 20);
    CHECK(m.node_count() == 21);
    CHECK(m.node(0) == 0.0);
    CHECK(m.node(20) == 1.0);

    const Mesh1D n = Mesh1D::uniform({-8.0, 8.0}, 2.0, 0.5);
    CHECK(n.element_count() == 40);
    CHECK(n.node_count() == 41);
    CHECK(n.node(0) == -10.0);
    CHECK(n.node(40) == 10.0);
    CHECK(n.interior_node_count() == 33);
    CHECK(n.region(3) == Region::Collar);
    CHECK(n.region(4) == Region::Interior);
    CHECK(n.node(4) == -8.0);
    CHECK(n.region(36) == Region::Interior);
    CHECK(n.region(37) == Region::Collar);
    CHECK(n.element_in_omega(4));
    CHECK_FALSE(n.element_in_omega(3));

    const Mesh1D one = Mesh1D::uniform({0.0, 1.0}, 0.0, 1.0);
    CHECK(one.element_count() == 1);
    CHECK(one.node_count() == 2);
    CHECK(one.region(0) == Region::Interior);
    CHECK(one.region(1) == Region::Interior);
}

TEST_CASE("domain boundary lands on a node for awkward spacings")
{
    const Mesh1D m = Mesh1D::uniform({-40.0, 40.0}, 5.0, 0.05);
    CHECK(m.node_count() == 1801);
    CHECK(m.node(100) == -40.0);
    CHECK(m.node(1700) == 40.0);
    CHECK(m.nearest_node(0.0) == 900);
    CHECK(std::abs(m.node(900)) < 1e-12);
}

TEST_CASE("spacing that does not tile is rejected")
{
    try {
        Mesh1D::uniform({0.0, 1.0}, 0.0, 0.3);
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::non_divisible_spacing);
    }
    CHECK_THROWS_AS(check_spacing({-8.0, 8.0}, 2.0, 0.3), Error);
    CHECK_NOTHROW(check_spacing({-8.0, 8.0}, 2.0, 0.25));
    CHECK_THROWS_AS(Mesh1D::uniform({0.0, 1.0}, 0.0, -0.1), Error);
}

TEST_CASE("elements within a radius")
{
    const Mesh1D m = Mesh1D::uniform({0.0, 1.0}, 0.0, 0.25);
    auto [first, last] = m.elements_within(0.5, 0.3);
    CHECK(first == 0);
    CHECK(last == 4);

    std::tie(first, last) = m.elements_within(0.5, infinite_horizon);
    CHECK(first == 0);
    CHECK(last == 4);

    std::tie(first, last) = m.elements_within(0.0, 0.25);
    CHECK(first == 0);
    CHECK(last == 1);

    // touching at a single point is not an overlap
    std::tie(first, last) = m.elements_within(0.5, 0.25);
    CHECK(first == 1);
    CHECK(last == 3);
}

TEST_CASE("elements_within agrees with brute-force interval intersection")
{
    const Mesh1D m = Mesh1D::uniform({-2.0, 3.0}, 1.0, 0.125);
    for (double x = -3.0; x <= 4.0; x += 0.0371) {
        for (double r : {0.01, 0.125, 0.3, 1.0, 2.5}) {
            const auto [first, last] = m.elements_within(x, r);
            for (std::size_t e = 0; e < m.element_count(); ++e) {
                const double lo = std::max(m.element_lo(e), x - r);
                const double hi = std::min(m.element_hi(e), x + r);
                const bool overlaps = hi > lo;
                CHECK(overlaps == (e >= first && e < last));
            }
        }
    }
}
