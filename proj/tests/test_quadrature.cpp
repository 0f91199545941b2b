#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <cnhv/errors.hpp>
#include <cnhv/quadrature.hpp>
#include <cnhv/vec3.hpp>

using namespace cnhv;
using Catch::Matchers::WithinAbs;

TEST_CASE("smooth integrands are resolved to well below the tolerance")
{
    const quad_result r = integrate([](double x) { return std::sin(x); }, 0.0, pi);
    REQUIRE_THAT(r.value, WithinAbs(2.0, 1e-12));
    REQUIRE(r.error <= 1e-8);

    const quad_result p = integrate([](double x) { return x * x * x * x * x * x * x; }, 0.0, 1.0);
    REQUIRE_THAT(p.value, WithinAbs(1.0 / 8.0, 1e-14));
}

TEST_CASE("adaptive refinement handles a sharp but integrable peak")
{
    quad_options opt;
    opt.abs_tol = 1e-10;
    const double eps = 1e-6;
    const quad_result r =
        integrate([&](double x) { return 1.0 / std::sqrt(x + eps); }, 0.0, 1.0, opt);
    const double exact = 2.0 * (std::sqrt(1.0 + eps) - std::sqrt(eps));
    REQUIRE_THAT(r.value, WithinAbs(exact, 1e-9));
}

TEST_CASE("breakpoints make kinked integrands exact")
{
    auto f = [](double x) { return std::abs(x - 1.0 / 3.0); };
    const double exact = (1.0 / 9.0 + 4.0 / 9.0) / 2.0;
    const double pts[] = {0.0, 1.0 / 3.0, 1.0};
    const quad_result r = integrate_segmented(f, pts);
    REQUIRE_THAT(r.value, WithinAbs(exact, 1e-13));
}

TEST_CASE("an exhausted interval budget is reported, not silently accepted")
{
    quad_options opt;
    opt.abs_tol = 1e-14;
    opt.max_intervals = 3;
    REQUIRE_THROWS_AS(integrate([](double x) { return std::sin(50.0 * x) / (1e-3 + x * x); },
                                0.0, 1.0, opt),
                      quadrature_error);
}

TEST_CASE("zero-width spans integrate to zero")
{
    const quad_result r = integrate([](double x) { return std::exp(x); }, 0.5, 0.5);
    REQUIRE_THAT(r.value, WithinAbs(0.0, 1e-15));
}
