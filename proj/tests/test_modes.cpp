#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catkit/modes.hpp"
#include "catkit/scattering.hpp"
#include "test_util.hpp"

using namespace catkit;

namespace {

constexpr double kPi = std::numbers::pi;

double max_shift_gap(double R, const Medium& m, double kmax)
{
    const CavityGeometry g{1.0, R, 1};
    const int N = static_cast<int>(kmax * R / kPi);
    const std::vector<double> exact = perturbed_wavevectors_exact(g, m, N);
    const std::vector<double> shift = perturbed_wavevectors_shift(empty_cavity_wavevectors(R, N), m, 1.0, R);
    double gap = 0.0;
    for (int i = 0; i < N; ++i) gap = std::max(gap, std::abs(exact[i] - shift[i]) * R);
    return gap;
}

}  // namespace

TEST_CASE("empty cavity wavevectors")
{
    const std::vector<double> q = empty_cavity_wavevectors(1.0, 3);
    CHECK(q[0] == doctest::Approx(4.493409457909064).epsilon(1e-13));
    CHECK(q[1] == doctest::Approx(7.725251836937707).epsilon(1e-13));
    CHECK(q[2] == doctest::Approx(10.904121659428899).epsilon(1e-13));

    const std::vector<double> big = empty_cavity_wavevectors(50.0, 2000);
    for (std::size_t i = 0; i < big.size(); ++i) {
        const double x = big[i] * 50.0;
        CHECK(std::abs(std::tan(x) - x) <= 1e-9 * x * x);
        CHECK(x > (i + 1) * kPi);
        CHECK(x < (i + 1.5) * kPi);
    }
    CHECK(big.back() * 50.0 == doctest::Approx(2000.5 * kPi).epsilon(1e-7));
}

TEST_CASE("geometry validation")
{
    CHECK_NOTHROW((CavityGeometry{1.0, 10.0, 1}.validate()));
    CHECK(testutil::code_of([] { CavityGeometry{1.0, 9.99, 1}.validate(); }) == ErrorCode::invalid_argument);
    CHECK(testutil::code_of([] { CavityGeometry{0.0, 10.0, 1}.validate(); }) == ErrorCode::invalid_argument);
    CHECK(testutil::code_of([] { CavityGeometry{1.0, 20.0, 2}.validate(); }) == ErrorCode::unsupported_order);
    CHECK(testutil::code_of([] { empty_cavity_wavevectors(10.0, 0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("vacuum spectra coincide with the empty cavity")
{
    const CavityGeometry g{1.0, 40.0, 1};
    for (const SpectrumMethod method : {SpectrumMethod::shift, SpectrumMethod::exact}) {
        const ModeSpectrum s = build_spectrum(g, Medium::vacuum(), 100, method);
        REQUIRE(s.size() == 100);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(std::abs(s.k[i] - s.q[i]) <= 1e-12 * s.q[i]);
            CHECK(std::abs(s.delta[i]) < 1e-9);
        }
    }
}

TEST_CASE("exact roots are roots of the characteristic function")
{
    const CavityGeometry g{1.0, 30.0, 1};
    const Medium m = Medium::drude(5.0);
    const std::vector<double> k = perturbed_wavevectors_exact(g, m, 60);
    REQUIRE(k.size() == 60);
    const double h = 1e-7;
    for (const double x : k) {
        const double slope = (characteristic_function(g, m, x + h) - characteristic_function(g, m, x - h)) / (2 * h);
        CHECK(std::abs(characteristic_function(g, m, x)) <= 1e-8 * std::abs(slope) + 1e-300);
    }
    CHECK(std::is_sorted(k.begin(), k.end()));
    CHECK(std::adjacent_find(k.begin(), k.end()) == k.end());
}

TEST_CASE("exact and shifted spectra converge as R grows")
{
    const Medium m = Medium::drude(5.0);
    const double g50 = max_shift_gap(50.0, m, 12.0);
    const double g100 = max_shift_gap(100.0, m, 12.0);
    const double g200 = max_shift_gap(200.0, m, 12.0);
    CHECK(g100 < g50);
    CHECK(g200 < g100);
    CHECK(g200 < 0.6 * g50);
}

TEST_CASE("perturbed spectra shift upwards for metals")
{
    const CavityGeometry g{1.0, 25.0, 1};
    const std::vector<double> q = empty_cavity_wavevectors(25.0, 40);
    const std::vector<double> pec = perturbed_wavevectors_exact(g, Medium::perfect_conductor(), 40);
    CHECK(pec[0] > q[0]);
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(pec[i] >= q[i]);
        if (i + 1 < q.size()) CHECK(pec[i] < q[i + 1] + kPi / 25.0);
    }

    const ModeSpectrum s = build_spectrum(g, Medium::drude(5.0), 40, SpectrumMethod::shift);
    CHECK_NOTHROW(validate_spectrum(s));
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.delta[i] >= 0.0);
}

TEST_CASE("spectrum validation")
{
    ModeSpectrum s = build_spectrum(CavityGeometry{1.0, 20.0, 1}, Medium::drude(3.0), 10, SpectrumMethod::shift);
    ModeSpectrum bad = s;
    std::swap(bad.k[3], bad.k[4]);
    CHECK(testutil::code_of([&] { validate_spectrum(bad); }) == ErrorCode::degenerate);
    bad = s;
    bad.k.pop_back();
    CHECK(testutil::code_of([&] { validate_spectrum(bad); }) == ErrorCode::invalid_argument);
    bad = s;
    bad.q[0] = -1.0;
    CHECK(testutil::code_of([&] { validate_spectrum(bad); }) == ErrorCode::invalid_argument);
}
