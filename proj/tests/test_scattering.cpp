#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catkit/media.hpp"
#include "catkit/modes.hpp"
#include "catkit/scattering.hpp"
#include "test_util.hpp"

using namespace catkit;
using testutil::cplx;

namespace {

constexpr double kPi = std::numbers::pi;

// Phase shift from complex arithmetic: interior r j1(n k r), exterior
// S cos d + C sin d with S = x j1, C = x y1.
double oracle_delta(double eps, double k, double a)
{
    const cplx n = std::sqrt(cplx(eps, 0.0));
    const cplx z = n * k * a;
    const cplx j1p = testutil::j0c(z) - 2.0 * testutil::j1c(z) / z;
    const double L = (1.0 / a + n * k * j1p / testutil::j1c(z)).real();
    const double x = k * a;
    const double S = (x * testutil::j1c(x)).real();
    const double C = (x * testutil::y1c(x)).real();
    const double h = 1e-6 * x;
    const double Sp = ((x + h) * testutil::j1c(x + h) - (x - h) * testutil::j1c(x - h)).real() / (2 * h);
    const double Cp = ((x + h) * testutil::y1c(x + h) - (x - h) * testutil::y1c(x - h)).real() / (2 * h);
    return std::atan((k * Sp - L * S) / (L * C - k * Cp));
}

double wrap(double d)
{
    d = std::remainder(d, kPi);
    return d <= -kPi / 2 ? d + kPi : d;
}

}  // namespace

TEST_CASE("phase shift agrees with the complex-argument oracle")
{
    for (const double k : {0.3, 1.0, 3.0, 4.9, 5.1, 7.5, 15.0, 40.0}) {
        const double eps = 1.0 - 25.0 / (k * k);
        const double d = phase_shift(Medium::drude(5.0), 1, k, 1.0);
        CHECK(std::abs(wrap(d - oracle_delta(eps, k, 1.0))) < 1e-7);
    }
    for (const double k : {0.5, 2.0, 9.0}) {
        const double d = phase_shift(Medium::dielectric(2.25), 1, k, 1.0);
        CHECK(std::abs(wrap(d - oracle_delta(2.25, k, 1.0))) < 1e-7);
    }
}

TEST_CASE("interior log derivative")
{
    // Drude k = 3, kp = 5: n = 4i/3, argument 4i
    const cplx z(0.0, 4.0);
    const cplx n(0.0, 4.0 / 3.0);
    const double ref = (1.0 + n * 3.0 * (testutil::j0c(z) - 2.0 * testutil::j1c(z) / z) / testutil::j1c(z)).real();
    CHECK(interior_log_derivative(Medium::drude(5.0), 1, 3.0, 1.0) == doctest::Approx(ref).epsilon(1e-12));

    // r^2 behaviour near the origin
    CHECK(interior_log_derivative(Medium::vacuum(), 1, 1e-4, 1.0) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(interior_log_derivative(Medium::vacuum(), 1, 1e-4, 2.0) == doctest::Approx(1.0).epsilon(1e-7));

    CHECK(testutil::code_of([] { interior_log_derivative(Medium::perfect_conductor(), 1, 1.0, 1.0); }) ==
          ErrorCode::no_finite_permittivity);
}

TEST_CASE("interior solution is continuous across the plasma edge")
{
    const Medium m = Medium::drude(5.0);
    const double kp = 5.0;
    const InteriorSolution lo = interior_solution(m, 1, kp * (1 - 1e-9), 1.0);
    const InteriorSolution at = interior_solution(m, 1, kp, 1.0);
    const InteriorSolution hi = interior_solution(m, 1, kp * (1 + 1e-9), 1.0);
    const auto angle = [](InteriorSolution s) { return std::atan2(s.du, s.u); };
    CHECK(std::abs(angle(lo) - angle(at)) < 1e-6);
    CHECK(std::abs(angle(hi) - angle(at)) < 1e-6);
    CHECK(std::hypot(at.u, at.du) > 0.0);

    const InteriorSolution pec = interior_solution(Medium::perfect_conductor(), 1, 2.0, 1.0);
    CHECK(pec.u == 0.0);
    CHECK(pec.du == 1.0);
}

TEST_CASE("vacuum and nearly vacuum media")
{
    for (const double k : testutil::log_grid(1e-2, 1e3, 40)) {
        CHECK(std::abs(phase_shift(Medium::vacuum(), 1, k, 1.0)) < 1e-12);
    }
    const std::vector<double> grid = testutil::lin_grid(0.1, 20.0, 50);
    for (const double d : unwrapped_phase_shift(Medium::dielectric(1.0 + 1e-8), 1, 1.0, grid)) {
        CHECK(std::abs(d) < 1e-6);
    }
}

TEST_CASE("sign and low-k power of the phase shift")
{
    const std::vector<double> ks = {0.01, 0.5, 2.0, 6.0, 15.0};
    for (const double d : unwrapped_phase_shift(Medium::drude(5.0), 1, 1.0, ks)) CHECK(d > 0.0);
    for (const double d : unwrapped_phase_shift(Medium::perfect_conductor(), 1, 1.0, ks)) CHECK(d > 0.0);
    CHECK(phase_shift(Medium::dielectric(2.25), 1, 0.5, 1.0) < 0.0);

    // PEC: tan d = -S/C, and d ~ x^3 / 3 as x -> 0
    for (const double k : {0.7, 2.2, 9.0}) {
        const double S = (k * testutil::j1c(k)).real();
        const double C = (k * testutil::y1c(k)).real();
        CHECK(std::abs(wrap(phase_shift(Medium::perfect_conductor(), 1, k, 1.0) - std::atan(-S / C))) < 1e-10);
    }
    CHECK(phase_shift(Medium::perfect_conductor(), 1, 1e-3, 1.0) == doctest::Approx(1e-9 / 3.0).epsilon(1e-4));
    const double r = phase_shift(Medium::drude(5.0), 1, 0.02, 1.0) / phase_shift(Medium::drude(5.0), 1, 0.01, 1.0);
    CHECK(r == doctest::Approx(8.0).epsilon(1e-2));
}

TEST_CASE("unwrapped branch is continuous")
{
    const Medium m = Medium::drude(5.0);
    const PhaseShiftCurve c = phase_shift_curve(m, 1, 1.0, testutil::lin_grid(0.05, 30.0, 25));
    REQUIRE(c.samples.size() >= 25);
    for (std::size_t i = 1; i < c.samples.size(); ++i) {
        CHECK(c.samples[i].k > c.samples[i - 1].k);
        CHECK(std::abs(c.samples[i].delta - c.samples[i - 1].delta) <= kPi / 4 + 1e-12);
    }

    // coarse and fine grids give the same branch at shared points
    const std::vector<double> coarse = {0.5, 3.0, 6.0, 9.0, 20.0};
    const std::vector<double> fine = testutil::lin_grid(0.5, 20.0, 400);
    const std::vector<double> dc = unwrapped_phase_shift(m, 1, 1.0, coarse);
    const std::vector<double> df = unwrapped_phase_shift(m, 1, 1.0, fine);
    CHECK(dc.front() == doctest::Approx(df.front()).epsilon(1e-12));
    CHECK(dc.back() == doctest::Approx(df.back()).epsilon(1e-12));
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        CHECK(std::abs(wrap(dc[i] - phase_shift(m, 1, coarse[i], 1.0))) < 1e-12);
    }

    // a single sample far from the anchor still lands on the branch
    const std::vector<double> single = {kPi * 1.7};
    const std::vector<double> many = testutil::lin_grid(0.01, kPi * 1.7, 2000);
    CHECK(unwrapped_phase_shift(m, 1, 1.0, single)[0] ==
          doctest::Approx(unwrapped_phase_shift(m, 1, 1.0, many).back()).epsilon(1e-10));
}

TEST_CASE("phase-shift peak moves up with the plasma wavevector")
{
    double prev = 0.0;
    for (const double kp : {2.0, 3.0, 5.0, 8.0}) {
        const std::vector<double> grid = testutil::lin_grid(0.05 * kp, 4.0 * kp, 800);
        const std::vector<double> d = unwrapped_phase_shift(Medium::drude(kp), 1, 1.0, grid);
        const auto it = std::max_element(d.begin(), d.end());
        const double kpeak = grid[static_cast<std::size_t>(it - d.begin())];
        CHECK(kpeak > kp);
        CHECK(kpeak > prev);
        prev = kpeak;
    }
}

TEST_CASE("cavity oracle converges to the phase shift")
{
    const Medium m = Medium::drude(5.0);
    for (const double target : {2.0, 5.9, 12.0}) {
        double prev_err = 1e9;
        for (const double R : {50.0, 100.0, 200.0}) {
            const std::vector<double> q = empty_cavity_wavevectors(R, static_cast<int>(target * R / kPi) + 2);
            int s = 1;
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (std::abs(q[i] - target) < std::abs(q[s - 1] - target)) s = static_cast<int>(i) + 1;
            }
            const std::vector<double> kq = {q[s - 1]};
            const double ref = unwrapped_phase_shift(m, 1, 1.0, kq)[0];
            const double err = std::abs(delta_oracle(m, 1, 1.0, R, s) - ref);
            CHECK(err < prev_err);
            prev_err = err;
        }
        CHECK(prev_err < 0.05);
    }
}

TEST_CASE("scattering argument errors")
{
    CHECK(testutil::code_of([] { phase_shift(Medium::vacuum(), 1, 0.0, 1.0); }) == ErrorCode::domain);
    CHECK(testutil::code_of([] { phase_shift(Medium::vacuum(), 1, 1.0, -1.0); }) == ErrorCode::invalid_argument);
    CHECK(testutil::code_of([] {
              const std::vector<double> g = {1.0, 0.5};
              unwrapped_phase_shift(Medium::vacuum(), 1, 1.0, g);
          }) == ErrorCode::invalid_argument);
    CHECK(testutil::code_of([] { delta_oracle(Medium::vacuum(), 2, 1.0, 50.0, 3); }) == ErrorCode::unsupported_order);
}
