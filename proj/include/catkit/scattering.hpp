#pragma once

#include <span>
#include <vector>

#include "catkit/media.hpp"

namespace catkit {

/// Interior radial solution u = r g_l(r) and du/dr at r = a, up to a common
/// positive factor chosen so both stay finite. For a perfect conductor
/// (u, du) = (0, 1). The pair never vanishes simultaneously and varies
/// continuously with k, including across the plasma edge of a Drude medium.
struct InteriorSolution {
    double u = 0.0;
    double du = 0.0;
};

InteriorSolution interior_solution(const Medium& m, int l, double k, double a);

/// d/dr ln[r g_l(r)] at r = a for the regular interior solution. Always real:
/// purely imaginary indices go through the modified Bessel functions.
/// Throws ErrorCode::pole at a zero of the interior Riccati function.
double interior_log_derivative(const Medium& m, int l, double k, double a);

/// Principal value of the TE phase shift in (-pi/2, pi/2].
///
/// Sign convention: positive delta raises the cavity eigen-wavevectors,
/// k_s = q_s + delta / R. For Drude and perfectly conducting spheres delta > 0.
double phase_shift(const Medium& m, int l, double k, double a);

struct PhaseShiftSample {
    double k = 0.0;
    double delta = 0.0;
};

struct PhaseShiftCurve {
    int l = 1;
    Medium medium;
    double a = 1.0;
    std::vector<PhaseShiftSample> samples;
};

/// Continuous branch of delta_l over an increasing grid, anchored at delta = 0
/// at small k. Intervals where the branch moves by more than pi/4 are bisected
/// until resolved; inserted points are part of the returned curve.
/// Throws ErrorCode::resolution when bisection stalls.
PhaseShiftCurve phase_shift_curve(const Medium& m, int l, double a, std::span<const double> k_grid);

/// Same branch, sampled exactly at the grid points.
std::vector<double> unwrapped_phase_shift(const Medium& m, int l, double a, std::span<const double> k_grid);

/// (k_s - q_s) R from the exact eigen-wavevectors of the cavity of radius R
/// with and without the sphere (l = 1). Throws ErrorCode::pairing_ambiguity
/// when the shift lies within 0.05 rad of a nonzero multiple of pi.
double delta_oracle(const Medium& m, int l, double a, double R, int s);

}  // namespace catkit
