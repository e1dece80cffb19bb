#pragma once

#include <span>
#include <vector>

#include "catkit/media.hpp"

namespace catkit {

struct CavityGeometry {
    double a = 1.0;  ///< inclusion radius
    double R = 0.0;  ///< cavity radius
    int l = 1;

    /// Requires a > 0, R / a >= 10 and l = 1.
    void validate() const;
};

enum class SpectrumMethod { exact, shift };

struct ModeSpectrum {
    CavityGeometry geometry;
    Medium medium;
    std::vector<double> q;      ///< empty-cavity wavevectors, increasing
    std::vector<double> k;      ///< perturbed wavevectors paired by index
    std::vector<double> delta;  ///< (k_s - q_s) R
    SpectrumMethod method = SpectrumMethod::shift;

    [[nodiscard]] std::size_t size() const noexcept { return q.size(); }
};

/// First N positive roots of tan(qR) = qR, divided by R.
std::vector<double> empty_cavity_wavevectors(double R, int N);

/// k_s = q_s + delta_1(q_s) / R with the continuous phase-shift branch.
std::vector<double> perturbed_wavevectors_shift(std::span<const double> q, const Medium& m, double a, double R);

/// Characteristic function of the TE matching condition with every
/// denominator cleared; its zeros are the perturbed eigen-wavevectors and it
/// has no poles.
double characteristic_function(const CavityGeometry& g, const Medium& m, double k);

/// First N roots of characteristic_function, located by sign scanning at
/// spacing pi / (16 R) and polished with Brent's method. The root count is
/// cross-checked against the empty cavity and the phase-shift range; a
/// mismatch triggers a rescan at doubled density, and a persistent one throws
/// ErrorCode::missed_root naming the suspect interval.
std::vector<double> perturbed_wavevectors_exact(const CavityGeometry& g, const Medium& m, int N);

ModeSpectrum build_spectrum(const CavityGeometry& g, const Medium& m, int N, SpectrumMethod method);

/// Checks list lengths, positivity and strict ordering. The pairing bound
/// |k_s - q_s| R <= max|delta| + pi is enforced when exact roots are located.
void validate_spectrum(const ModeSpectrum& s);

}  // namespace catkit
