#pragma once

#include <Eigen/Dense>

#include "catkit/media.hpp"
#include "catkit/modes.hpp"

namespace catkit {

enum class OverlapSource { asymptotic, quadrature };

inline constexpr int kQuadratureModeLimit = 200;

struct OverlapMatrix {
    ModeSpectrum spectrum;
    Eigen::MatrixXd D;  ///< rows: empty modes s, columns: perturbed modes p
    OverlapSource source = OverlapSource::asymptotic;
};

/// Large-r overlap of an odd-l perturbed mode k with an empty mode q:
///   2k (cos kR - cos qR) / ((k^2 - q^2) R sqrt((1 - sin 2kR / 2kR)(1 - sin 2qR / 2qR)))
/// evaluated in product form, so k -> q needs no special branch.
double mode_overlap_asymptotic(double k, double q, double R);

/// Unnormalized radial function g(r) of the l = 1 TE mode at wavevector k:
/// j_1(n k r) inside, continued outside by the combination of j_1 and y_1
/// that vanishes at R and is continuous at a. Throws ErrorCode::pole when
/// that combination vanishes at r = a. For a perfect conductor g = 0 inside.
double radial_mode_function(const CavityGeometry& g, const Medium& m, double k, double r);

/// Integral over [0, R] of f_1(q r) g_1(r) r^2 with both functions at unit
/// radial norm and positive slope at r = R. Gauss-Legendre panels of width
/// <= pi / (4 max(k, q, |n| k)); halving the panels must reproduce the value to
/// 1e-10 or ErrorCode::quadrature is thrown.
double mode_overlap_quadrature(const CavityGeometry& g, const Medium& m, double k, double q);

/// The asymptotic source places q_s R and k_p R on the large-r phase lattice
/// (s + 1/2) pi, keeping each mode's shift (k_p - q_p) R, and fixes the sign of
/// each row so modes have positive slope at R. Vacuum gives the identity.
/// The quadrature source is limited to max_quadrature_modes modes.
OverlapMatrix build_overlap_matrix(const ModeSpectrum& spectrum, OverlapSource source,
                                   int max_quadrature_modes = kQuadratureModeLimit);

}  // namespace catkit
