#pragma once

#include <span>

#include <Eigen/Dense>

#include "catkit/modes.hpp"
#include "catkit/overlap.hpp"

namespace catkit {

struct LogDet {
    double log_abs = 0.0;  ///< natural log of |det|; -inf when singular
    int sign = 1;          ///< +1, -1, or 0 when singular
};

/// Partial-pivoting LU; sign from the pivots and the permutation parity.
LogDet log_abs_det(const Eigen::MatrixXd& M);

struct OverlapResult {
    int N = 0;
    double log_abs_det_D = 0.0;
    double log_S = 0.0;
    int sign_det = 1;
};

/// Ground-state overlap of N oscillators with frequencies q (empty cavity) and
/// k (loaded cavity) whose coordinates are related by D:
///   ln S = (N/2) ln 2 + (1/4) sum(ln q + ln k) + (1/2) ln|det D| - (1/2) ln det(diag(k) + D^T diag(q) D)
/// Throws ErrorCode::degenerate if diag(k) + D^T diag(q) D is not positive definite.
OverlapResult partial_overlap(std::span<const double> q, std::span<const double> k, const Eigen::MatrixXd& D);

OverlapResult partial_overlap_S(const ModeSpectrum& spectrum, const OverlapMatrix& D);

/// Same ratio of Gaussian integrals evaluated by brute-force tensor-product
/// quadrature over the coordinates Q, with U = D Q. N <= 3.
double overlap_quadrature_oracle(std::span<const double> q, std::span<const double> k, const Eigen::MatrixXd& D);

}  // namespace catkit
