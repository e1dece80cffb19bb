#pragma once

#include <span>
#include <string>
#include <vector>

#include "catkit/media.hpp"
#include "catkit/modes.hpp"
#include "catkit/overlap.hpp"

namespace catkit {

struct ExponentFit {
    double eta = 0.0;     ///< minus the slope of log value against ln N
    double stderr_ = 0.0;
    int n_points = 0;
    double N_min = 0.0;
    double N_max = 0.0;
};

/// Least-squares line through (ln N, log_value). Needs >= 5 distinct N > 0.
ExponentFit fit_power_law(std::span<const double> N, std::span<const double> log_value);

struct ScalingRow {
    int N = 0;
    double R_over_a = 0.0;
    double log_abs_det_D = 0.0;
    double log_S = 0.0;
};

struct ScanOptions {
    SpectrumMethod method = SpectrumMethod::shift;
    OverlapSource source = OverlapSource::asymptotic;
    bool with_S = true;
};

struct ScalingRun {
    Medium medium;
    double ratio = 0.0;
    std::vector<int> N_list;
    std::vector<ScalingRow> rows;
};

/// For each N: R = N a / ratio, then spectrum, D, log|det D| and log S.
ScalingRun scan_fixed_ratio(const Medium& m, double ratio, std::span<const int> N_list, const ScanOptions& opt = {});

struct ContourRow {
    int N = 0;
    double R_over_a = 0.0;
    double log_abs_det_D = 0.0;
};

/// log|det D| on the grid N_values x R_values (each at most 200 long), N-major.
std::vector<ContourRow> contour_scan(const Medium& m, std::span<const int> N_values, std::span<const double> R_values,
                                     const ScanOptions& opt = {});

struct RidgeEstimate {
    double ratio = 0.0;  ///< median over lines of the minimizing N a / R
    int lines = 0;       ///< grid lines whose minimum is interior
    std::vector<double> per_line;
};

/// Minimum of log|det D| along every fixed-N and fixed-R line of a contour
/// grid, refined by a parabola through the three lowest neighbours.
RidgeEstimate contour_ridge(std::span<const ContourRow> grid);

struct EtaDeltaRow {
    double ratio = 0.0;
    double k_a = 0.0;  ///< pi * ratio
    double delta = 0.0;
    double eta = 0.0;
    double eta_stderr = 0.0;
};

std::vector<EtaDeltaRow> exponent_vs_phase_shift(const Medium& m, std::span<const double> ratios,
                                                 std::span<const int> N_list, const ScanOptions& opt = {});

struct PcCheck {
    double ratio = 0.0;
    int N = 0;
    double computed_log_S = 0.0;
    double closed_form_log_S = 0.0;  ///< -ratio^2 ln(pi / 2)
};

PcCheck pc_overlap_check(double ratio, int N, const ScanOptions& opt = {});

struct SelftestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Quick oracle suite: Gaussian closed forms and quadrature, exact vs shifted
/// spectra, vacuum identities, phase shift vs cavity eigenvalues.
std::vector<SelftestResult> selftest();

}  // namespace catkit
