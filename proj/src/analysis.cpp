#include "catkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <utility>

#include "catkit/error.hpp"
#include "catkit/gaussian.hpp"
#include "catkit/parallel.hpp"
#include "catkit/scattering.hpp"

namespace catkit {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

void check_ratio(double ratio)
{
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        fail(ErrorCode::invalid_argument, "analysis: ratio N a / R must be > 0, got " + std::to_string(ratio));
    }
}

void check_increasing(std::span<const int> N_list)
{
    if (N_list.empty()) fail(ErrorCode::invalid_argument, "analysis: empty N list");
    for (std::size_t i = 0; i < N_list.size(); ++i) {
        if (N_list[i] < 1) fail(ErrorCode::invalid_argument, "analysis: mode counts must be >= 1");
        if (i > 0 && N_list[i] <= N_list[i - 1]) {
            fail(ErrorCode::invalid_argument, "analysis: N list must be strictly increasing");
        }
    }
}

ScalingRow evaluate_point(const Medium& m, int N, double R, const ScanOptions& opt)
{
    const CavityGeometry g{1.0, R, 1};
    const ModeSpectrum spectrum = build_spectrum(g, m, N, opt.method);
    const OverlapMatrix D = build_overlap_matrix(spectrum, opt.source);
    ScalingRow row{N, R, 0.0, 0.0};
    if (opt.with_S) {
        const OverlapResult r = partial_overlap_S(spectrum, D);
        row.log_abs_det_D = r.log_abs_det_D;
        row.log_S = r.log_S;
    } else {
        row.log_abs_det_D = log_abs_det(D.D).log_abs;
    }
    return row;
}

// Abscissa of the vertex of the parabola through three points, clamped to
// their span.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2)
{
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if (den == 0.0) return x1;
    const double x = x1 - 0.5 * num / den;
    return std::clamp(x, std::min(x0, x2), std::max(x0, x2));
}

// points sorted by abscissa; returns false when the minimum sits on an end.
bool line_minimum(const std::vector<std::pair<double, double>>& pts, double& x_min)
{
    if (pts.size() < 3) return false;
    std::size_t i = 0;
    for (std::size_t j = 1; j < pts.size(); ++j) {
        if (pts[j].second < pts[i].second) i = j;
    }
    if (i == 0 || i + 1 == pts.size()) return false;
    x_min = parabola_vertex(pts[i - 1].first, pts[i - 1].second, pts[i].first, pts[i].second, pts[i + 1].first,
                            pts[i + 1].second);
    return true;
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ExponentFit fit_power_law(std::span<const double> N, std::span<const double> log_value)
{
    if (N.size() != log_value.size()) fail(ErrorCode::invalid_argument, "analysis: fit inputs differ in length");
    if (N.size() < 5) {
        fail(ErrorCode::insufficient_data, "analysis: power-law fit needs >= 5 points, got " + std::to_string(N.size()));
    }
    std::vector<double> sorted(N.begin(), N.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        fail(ErrorCode::invalid_argument, "analysis: power-law fit needs distinct N values");
    }
    if (!(sorted.front() > 0.0)) fail(ErrorCode::domain, "analysis: power-law fit needs N > 0");

    const auto n = static_cast<double>(N.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < N.size(); ++i) {
        if (!std::isfinite(log_value[i])) fail(ErrorCode::domain, "analysis: non-finite value in power-law fit");
        mx += std::log(N[i]);
        my += log_value[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < N.size(); ++i) {
        const double dx = std::log(N[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (log_value[i] - my);
    }
    const double slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < N.size(); ++i) {
        const double r = log_value[i] - (my + slope * (std::log(N[i]) - mx));
        ssr += r * r;
    }
    ExponentFit fit;
    fit.eta = -slope;
    fit.stderr_ = std::sqrt(ssr / (n - 2.0) / sxx);
    fit.n_points = static_cast<int>(N.size());
    fit.N_min = sorted.front();
    fit.N_max = sorted.back();
    return fit;
}

ScalingRun scan_fixed_ratio(const Medium& m, double ratio, std::span<const int> N_list, const ScanOptions& opt)
{
    check_ratio(ratio);
    check_increasing(N_list);
    ScalingRun run{m, ratio, {N_list.begin(), N_list.end()}, std::vector<ScalingRow>(N_list.size())};
    parallel_for(N_list.size(), [&](std::size_t i) {
        run.rows[i] = evaluate_point(m, N_list[i], N_list[i] / ratio, opt);
    });
    return run;
}

std::vector<ContourRow> contour_scan(const Medium& m, std::span<const int> N_values, std::span<const double> R_values,
                                     const ScanOptions& opt)
{
    if (N_values.empty() || R_values.empty() || N_values.size() > 200 || R_values.size() > 200) {
        fail(ErrorCode::invalid_argument, "analysis: contour grid sides must be between 1 and 200");
    }
    for (const int N : N_values) {
        if (N < 1) fail(ErrorCode::invalid_argument, "analysis: mode counts must be >= 1");
    }
    ScanOptions det_only = opt;
    det_only.with_S = false;
    const std::size_t nR = R_values.size();
    std::vector<ContourRow> grid(N_values.size() * nR);
    parallel_for(grid.size(), [&](std::size_t idx) {
        const int N = N_values[idx / nR];
        const double R = R_values[idx % nR];
        const ScalingRow row = evaluate_point(m, N, R, det_only);
        grid[idx] = {N, R, row.log_abs_det_D};
    });
    return grid;
}

RidgeEstimate contour_ridge(std::span<const ContourRow> grid)
{
    std::map<int, std::vector<std::pair<double, double>>> by_N;     // R -> value
    std::map<double, std::vector<std::pair<double, double>>> by_R;  // N -> value
    for (const ContourRow& row : grid) {
        by_N[row.N].emplace_back(row.R_over_a, row.log_abs_det_D);
        by_R[row.R_over_a].emplace_back(static_cast<double>(row.N), row.log_abs_det_D);
    }
    RidgeEstimate out;
    for (auto& [N, pts] : by_N) {
        std::sort(pts.begin(), pts.end());
        // The ratio N / R is monotone in R, so refine in the ratio coordinate directly.
        std::vector<std::pair<double, double>> in_ratio;
        for (auto it = pts.rbegin(); it != pts.rend(); ++it) in_ratio.emplace_back(N / it->first, it->second);
        double x = 0.0;
        if (line_minimum(in_ratio, x)) out.per_line.push_back(x);
    }
    for (auto& [R, pts] : by_R) {
        std::sort(pts.begin(), pts.end());
        std::vector<std::pair<double, double>> in_ratio;
        for (const auto& [N, v] : pts) in_ratio.emplace_back(N / R, v);
        double x = 0.0;
        if (line_minimum(in_ratio, x)) out.per_line.push_back(x);
    }
    if (out.per_line.empty()) {
        fail(ErrorCode::insufficient_data, "analysis: no contour line has an interior minimum");
    }
    out.lines = static_cast<int>(out.per_line.size());
    out.ratio = median(out.per_line);
    return out;
}

std::vector<EtaDeltaRow> exponent_vs_phase_shift(const Medium& m, std::span<const double> ratios,
                                                 std::span<const int> N_list, const ScanOptions& opt)
{
    if (ratios.empty()) fail(ErrorCode::invalid_argument, "analysis: empty ratio grid");
    ScanOptions det_only = opt;
    det_only.with_S = false;
    std::vector<EtaDeltaRow> out;
    out.reserve(ratios.size());
    for (const double ratio : ratios) {
        check_ratio(ratio);
        const ScalingRun run = scan_fixed_ratio(m, ratio, N_list, det_only);
        std::vector<double> N, v;
        for (const ScalingRow& row : run.rows) {
            N.push_back(row.N);
            v.push_back(row.log_abs_det_D);
        }
        const ExponentFit fit = fit_power_law(N, v);
        const double k = kPi * ratio;
        const double delta = unwrapped_phase_shift(m, 1, 1.0, std::span<const double>(&k, 1)).front();
        out.push_back({ratio, k, delta, fit.eta, fit.stderr_});
    }
    return out;
}

PcCheck pc_overlap_check(double ratio, int N, const ScanOptions& opt)
{
    check_ratio(ratio);
    ScanOptions with_S = opt;
    with_S.with_S = true;
    const ScalingRow row = evaluate_point(Medium::perfect_conductor(), N, N / ratio, with_S);
    return {ratio, N, row.log_S, -ratio * ratio * std::log(kPi / 2.0)};
}

std::vector<SelftestResult> selftest()
{
    std::vector<SelftestResult> results;
    const auto run = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& check) {
        try {
            auto [ok, detail] = check();
            results.push_back({name, ok, detail});
        } catch (const std::exception& e) {
            results.push_back({name, false, e.what()});
        }
    };

    run("gaussian closed form", [] {
        const double q[] = {1.0}, k[] = {4.0};
        const Eigen::MatrixXd D = Eigen::MatrixXd::Identity(1, 1);
        const double expect = std::sqrt(2.0 * std::sqrt(4.0) / 5.0);
        const double got = std::exp(partial_overlap(q, k, D).log_S);
        const double oracle = overlap_quadrature_oracle(q, k, D);
        const bool ok = std::abs(got - expect) < 1e-12 && std::abs(oracle - expect) < 1e-8;
        return std::pair{ok, fmt("S = %.12f, quadrature %.12f, closed form %.12f", got, oracle, expect)};
    });

    run("gaussian quadrature N=2", [] {
        const double q[] = {1.0, 2.0}, k[] = {1.3, 2.1};
        Eigen::MatrixXd D(2, 2);
        D << std::cos(0.2), -std::sin(0.2), std::sin(0.2), std::cos(0.2);
        const double got = std::exp(partial_overlap(q, k, D).log_S);
        const double oracle = overlap_quadrature_oracle(q, k, D);
        return std::pair{std::abs(got - oracle) < 1e-8, fmt("S = %.12f, quadrature %.12f", got, oracle)};
    });

    run("exact vs shift spectra", [] {
        const CavityGeometry g{1.0, 200.0, 1};
        const Medium m = Medium::drude(5.0);
        const ModeSpectrum ex = build_spectrum(g, m, 200, SpectrumMethod::exact);
        const ModeSpectrum sh = build_spectrum(g, m, 200, SpectrumMethod::shift);
        double worst = 0.0, dmax = 0.0;
        for (std::size_t i = 0; i < ex.size(); ++i) {
            worst = std::max(worst, std::abs(ex.k[i] - sh.k[i]) * g.R);
            dmax = std::max(dmax, std::abs(sh.delta[i]));
        }
        const double bound = 5.0 * dmax * dmax / g.R;
        return std::pair{worst <= bound, fmt("max |k_exact - k_shift| R = %.3e, bound %.3e", worst, bound)};
    });

    run("vacuum identity", [] {
        const CavityGeometry g{1.0, 50.0, 1};
        const ModeSpectrum s = build_spectrum(g, Medium::vacuum(), 60, SpectrumMethod::exact);
        const OverlapMatrix a = build_overlap_matrix(s, OverlapSource::asymptotic);
        const OverlapMatrix q = build_overlap_matrix(s, OverlapSource::quadrature);
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(60, 60);
        const double ea = (a.D - I).cwiseAbs().maxCoeff();
        const double eq = (q.D - I).cwiseAbs().maxCoeff();
        const double lS = partial_overlap_S(s, a).log_S;
        const bool ok = ea < 1e-10 && eq < 1e-8 && std::abs(lS) < 1e-8;
        return std::pair{ok, fmt("|D - I| asymptotic %.2e, quadrature %.2e; ln S = %.2e", ea, eq, lS)};
    });

    run("phase shift vs cavity eigenvalues", [] {
        const Medium m = Medium::drude(5.0);
        const double R = 200.0;
        const int s = 200;  // k a near 3.1, below the resonance
        const double q = empty_cavity_wavevectors(R, s).back();
        const double oracle = delta_oracle(m, 1, 1.0, R, s);
        const double delta = unwrapped_phase_shift(m, 1, 1.0, std::span<const double>(&q, 1)).front();
        const double diff = std::abs(oracle - delta);
        return std::pair{diff < 0.02, fmt("delta(q) = %.6f, (k - q) R = %.6f, diff %.2e", delta, oracle, diff)};
    });

    return results;
}

}  // namespace catkit
