// Acceptance suite. Prints one PASS/FAIL line per criterion.
//   acceptance [--only <id>] [--out-dir <dir>]
// With --out-dir the figure CSVs (fig2.csv, fig1b.csv, fig1a.csv) are written
// in the same schemas as the CLI.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "catkit/analysis.hpp"
#include "catkit/error.hpp"
#include "catkit/gaussian.hpp"
#include "catkit/modes.hpp"
#include "catkit/overlap.hpp"
#include "catkit/scattering.hpp"
#include "catkit/specfun.hpp"

using namespace catkit;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kKp = 5.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string out_dir;

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::vector<double> logspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return v;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::ofstream open_csv(const std::string& name)
{
    std::ofstream f(std::filesystem::path(out_dir) / name);
    f.precision(17);
    return f;
}

Outcome fig2_peak()
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> k = linspace(0.01, 20.0, 2000);
    const std::vector<double> d = unwrapped_phase_shift(Medium::drude(kKp), 1, 1.0, k);
    const std::size_t i = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
    const double ratio = k[i] / kKp;
    const double t = seconds_since(t0);
    if (!out_dir.empty()) {
        std::ofstream f = open_csv("fig2.csv");
        f << "# medium=drude:kp=5\nk_a,delta\n";
        for (std::size_t j = 0; j < k.size(); ++j) f << k[j] << ',' << d[j] << '\n';
    }
    return {std::abs(ratio - 1.18) <= 0.02 && t < 60.0,
            fmt("k_peak/k_p = %.4f (target 1.18 +- 0.02), delta_max = %.4f pi, %.2f s", ratio, d[i] / kPi, t)};
}

Outcome tail_exponents()
{
    const Medium m = Medium::drude(kKp);
    const std::vector<double> lo = logspace(0.01, 0.1, 40);
    const std::vector<double> hi = logspace(50.0, 500.0, 40);
    const double s_lo = loglog_slope(lo, unwrapped_phase_shift(m, 1, 1.0, lo));
    const double s_hi = loglog_slope(hi, unwrapped_phase_shift(m, 1, 1.0, hi));
    const bool ok_lo = std::abs(s_lo - 2.0) <= 0.1;
    const bool ok_hi = std::abs(s_hi + 1.0) <= 0.1;
    return {ok_lo && ok_hi, fmt("low-k slope %.4f (target 2.0 +- 0.1) %s; high-k slope %.4f (target -1.0 +- 0.1) %s",
                                s_lo, ok_lo ? "ok" : "out", s_hi, ok_hi ? "ok" : "out")};
}

Outcome fabry_perot()
{
    const std::vector<double> k = linspace(0.01, 20.0, 20000);
    const std::vector<double> d = unwrapped_phase_shift(Medium::drude(kKp), 1, 1.0, k);
    const std::size_t main = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
    std::vector<double> peaks;
    for (std::size_t i = main + 1; i + 1 < d.size(); ++i) {
        if (d[i] > d[i - 1] && d[i] >= d[i + 1]) peaks.push_back(k[i]);
    }
    if (peaks.size() < 3) return {false, fmt("only %zu secondary maxima up to k a = 20", peaks.size())};
    std::string list;
    for (std::size_t i = 1; i < peaks.size(); ++i) list += fmt("%s%.3f", i > 1 ? " " : "", (peaks[i] - peaks[i - 1]) / kPi);
    const double mean = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
    return {std::abs(mean / kPi - 1.0) <= 0.1,
            fmt("mean spacing %.4f pi over %zu secondary maxima (target pi +- 10%%); spacings/pi: %s", mean / kPi, peaks.size(),
                list.c_str())};
}

// Test wavevectors for the cavity oracle, off the stationary points of delta.
const double kOracleTargets[] = {2.0, 4.0, 7.0, 9.0, 12.0};

Outcome oracle_consistency()
{
    const Medium m = Medium::drude(kKp);
    bool ok = true;
    std::string detail;
    for (const double target : kOracleTargets) {
        double prev = INFINITY;
        detail += fmt("k a~%.1f:", target);
        for (const double R : {50.0, 100.0, 200.0}) {
            const std::vector<double> q = empty_cavity_wavevectors(R, static_cast<int>(target * R / kPi) + 2);
            std::size_t s = 0;
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (std::abs(q[i] - target) < std::abs(q[s] - target)) s = i;
            }
            const std::vector<double> kq = {q[s]};
            const double err = std::abs(unwrapped_phase_shift(m, 1, 1.0, kq)[0] -
                                        delta_oracle(m, 1, 1.0, R, static_cast<int>(s) + 1));
            detail += fmt(" %.2e", err);
            ok = ok && err < prev;
            prev = err;
        }
        detail += "; ";
    }
    const double R = 200.0;
    const int N = 600;
    const CavityGeometry g{1.0, R, 1};
    const ModeSpectrum ex = build_spectrum(g, m, N, SpectrumMethod::exact);
    const ModeSpectrum sh = build_spectrum(g, m, N, SpectrumMethod::shift);
    double max_delta = 0.0, max_diff = 0.0;
    for (int i = 0; i < N; ++i) {
        max_delta = std::max(max_delta, std::abs(sh.delta[i]));
        max_diff = std::max(max_diff, std::abs(ex.k[i] - sh.k[i]));
    }
    const double bound = 5.0 * max_delta * max_delta / R;
    ok = ok && max_diff <= bound;
    detail += fmt("R/a=200 N=600: max|k_exact - k_shift| = %.3e (x R = %.3e), bound 5 dmax^2/R = %.3e", max_diff,
                  max_diff * R, bound);
    return {ok, detail};
}

Outcome fig1b_exponent()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> Ns;
    for (int n = 100; n <= 1000; n += 50) Ns.push_back(n);
    const ScalingRun run = scan_fixed_ratio(Medium::drude(kKp), 1.88, Ns);
    std::vector<double> x, ydet, yS2;
    for (const ScalingRow& r : run.rows) {
        x.push_back(r.N);
        ydet.push_back(r.log_abs_det_D);
        yS2.push_back(2.0 * r.log_S);
    }
    const ExponentFit fd = fit_power_law(x, ydet);
    const ExponentFit fs = fit_power_law(x, yS2);
    const double t = seconds_since(t0);
    if (!out_dir.empty()) {
        std::ofstream f = open_csv("fig1b.csv");
        f << "# medium=drude:kp=5\n# ratio=1.88\nN,R_over_a,log_abs_det_D,log_S\n";
        for (const ScalingRow& r : run.rows) f << r.N << ',' << r.R_over_a << ',' << r.log_abs_det_D << ',' << r.log_S << '\n';
    }
    const bool ok = std::abs(fd.eta - 0.39) <= 0.05 && std::abs(fs.eta - fd.eta) <= 0.15 && t < 600.0;
    return {ok, fmt("eta_det = %.4f +- %.4f (target 0.39 +- 0.05), eta_S2 = %.4f (|diff| %.4f <= 0.15), %.1f s",
                    fd.eta, fd.stderr_, fs.eta, std::abs(fs.eta - fd.eta), t)};
}

Outcome ridge()
{
    std::vector<int> N;
    std::vector<double> R;
    for (int i = 0; i < 40; ++i) {
        N.push_back(40 + i * (320 - 40) / 39);
        R.push_back(15.0 + (260.0 - 15.0) * i / 39.0);
    }
    const std::vector<ContourRow> grid = contour_scan(Medium::drude(kKp), N, R);
    const RidgeEstimate est = contour_ridge(grid);
    if (!out_dir.empty()) {
        std::ofstream f = open_csv("fig1a.csv");
        f << "# medium=drude:kp=5\nN,R_over_a,log_abs_det_D\n";
        for (const ContourRow& r : grid) f << r.N << ',' << r.R_over_a << ',' << r.log_abs_det_D << '\n';
    }
    return {std::abs(est.ratio - 1.88) <= 0.1,
            fmt("ridge N a / R = %.4f from %d grid lines (target 1.88 +- 0.1)", est.ratio, est.lines)};
}

Outcome pec_limit()
{
    const double target = std::log(kPi / 2.0);
    bool ok = true;
    std::string detail = fmt("N=500, target ln(pi/2) = %.4f:", target);
    for (const double ratio : {0.5, 1.0, 1.5, 2.0}) {
        const PcCheck c = pc_overlap_check(ratio, 500);
        const double v = -c.computed_log_S / (ratio * ratio);
        const bool hit = std::abs(v - target) <= 0.2 * target;
        ok = ok && hit;
        detail += fmt(" ratio %.1f -> %.4f%s", ratio, v, hit ? "" : " (out)");
    }
    return {ok, detail};
}

Outcome gaussian_oracle()
{
    std::mt19937 rng(20260101);
    std::uniform_real_distribution<double> w(0.5, 2.0);
    std::uniform_real_distribution<double> e(-0.3, 0.3);
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + rep % 3;
        ModeSpectrum s;
        OverlapMatrix D;
        D.D.resize(n, n);
        for (int i = 0; i < n; ++i) {
            s.q.push_back(w(rng));
            s.k.push_back(w(rng));
            for (int j = 0; j < n; ++j) D.D(i, j) = (i == j ? 1.0 : 0.0) + e(rng);
        }
        const double S = std::exp(partial_overlap_S(s, D).log_S);
        worst = std::max(worst, std::abs(S - overlap_quadrature_oracle(s.q, s.k, D.D)));
    }
    ModeSpectrum one;
    one.q = one.k = {1.7};
    OverlapMatrix I;
    I.D = Eigen::MatrixXd::Identity(1, 1);
    const double id = std::abs(std::exp(partial_overlap_S(one, I).log_S) - 1.0);
    return {worst <= 1e-8 && id <= 1e-12,
            fmt("max |S - oracle| = %.2e over 50 instances (<= 1e-8); identity |S - 1| = %.1e (<= 1e-12)", worst, id)};
}

Outcome identity()
{
    double max_delta = 0.0;
    for (const double k : logspace(1e-2, 1e3, 400)) {
        max_delta = std::max(max_delta, std::abs(phase_shift(Medium::vacuum(), 1, k, 1.0)));
    }

    const int N = 500;
    const CavityGeometry g{1.0, N / 1.88, 1};
    const ModeSpectrum s = build_spectrum(g, Medium::vacuum(), N, SpectrumMethod::exact);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
    const double d_asym = (build_overlap_matrix(s, OverlapSource::asymptotic).D - I).cwiseAbs().maxCoeff();
    const double d_quad = (build_overlap_matrix(s, OverlapSource::quadrature, N).D - I).cwiseAbs().maxCoeff();

    const OverlapMatrix D = build_overlap_matrix(s, OverlapSource::asymptotic);
    double max_S = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double log_S = partial_overlap(std::span(s.q).first(n), std::span(s.k).first(n),
                                             D.D.topLeftCorner(n, n)).log_S;
        max_S = std::max(max_S, std::abs(std::exp(log_S) - 1.0));
    }

    double w_bessel = 0.0, w_riccati = 0.0;
    for (int l = 0; l <= 5; ++l) {
        for (const double x : logspace(1e-2, 1e3, 200)) {
            const BesselPair b = sph_bessel(l, x);
            w_bessel = std::max(w_bessel, std::abs((b.j * b.yp - b.jp * b.y) * x * x - 1.0));
            const Riccati r = riccati(l, x);
            w_riccati = std::max(w_riccati, std::abs(r.S * r.Cp - r.Sp * r.C - 1.0));
        }
    }
    const bool ok = max_delta == 0.0 && d_asym <= 1e-10 && d_quad <= 1e-10 && max_S <= 1e-8 && w_bessel <= 1e-10 &&
                    w_riccati <= 1e-10;
    return {ok, fmt("max|delta| = %.1e; |D - I| = %.1e (asymptotic), %.1e (quadrature); max|S(n) - 1|, n <= 500 = "
                    "%.1e; Wronskian rel. err %.1e (j,y), %.1e (Riccati)",
                    max_delta, d_asym, d_quad, max_S, w_bessel, w_riccati)};
}

Outcome completeness()
{
    const int N = 500;
    const CavityGeometry g{1.0, N / 1.88, 1};
    const Medium m = Medium::drude(kKp);
    const ModeSpectrum s = build_spectrum(g, m, N, SpectrumMethod::exact);
    const Eigen::MatrixXd D = build_overlap_matrix(s, OverlapSource::quadrature, N).D;
    const Eigen::VectorXd norms = D.topRows(250).rowwise().squaredNorm();

    const ModeSpectrum sa = build_spectrum(g, m, N, SpectrumMethod::shift);
    const Eigen::VectorXd na = build_overlap_matrix(sa, OverlapSource::asymptotic).D.topRows(250).rowwise().squaredNorm();

    const bool ok = norms.minCoeff() >= 0.9 && norms.maxCoeff() <= 1.0;
    return {ok, fmt("quadrature D rows s <= 250: squared norms in [%.6f, %.12f] (target [0.9, 1.0]); "
                    "asymptotic D for reference: [%.5f, %.5f]",
                    norms.minCoeff(), norms.maxCoeff(), na.minCoeff(), na.maxCoeff())};
}

struct Criterion {
    const char* id;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"fig2_peak", fig2_peak},
    {"tail_exponents", tail_exponents},
    {"fabry_perot", fabry_perot},
    {"oracle_consistency", oracle_consistency},
    {"fig1b_exponent", fig1b_exponent},
    {"ridge", ridge},
    {"pec_limit", pec_limit},
    {"gaussian_oracle", gaussian_oracle},
    {"identity", identity},
    {"completeness", completeness},
};

}  // namespace

int main(int argc, char** argv)
{
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else if (std::strcmp(argv[i], "--out-dir") == 0 && i + 1 < argc) {
            out_dir = argv[++i];
            std::filesystem::create_directories(out_dir);
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const Criterion& c : kCriteria) std::printf("%s\n", c.id);
            return 0;
        } else {
            std::fprintf(stderr, "usage: %s [--only <id>] [--out-dir <dir>] [--list]\n", argv[0]);
            return 2;
        }
    }

    int failed = 0, ran = 0;
    for (const Criterion& c : kCriteria) {
        if (!only.empty() && only != c.id) continue;
        ++ran;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    if (ran == 0) {
        std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
        return 2;
    }
    return failed == 0 ? 0 : 1;
}
