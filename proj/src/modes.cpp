#include "catkit/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "catkit/error.hpp"
#include "catkit/roots.hpp"
#include "catkit/scattering.hpp"
#include "catkit/specfun.hpp"

namespace catkit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanPointsPerSpacing = 16;
constexpr int kMaxRescans = 3;

std::string geometry_text(const CavityGeometry& g, const Medium& m)
{
    return "(medium " + to_string(m) + ", a = " + std::to_string(g.a) + ", R = " + std::to_string(g.R) + ")";
}

struct CountCheck {
    bool ok = true;
    std::size_t worst = 0;  // index of the least plausible pairing
};

CountCheck check_roots(const std::vector<double>& k, const CavityGeometry& g, const Medium& m)
{
    const int n = static_cast<int>(k.size());
    // Enough empty modes to count everything below the last perturbed root.
    const int extra = static_cast<int>(std::ceil((k.back() * g.R) / kPi)) + 2;
    const std::vector<double> q = empty_cavity_wavevectors(g.R, std::max(n, extra));
    const std::vector<double> delta = unwrapped_phase_shift(m, g.l, g.a, q);

    double max_delta = 0.0;
    for (std::size_t i = 0; i < q.size() && q[i] <= k.back() + kPi / g.R; ++i) {
        max_delta = std::max(max_delta, std::abs(delta[i]));
    }
    const auto n_empty = std::count_if(q.begin(), q.end(), [&](double v) { return v < k.back(); });
    const double allowed = std::floor(max_delta / kPi) + 1.0;

    CountCheck result;
    result.ok = std::abs(static_cast<double>(n_empty - n)) <= allowed;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
        const double excess = std::abs(k[s] - q[s]) * g.R - (max_delta + kPi);
        if (excess > 0.0) result.ok = false;
        if (excess > worst) {
            worst = excess;
            result.worst = static_cast<std::size_t>(s);
        }
    }
    return result;
}

}  // namespace

void CavityGeometry::validate() const
{
    if (!(a > 0.0) || !std::isfinite(a)) fail(ErrorCode::invalid_argument, "modes: inclusion radius must be > 0");
    if (!std::isfinite(R) || !(R >= 10.0 * a)) {
        fail(ErrorCode::invalid_argument, "modes: cavity radius must satisfy R / a >= 10, got R / a = " +
                                              std::to_string(R / a));
    }
    if (l != 1) fail(ErrorCode::unsupported_order, "modes: only the l = 1 TE channel is supported");
}

std::vector<double> empty_cavity_wavevectors(double R, int N)
{
    if (!(R > 0.0)) fail(ErrorCode::invalid_argument, "modes: cavity radius must be > 0");
    if (N < 1) fail(ErrorCode::invalid_argument, "modes: mode count must be >= 1");
    // j_1(x) = 0  <=>  sin x - x cos x = 0; one root in (s pi, (s + 1/2) pi).
    const auto h = [](double x) { return std::sin(x) - x * std::cos(x); };
    std::vector<double> q(static_cast<std::size_t>(N));
    for (int s = 1; s <= N; ++s) {
        const double lo = s * kPi;
        const double hi = (s + 0.5) * kPi;
        q[static_cast<std::size_t>(s - 1)] = brent_root(h, lo, hi, h(lo), h(hi), 1e-15) / R;
    }
    return q;
}

std::vector<double> perturbed_wavevectors_shift(std::span<const double> q, const Medium& m, double a, double R)
{
    CavityGeometry{a, R, 1}.validate();
    if (q.empty()) return {};
    if (m.is_vacuum()) return {q.begin(), q.end()};
    const std::vector<double> delta = unwrapped_phase_shift(m, 1, a, q);
    std::vector<double> k(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) k[i] = q[i] + delta[i] / R;
    return k;
}

double characteristic_function(const CavityGeometry& g, const Medium& m, double k)
{
    const InteriorSolution in = interior_solution(m, g.l, k, g.a);
    const Riccati at_a = riccati(g.l, k * g.a);
    const Riccati at_R = riccati(g.l, k * g.R);
    // Exterior solution vanishing at R: w(r) = S(kr) C(kR) - C(kr) S(kR).
    const double w = at_a.S * at_R.C - at_a.C * at_R.S;
    const double dw = k * (at_a.Sp * at_R.C - at_a.Cp * at_R.S);
    return in.u * dw - in.du * w;
}

std::vector<double> perturbed_wavevectors_exact(const CavityGeometry& g, const Medium& m, int N)
{
    g.validate();
    if (N < 1) fail(ErrorCode::invalid_argument, "modes: mode count must be >= 1");
    const auto F = [&](double k) { return characteristic_function(g, m, k); };

    CountCheck last;
    std::vector<double> roots;
    for (int attempt = 0; attempt <= kMaxRescans; ++attempt) {
        const double step = kPi / (g.R * kScanPointsPerSpacing * (1 << attempt));
        // Generous ceiling: every mode lies below its empty partner plus a few spacings.
        const double k_ceiling = (N + 64.0) * kPi / g.R + 64.0 / g.a;
        roots.clear();
        roots.reserve(static_cast<std::size_t>(N));
        double k0 = 0.5 * step;
        double f0 = F(k0);
        while (static_cast<int>(roots.size()) < N && k0 < k_ceiling) {
            const double k1 = k0 + step;
            const double f1 = F(k1);
            if (f1 == 0.0) {
                roots.push_back(k1);
            } else if (f0 != 0.0 && (f0 > 0.0) != (f1 > 0.0)) {
                roots.push_back(brent_root(F, k0, k1, f0, f1, 1e-15));
            }
            k0 = k1;
            f0 = f1;
        }
        if (static_cast<int>(roots.size()) < N) {
            fail(ErrorCode::missed_root, "modes: found only " + std::to_string(roots.size()) + " of " +
                                             std::to_string(N) + " roots below k = " + std::to_string(k_ceiling) +
                                             " " + geometry_text(g, m));
        }
        last = check_roots(roots, g, m);
        if (last.ok) return roots;
    }
    const std::size_t s = last.worst;
    const double q = empty_cavity_wavevectors(g.R, static_cast<int>(s) + 1).back();
    fail(ErrorCode::missed_root, "modes: root count inconsistent with the phase-shift range after " +
                                     std::to_string(kMaxRescans) + " rescans; suspect interval [" +
                                     std::to_string(std::min(q, roots[s])) + ", " +
                                     std::to_string(std::max(q, roots[s])) + "] for mode " +
                                     std::to_string(s + 1) + " " + geometry_text(g, m));
}

ModeSpectrum build_spectrum(const CavityGeometry& g, const Medium& m, int N, SpectrumMethod method)
{
    g.validate();
    ModeSpectrum out;
    out.geometry = g;
    out.medium = m;
    out.method = method;
    out.q = empty_cavity_wavevectors(g.R, N);
    if (method == SpectrumMethod::shift) {
        out.k = perturbed_wavevectors_shift(out.q, m, g.a, g.R);
    } else {
        out.k = perturbed_wavevectors_exact(g, m, N);
    }
    out.delta.resize(out.q.size());
    for (std::size_t i = 0; i < out.q.size(); ++i) out.delta[i] = (out.k[i] - out.q[i]) * g.R;
    validate_spectrum(out);
    return out;
}

void validate_spectrum(const ModeSpectrum& s)
{
    if (s.q.size() != s.k.size() || s.q.size() != s.delta.size()) {
        fail(ErrorCode::invalid_argument, "modes: spectrum lists differ in length");
    }
    for (std::size_t i = 0; i < s.q.size(); ++i) {
        if (!(s.q[i] > 0.0) || !(s.k[i] > 0.0) || !std::isfinite(s.k[i])) {
            fail(ErrorCode::invalid_argument, "modes: spectrum wavevectors must be positive and finite");
        }
        if (i > 0 && (!(s.q[i] > s.q[i - 1]) || !(s.k[i] > s.k[i - 1]))) {
            fail(ErrorCode::degenerate, "modes: spectrum is not strictly increasing at mode " + std::to_string(i + 1));
        }
    }
}

}  // namespace catkit
