#include "catkit/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <variant>
#include <numbers>
#include <string>

#include "catkit/error.hpp"
#include "catkit/modes.hpp"
#include "catkit/parallel.hpp"
#include "catkit/specfun.hpp"

namespace catkit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxBranchStep = kPi / 4.0;
constexpr int kMaxRefineDepth = 40;

void check_wavevector(double k, double a, const char* who)
{
    if (!(k > 0.0) || !std::isfinite(k)) {
        fail(ErrorCode::domain, std::string("scattering: ") + who + " requires k > 0, got " + std::to_string(k));
    }
    if (!(a > 0.0)) fail(ErrorCode::invalid_argument, std::string("scattering: ") + who + " requires a > 0");
}

// Removes x^{l+1} near the origin so u and du stay O(1) as the interior
// argument goes to zero.
double small_argument_factor(int l, double x) { return x < 1.0 ? std::pow(x, l + 1) : 1.0; }

std::string describe(const Medium& m, double k)
{
    return "(medium " + to_string(m) + ", k = " + std::to_string(k) + ")";
}

}  // namespace

InteriorSolution interior_solution(const Medium& m, int l, double k, double a)
{
    check_wavevector(k, a, "interior_solution");
    if (m.is_perfect_conductor()) return {0.0, 1.0};

    const double n2 = index_squared(m, k);
    if (n2 > 0.0) {
        const double n = std::sqrt(n2);
        const double x = n * k * a;
        const Riccati r = riccati(l, x);
        const double f = small_argument_factor(l, x);
        return {r.S / f, n * k * r.Sp / f};
    }
    if (n2 < 0.0) {
        const double kappa = k * std::sqrt(-n2);
        const double x = kappa * a;
        const ValueDeriv i = mod_sph_bessel_i_scaled(l, x);
        const double f = small_argument_factor(l, x);
        return {x * i.value / f, kappa * (i.value + x * i.derivative) / f};
    }
    // Plasma edge: u ~ r^{l+1}.
    return {1.0, (l + 1.0) / a};
}

double interior_log_derivative(const Medium& m, int l, double k, double a)
{
    if (m.is_perfect_conductor()) {
        fail(ErrorCode::no_finite_permittivity, "scattering: interior_log_derivative needs a finite permittivity");
    }
    const InteriorSolution in = interior_solution(m, l, k, a);
    if (std::abs(in.u) <= 1e-15 * std::abs(in.du) * a) {
        fail(ErrorCode::pole, "scattering: interior Riccati function vanishes at r = a " + describe(m, k));
    }
    return in.du / in.u;
}

double phase_shift(const Medium& m, int l, double k, double a)
{
    check_wavevector(k, a, "phase_shift");
    if (m.is_vacuum()) return 0.0;

    const InteriorSolution in = interior_solution(m, l, k, a);
    const Riccati out = riccati(l, k * a);
    // Exterior A j_l + B y_l matched to (u, du); the standard Mie tangent is
    // num / den and this library reports its negative.
    const double num = k * out.Sp * in.u - out.S * in.du;
    const double den = k * out.Cp * in.u - out.C * in.du;
    if (den == 0.0) return kPi / 2.0;
    const double delta = -std::atan(num / den);
    return delta == -kPi / 2.0 ? kPi / 2.0 : delta;
}

namespace {

struct BranchWalker {
    const Medium& m;
    int l;
    double a;
    std::vector<PhaseShiftSample>* inserted;  // null when only grid values are wanted

    // Unwrapped value at k1 given the unwrapped value d0 at k0 and the
    // principal value pv1 at k1.
    double advance(double k0, double d0, double k1, double pv1, int depth) const
    {
        const double shift = std::round((d0 - pv1) / kPi) * kPi;
        const double candidate = pv1 + shift;
        if (std::abs(candidate - d0) <= kMaxBranchStep) return candidate;
        if (depth >= kMaxRefineDepth) {
            fail(ErrorCode::resolution, "scattering: cannot resolve phase-shift branch on [" + std::to_string(k0) +
                                            ", " + std::to_string(k1) + "] " + describe(m, k0));
        }
        const double km = 0.5 * (k0 + k1);
        const double dm = advance(k0, d0, km, phase_shift(m, l, km, a), depth + 1);
        if (inserted) inserted->push_back({km, dm});
        return advance(km, dm, k1, pv1, depth + 1);
    }
};

std::vector<double> principal_values(const Medium& m, int l, double a, std::span<const double> grid)
{
    std::vector<double> pv(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { pv[i] = phase_shift(m, l, grid[i], a); });
    return pv;
}

void check_grid(std::span<const double> grid)
{
    if (grid.empty()) fail(ErrorCode::invalid_argument, "scattering: empty wavevector grid");
    if (!(grid[0] > 0.0)) fail(ErrorCode::domain, "scattering: wavevector grid must start above 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            fail(ErrorCode::invalid_argument, "scattering: wavevector grid must be strictly increasing");
        }
    }
}

// Wavevector where delta is pinned to the zero branch.
double anchor_wavevector(double a) { return 1e-4 / a; }

// Largest k-step the walker takes between evaluations. A step of the wrapped
// value can look small after a whole turn, so long gaps are walked in pieces
// short against the interior oscillation scale.
double max_walk_step(const Medium& m, double a)
{
    double n = 1.0;
    if (const auto* d = std::get_if<Dielectric>(&m.variant())) n = std::sqrt(std::max(1.0, d->eps));
    return kPi / (32.0 * a * n);
}

std::vector<double> walk(const Medium& m, int l, double a, std::span<const double> grid,
                         std::vector<PhaseShiftSample>* inserted)
{
    check_grid(grid);
    const std::vector<double> pv = principal_values(m, l, a, grid);
    std::vector<double> out(grid.size());

    double k_prev = anchor_wavevector(a);
    double d_prev = 0.0;
    if (grid[0] > k_prev) {
        d_prev = phase_shift(m, l, k_prev, a);
    } else {
        k_prev = grid[0];
        d_prev = pv[0];
    }
    const double h = max_walk_step(m, a);
    std::vector<PhaseShiftSample> pieces_seen;
    std::vector<PhaseShiftSample> refined;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] == k_prev) {
            out[i] = d_prev;
            continue;
        }
        const double d_start = d_prev;
        const int pieces = static_cast<int>(std::ceil((grid[i] - k_prev) / h));
        const double k_start = k_prev;
        pieces_seen.clear();
        refined.clear();
        for (int j = 1; j < pieces; ++j) {
            const double k = k_start + (grid[i] - k_start) * j / pieces;
            const BranchWalker silent{m, l, a, nullptr};
            d_prev = silent.advance(k_prev, d_prev, k, phase_shift(m, l, k, a), 0);
            k_prev = k;
            pieces_seen.push_back({k, d_prev});
        }
        const BranchWalker walker{m, l, a, inserted ? &refined : nullptr};
        out[i] = walker.advance(k_prev, d_prev, grid[i], pv[i], 0);
        if (inserted && (!refined.empty() || std::abs(out[i] - d_start) > kMaxBranchStep)) {
            inserted->insert(inserted->end(), pieces_seen.begin(), pieces_seen.end());
            inserted->insert(inserted->end(), refined.begin(), refined.end());
        }
        k_prev = grid[i];
        d_prev = out[i];
    }
    return out;
}

}  // namespace

std::vector<double> unwrapped_phase_shift(const Medium& m, int l, double a, std::span<const double> k_grid)
{
    return walk(m, l, a, k_grid, nullptr);
}

PhaseShiftCurve phase_shift_curve(const Medium& m, int l, double a, std::span<const double> k_grid)
{
    std::vector<PhaseShiftSample> inserted;
    const std::vector<double> values = walk(m, l, a, k_grid, &inserted);

    PhaseShiftCurve curve{l, m, a, {}};
    curve.samples.reserve(values.size() + inserted.size());
    std::size_t j = 0;
    // Inserted points arrive in increasing k order, interleaved with the grid.
    for (std::size_t i = 0; i < values.size(); ++i) {
        while (j < inserted.size() && inserted[j].k < k_grid[i]) curve.samples.push_back(inserted[j++]);
        curve.samples.push_back({k_grid[i], values[i]});
    }
    return curve;
}

double delta_oracle(const Medium& m, int l, double a, double R, int s)
{
    if (l != 1) fail(ErrorCode::unsupported_order, "scattering: delta_oracle supports l = 1 only");
    if (s < 1) fail(ErrorCode::invalid_argument, "scattering: delta_oracle mode index must be >= 1");
    const CavityGeometry g{a, R, l};
    g.validate();

    const double q = empty_cavity_wavevectors(R, s).back();
    const double k = perturbed_wavevectors_exact(g, m, s).back();
    const double delta = (k - q) * R;
    const double turns = std::round(std::abs(delta) / kPi);
    if (turns >= 1.0 && std::abs(std::abs(delta) - turns * kPi) < 0.05) {
        fail(ErrorCode::pairing_ambiguity, "scattering: mode " + std::to_string(s) +
                                               " pairing is ambiguous; shift lies near a multiple of pi on [" +
                                               std::to_string(std::min(q, k)) + ", " +
                                               std::to_string(std::max(q, k)) + "] " + describe(m, q));
    }
    return delta;
}

}  // namespace catkit
