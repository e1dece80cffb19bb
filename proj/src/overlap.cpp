#include "catkit/overlap.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "catkit/error.hpp"
#include "catkit/parallel.hpp"
#include "catkit/specfun.hpp"

namespace catkit {
namespace {

constexpr double kPi = std::numbers::pi;

// 8-point Gauss-Legendre rule on [-1, 1], symmetric half.
constexpr std::array<double, 4> kGlNode = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                           0.9602898564975363};
constexpr std::array<double, 4> kGlWeight = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                             0.1012285362903763};

struct Rule {
    std::vector<double> r;
    std::vector<double> w;
};

void add_panels(Rule& rule, double lo, double hi, double h_max)
{
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / h_max)));
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        for (std::size_t i = 0; i < kGlNode.size(); ++i) {
            for (const double side : {-1.0, 1.0}) {
                rule.r.push_back(mid + side * 0.5 * h * kGlNode[i]);
                rule.w.push_back(0.5 * h * kGlWeight[i]);
            }
        }
    }
}

// Panels never straddle r = a, where the mode functions have a kink.
Rule make_rule(double a, double R, double h_max)
{
    Rule rule;
    add_panels(rule, 0.0, a, h_max);
    add_panels(rule, a, R, h_max);
    return rule;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// u = r g(r) for the l = 1 TE mode of the loaded cavity at wavevector k.
class PerturbedMode {
public:
    PerturbedMode(const CavityGeometry& g, const Medium& m, double k) : k_(k), a_(g.a), R_(g.R)
    {
        if (!(k > 0.0) || !std::isfinite(k)) {
            fail(ErrorCode::domain, "overlap: mode wavevector must be > 0, got " + std::to_string(k));
        }
        at_R_ = riccati(1, k * R_);
        if (m.is_perfect_conductor()) {
            kind_ = Kind::conductor;
        } else {
            const double n2 = index_squared(m, k);
            if (n2 > 0.0) {
                kind_ = Kind::oscillating;
                wave_ = std::sqrt(n2) * k;
            } else if (n2 < 0.0) {
                kind_ = Kind::evanescent;
                wave_ = std::sqrt(-n2) * k;
            } else {
                kind_ = Kind::edge;
            }
        }
        u_a_ = interior(a_);
        du_a_ = interior_slope_at_a();
        w_a_ = exterior(a_);
        dw_a_ = exterior_slope_at_a();
    }

    [[nodiscard]] double wave() const { return kind_ == Kind::oscillating || kind_ == Kind::evanescent ? wave_ : 0.0; }
    [[nodiscard]] double u_a() const { return u_a_; }
    [[nodiscard]] double du_a() const { return du_a_; }
    [[nodiscard]] double w_a() const { return w_a_; }
    [[nodiscard]] double dw_a() const { return dw_a_; }

    double interior(double r) const
    {
        switch (kind_) {
        case Kind::conductor:
            return 0.0;
        case Kind::oscillating:
            return riccati(1, wave_ * r).S;
        case Kind::evanescent: {
            const double x = wave_ * r;
            return x * mod_sph_bessel_i_scaled(1, x).value * std::exp(x - wave_ * a_);
        }
        case Kind::edge:
            return (r / a_) * (r / a_);
        }
        return 0.0;
    }

    // Vanishes at r = R.
    double exterior(double r) const
    {
        const Riccati f = riccati(1, k_ * r);
        return f.S * at_R_.C - f.C * at_R_.S;
    }

    // Exterior amplitude matching (u, du) at r = a in the least-squares sense;
    // exact on resonance and free of poles, since w and w' never vanish together.
    [[nodiscard]] double matched_amplitude() const
    {
        const double k2 = k_ * k_;
        return (u_a_ * w_a_ + du_a_ * dw_a_ / k2) / (w_a_ * w_a_ + dw_a_ * dw_a_ / k2);
    }

private:
    enum class Kind { conductor, oscillating, evanescent, edge };

    double interior_slope_at_a() const
    {
        switch (kind_) {
        case Kind::conductor:
            return 1.0;
        case Kind::oscillating:
            return wave_ * riccati(1, wave_ * a_).Sp;
        case Kind::evanescent: {
            const double x = wave_ * a_;
            const ValueDeriv i = mod_sph_bessel_i_scaled(1, x);
            return wave_ * (i.value + x * i.derivative);
        }
        case Kind::edge:
            return 2.0 / a_;
        }
        return 0.0;
    }

    double exterior_slope_at_a() const
    {
        const Riccati f = riccati(1, k_ * a_);
        return k_ * (f.Sp * at_R_.C - f.Cp * at_R_.S);
    }

    Kind kind_ = Kind::oscillating;
    double k_;
    double a_;
    double R_;
    double wave_ = 0.0;
    Riccati at_R_;
    double u_a_ = 0.0, du_a_ = 0.0, w_a_ = 0.0, dw_a_ = 0.0;
};

// Samples of a normalized mode on the rule, positive slope at R.
std::vector<double> empty_mode_samples(double q, double R, const Rule& rule)
{
    std::vector<double> u(rule.r.size());
    double norm2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = riccati(1, q * rule.r[i]).S;
        norm2 += rule.w[i] * u[i] * u[i];
    }
    const double scale = sign_of(riccati(1, q * R).Sp) / std::sqrt(norm2);
    for (double& v : u) v *= scale;
    return u;
}

std::vector<double> perturbed_mode_samples(const CavityGeometry& g, const Medium& m, double k, const Rule& rule)
{
    const PerturbedMode mode(g, m, k);
    const double alpha = mode.matched_amplitude();
    std::vector<double> u(rule.r.size());
    double norm2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = rule.r[i] < g.a ? mode.interior(rule.r[i]) : alpha * mode.exterior(rule.r[i]);
        norm2 += rule.w[i] * u[i] * u[i];
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        fail(ErrorCode::quadrature, "overlap: mode at k = " + std::to_string(k) + " has no finite norm");
    }
    // u'(R) = alpha w'(R) = -alpha k, from the Riccati Wronskian S C' - S' C = 1.
    const double scale = -sign_of(alpha) / std::sqrt(norm2);
    for (double& v : u) v *= scale;
    return u;
}

double max_wave(const CavityGeometry& g, const Medium& m, double k, double q)
{
    return std::max({k, q, PerturbedMode(g, m, k).wave()});
}

double overlap_on_rule(const CavityGeometry& g, const Medium& m, double k, double q, const Rule& rule)
{
    const std::vector<double> f = empty_mode_samples(q, g.R, rule);
    const std::vector<double> u = perturbed_mode_samples(g, m, k, rule);
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sum += rule.w[i] * f[i] * u[i];
    return sum;
}

Eigen::MatrixXd asymptotic_matrix(const ModeSpectrum& s)
{
    const double R = s.geometry.R;
    const auto n = static_cast<Eigen::Index>(s.size());
    std::vector<double> q_lattice(s.size()), k_lattice(s.size()), row_sign(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double index = static_cast<double>(i + 1);
        q_lattice[i] = (index + 0.5) * kPi / R;
        k_lattice[i] = q_lattice[i] + (s.k[i] - s.q[i]);
        if (!(k_lattice[i] > 0.0)) {
            fail(ErrorCode::degenerate, "overlap: shifted lattice wavevector is not positive at mode " +
                                            std::to_string(i + 1));
        }
        // -sin((s + 1/2) pi) = (-1)^(s + 1)
        row_sign[i] = (i % 2 == 0) ? 1.0 : -1.0;
    }
    Eigen::MatrixXd D(n, n);
    parallel_for(s.size(), [&](std::size_t row) {
        for (Eigen::Index p = 0; p < n; ++p) {
            const auto col = static_cast<std::size_t>(p);
            // cos vanishes exactly on the lattice, so an unshifted mode overlaps only its partner.
            if (s.k[col] == s.q[col]) {
                D(static_cast<Eigen::Index>(row), p) = row == col ? 1.0 : 0.0;
                continue;
            }
            D(static_cast<Eigen::Index>(row), p) =
                row_sign[row] * mode_overlap_asymptotic(k_lattice[col], q_lattice[row], R);
        }
    });
    return D;
}

Eigen::MatrixXd quadrature_matrix(const ModeSpectrum& s)
{
    const CavityGeometry& g = s.geometry;
    double k_max = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) k_max = std::max(k_max, max_wave(g, s.medium, s.k[i], s.q[i]));
    const Rule rule = make_rule(g.a, g.R, kPi / (4.0 * k_max));

    const auto n = static_cast<Eigen::Index>(s.size());
    const auto nodes = static_cast<Eigen::Index>(rule.r.size());
    Eigen::MatrixXd F(n, nodes), G(n, nodes);
    parallel_for(s.size(), [&](std::size_t i) {
        const std::vector<double> f = empty_mode_samples(s.q[i], g.R, rule);
        const std::vector<double> u = perturbed_mode_samples(g, s.medium, s.k[i], rule);
        const auto row = static_cast<Eigen::Index>(i);
        for (Eigen::Index j = 0; j < nodes; ++j) {
            F(row, j) = f[static_cast<std::size_t>(j)] * rule.w[static_cast<std::size_t>(j)];
            G(row, j) = u[static_cast<std::size_t>(j)];
        }
    });
    return F * G.transpose();
}

}  // namespace

double mode_overlap_asymptotic(double k, double q, double R)
{
    if (!(k > 0.0) || !(q > 0.0) || !(R > 0.0)) {
        fail(ErrorCode::domain, "overlap: asymptotic overlap needs k, q, R > 0");
    }
    const double A = 0.5 * (k + q) * R;
    const double B = 0.5 * (k - q) * R;
    const double sinc = std::abs(B) < 1e-4 ? 1.0 - B * B / 6.0 + B * B * B * B / 120.0 : std::sin(B) / B;
    const double rad = std::sqrt((1.0 - std::sin(2.0 * k * R) / (2.0 * k * R)) *
                                 (1.0 - std::sin(2.0 * q * R) / (2.0 * q * R)));
    return -2.0 * k * std::sin(A) * sinc / ((k + q) * rad);
}

double radial_mode_function(const CavityGeometry& g, const Medium& m, double k, double r)
{
    if (!(r > 0.0) || r > g.R) {
        fail(ErrorCode::domain, "overlap: radial_mode_function needs 0 < r <= R, got r = " + std::to_string(r));
    }
    const PerturbedMode mode(g, m, k);
    if (r <= g.a) return mode.interior(r) / r;

    const double scale = std::hypot(mode.w_a(), mode.dw_a() / k);
    if (m.is_perfect_conductor()) {
        if (std::abs(mode.dw_a()) <= 1e-12 * scale) {
            fail(ErrorCode::pole, "overlap: exterior slope vanishes at r = a for k = " + std::to_string(k));
        }
        return k * mode.exterior(r) / (mode.dw_a() * r);
    }
    if (std::abs(mode.w_a()) <= 1e-12 * scale) {
        fail(ErrorCode::pole, "overlap: exterior solution vanishes at r = a for k = " + std::to_string(k) +
                                  " (medium " + to_string(m) + ")");
    }
    return mode.u_a() * mode.exterior(r) / (mode.w_a() * r);
}

double mode_overlap_quadrature(const CavityGeometry& g, const Medium& m, double k, double q)
{
    g.validate();
    if (!(q > 0.0)) fail(ErrorCode::domain, "overlap: empty-mode wavevector must be > 0");
    const double h = kPi / (4.0 * max_wave(g, m, k, q));
    const double coarse = overlap_on_rule(g, m, k, q, make_rule(g.a, g.R, h));
    const double fine = overlap_on_rule(g, m, k, q, make_rule(g.a, g.R, 0.5 * h));
    if (std::abs(fine - coarse) > 1e-10) {
        fail(ErrorCode::quadrature, "overlap: quadrature not converged for k = " + std::to_string(k) +
                                        ", q = " + std::to_string(q) + "; estimate " + std::to_string(fine) +
                                        " changed by " + std::to_string(std::abs(fine - coarse)));
    }
    return fine;
}

OverlapMatrix build_overlap_matrix(const ModeSpectrum& spectrum, OverlapSource source, int max_quadrature_modes)
{
    validate_spectrum(spectrum);
    spectrum.geometry.validate();
    OverlapMatrix out{spectrum, {}, source};
    if (spectrum.size() == 0) return out;
    if (source == OverlapSource::asymptotic) {
        out.D = asymptotic_matrix(spectrum);
    } else {
        if (static_cast<int>(spectrum.size()) > max_quadrature_modes) {
            fail(ErrorCode::invalid_argument, "overlap: quadrature source is limited to " +
                                                  std::to_string(max_quadrature_modes) + " modes, got " +
                                                  std::to_string(spectrum.size()));
        }
        out.D = quadrature_matrix(spectrum);
    }
    return out;
}

}  // namespace catkit
