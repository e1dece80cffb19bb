#include "catkit/gaussian.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "catkit/error.hpp"

namespace catkit {
namespace {

void check_inputs(std::span<const double> q, std::span<const double> k, const Eigen::MatrixXd& D)
{
    const auto n = static_cast<Eigen::Index>(q.size());
    if (k.size() != q.size() || D.rows() != n || D.cols() != n) {
        fail(ErrorCode::invalid_argument, "gaussian: q, k and D must share N, got " + std::to_string(q.size()) +
                                              ", " + std::to_string(k.size()) + ", " + std::to_string(D.rows()) +
                                              "x" + std::to_string(D.cols()));
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!(q[i] > 0.0) || !(k[i] > 0.0) || !std::isfinite(q[i]) || !std::isfinite(k[i])) {
            fail(ErrorCode::domain, "gaussian: oscillator frequencies must be positive and finite");
        }
    }
    if (!D.allFinite()) fail(ErrorCode::invalid_argument, "gaussian: D has non-finite entries");
}

// Integral of exp(-x^T A x) over R^n (n <= 3) by the trapezoid rule on a box
// sized from the eigenvalues of A. The integrand is evaluated by the caller.
template <class Integrand>
double gaussian_box_integral(const Eigen::MatrixXd& A, double step_factor, Integrand&& f)
{
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    const double lambda_max = eig.eigenvalues().maxCoeff();
    if (!(lambda_min > 0.0)) fail(ErrorCode::degenerate, "gaussian: oracle quadratic form is not positive definite");
    const double sigma_max = 1.0 / std::sqrt(2.0 * lambda_min);
    const double sigma_min = 1.0 / std::sqrt(2.0 * lambda_max);
    const double half_width = 9.0 * sigma_max;
    const double h = step_factor * sigma_min;
    const int m = static_cast<int>(std::ceil(half_width / h));
    if (m > 400) fail(ErrorCode::quadrature, "gaussian: oracle grid too large; quadratic form is ill-conditioned");

    const auto n = static_cast<int>(A.rows());
    const int side = 2 * m + 1;
    long total = 1;
    for (int d = 0; d < n; ++d) total *= side;

    Eigen::VectorXd x(n);
    double sum = 0.0;
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        for (int d = 0; d < n; ++d) {
            x(d) = (static_cast<int>(rest % side) - m) * h;
            rest /= side;
        }
        sum += f(x);
    }
    return sum * std::pow(h, n);
}

}  // namespace

LogDet log_abs_det(const Eigen::MatrixXd& M)
{
    if (M.rows() != M.cols()) fail(ErrorCode::invalid_argument, "gaussian: log_abs_det needs a square matrix");
    if (!M.allFinite()) fail(ErrorCode::invalid_argument, "gaussian: log_abs_det needs finite entries");
    if (M.rows() == 0) return {0.0, 1};

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    const Eigen::MatrixXd& f = lu.matrixLU();
    LogDet out{0.0, static_cast<int>(lu.permutationP().determinant())};
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        const double pivot = f(i, i);
        if (pivot == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        if (pivot < 0.0) out.sign = -out.sign;
        out.log_abs += std::log(std::abs(pivot));
    }
    return out;
}

OverlapResult partial_overlap(std::span<const double> q, std::span<const double> k, const Eigen::MatrixXd& D)
{
    check_inputs(q, k, D);
    const auto n = static_cast<Eigen::Index>(q.size());
    OverlapResult out;
    out.N = static_cast<int>(n);
    if (n == 0) return out;

    const Eigen::Map<const Eigen::VectorXd> qv(q.data(), n);
    const Eigen::Map<const Eigen::VectorXd> kv(k.data(), n);

    const LogDet det_D = log_abs_det(D);
    out.log_abs_det_D = det_D.log_abs;
    out.sign_det = det_D.sign;

    Eigen::MatrixXd M = D.transpose() * qv.asDiagonal() * D;
    M.diagonal() += kv;
    const Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) {
        fail(ErrorCode::degenerate, "gaussian: diag(k) + C is not positive definite (N = " + std::to_string(n) +
                                        "); check the spectrum/overlap pairing");
    }
    const double log_det_M = 2.0 * llt.matrixLLT().diagonal().array().log().sum();

    out.log_S = 0.5 * static_cast<double>(n) * std::numbers::ln2 +
                0.25 * (qv.array().log().sum() + kv.array().log().sum()) + 0.5 * out.log_abs_det_D - 0.5 * log_det_M;
    return out;
}

OverlapResult partial_overlap_S(const ModeSpectrum& spectrum, const OverlapMatrix& D)
{
    if (static_cast<Eigen::Index>(spectrum.size()) != D.D.rows()) {
        fail(ErrorCode::invalid_argument, "gaussian: spectrum and overlap matrix sizes differ");
    }
    return partial_overlap(spectrum.q, spectrum.k, D.D);
}

double overlap_quadrature_oracle(std::span<const double> q, std::span<const double> k, const Eigen::MatrixXd& D)
{
    check_inputs(q, k, D);
    const auto n = static_cast<Eigen::Index>(q.size());
    if (n == 0) return 1.0;
    if (n > 3) fail(ErrorCode::invalid_argument, "gaussian: quadrature oracle supports N <= 3");

    const Eigen::Map<const Eigen::VectorXd> Omega(q.data(), n);
    const Eigen::Map<const Eigen::VectorXd> omega(k.data(), n);

    // Quadratic forms in Q of the three exponents, used only to size the grids.
    const Eigen::MatrixXd DtOD = D.transpose() * Omega.asDiagonal() * D;
    const Eigen::MatrixXd W = omega.asDiagonal();
    const Eigen::MatrixXd mixed = 0.5 * (DtOD + W);

    const auto U_energy = [&](const Eigen::VectorXd& Q) {
        const Eigen::VectorXd U = D * Q;
        return (Omega.array() * U.array().square()).sum();
    };
    const auto Q_energy = [&](const Eigen::VectorXd& Q) { return (omega.array() * Q.array().square()).sum(); };

    const auto evaluate = [&](double step) {
        const double num = gaussian_box_integral(
            mixed, step, [&](const Eigen::VectorXd& Q) { return std::exp(-0.5 * (U_energy(Q) + Q_energy(Q))); });
        const double den_U =
            gaussian_box_integral(DtOD, step, [&](const Eigen::VectorXd& Q) { return std::exp(-U_energy(Q)); });
        const double den_Q =
            gaussian_box_integral(W, step, [&](const Eigen::VectorXd& Q) { return std::exp(-Q_energy(Q)); });
        return num / std::sqrt(den_U * den_Q);
    };

    const double fine = evaluate(0.6);
    const double coarse = evaluate(0.9);
    if (std::abs(fine - coarse) > 1e-9 * std::abs(fine)) {
        fail(ErrorCode::quadrature, "gaussian: oracle quadrature not converged; estimate " + std::to_string(fine) +
                                        ", coarse " + std::to_string(coarse));
    }
    return fine;
}

}  // namespace catkit
