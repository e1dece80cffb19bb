#include "catkit/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "catkit/error.hpp"

namespace catkit {
namespace {

// Orders 0..l+1 are needed for the derivative identities.
using OrderTable = std::array<double, kMaxBesselOrder + 2>;

constexpr double kRescaleAbove = 1e250;

void check_args(int l, double x, const char* who)
{
    if (l < 0 || l > kMaxBesselOrder) {
        fail(ErrorCode::unsupported_order,
             std::string("specfun: ") + who + " supports 0 <= l <= 50, got l = " + std::to_string(l));
    }
    if (!(x > 0.0) || !std::isfinite(x)) {
        fail(ErrorCode::domain,
             std::string("specfun: ") + who + " requires a finite x > 0, got x = " + std::to_string(x));
    }
}

// x^l / (2l+1)!! * sum_k (sign x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1)); sign = -1 for j_l, +1 for i_l.
double power_series(int l, double x, double sign)
{
    double prefactor = 1.0;
    for (int m = 1; m <= l; ++m) prefactor *= x / (2.0 * m + 1.0);
    const double z = sign * 0.5 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= z / (k * (2.0 * l + 2.0 * k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return prefactor * sum;
}

// Miller's algorithm for the solution that is minimal as the order grows.
// step(n, t_n, t_{n+1}) returns t_{n-1}. The result is normalised against
// whichever of the supplied order-0/order-1 values is larger in magnitude.
template <class Step>
void miller(int top, double x, double ref0, double ref1, Step step, OrderTable& out)
{
    const int start = top + 20 + static_cast<int>(std::sqrt(80.0 * std::max(x, static_cast<double>(top))));
    double next = 0.0;
    double cur = 1e-30;
    for (int n = start; n > 0; --n) {
        const double prev = step(n, cur, next);
        next = cur;
        cur = prev;
        if (n - 1 <= top) out[n - 1] = cur;
        if (n <= top) out[n] = next;
        if (std::abs(cur) > kRescaleAbove) {
            cur /= kRescaleAbove;
            next /= kRescaleAbove;
            for (int m = n - 1; m <= top; ++m) out[m] /= kRescaleAbove;
        }
    }
    const double scale = (std::abs(ref0) >= std::abs(ref1)) ? ref0 / out[0] : ref1 / out[1];
    for (int m = 0; m <= top; ++m) out[m] *= scale;
}

void j_orders(int top, double x, OrderTable& j)
{
    if (x < 1.0) {
        for (int m = 0; m <= top; ++m) j[m] = power_series(m, x, -1.0);
        return;
    }
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double j0 = s / x;
    const double j1 = (s / x - c) / x;
    if (x > top) {
        j[0] = j0;
        if (top >= 1) j[1] = j1;
        for (int m = 1; m < top; ++m) j[m + 1] = (2.0 * m + 1.0) / x * j[m] - j[m - 1];
        return;
    }
    miller(top, x, j0, j1, [x](int n, double tn, double tn1) { return (2.0 * n + 1.0) / x * tn - tn1; }, j);
}

void y_orders(int top, double x, OrderTable& y)
{
    const double s = std::sin(x);
    const double c = std::cos(x);
    y[0] = -c / x;
    y[1] = -(c + x * s) / (x * x);
    const double ninf = -std::numeric_limits<double>::infinity();
    for (int m = 1; m < top; ++m) {
        if (!std::isfinite(y[m])) {
            y[m + 1] = ninf;
            continue;
        }
        const double v = (2.0 * m + 1.0) / x * y[m] - y[m - 1];
        y[m + 1] = std::isfinite(v) ? v : ninf;
    }
}

// e^{-x} i_m(x) for m = 0..top.
void i_orders_scaled(int top, double x, OrderTable& i)
{
    if (x < 1.0) {
        const double damp = std::exp(-x);
        for (int m = 0; m <= top; ++m) i[m] = power_series(m, x, 1.0) * damp;
        return;
    }
    const double e2 = std::exp(-2.0 * x);
    const double i0 = (1.0 - e2) / (2.0 * x);
    const double i1 = (x * (1.0 + e2) - (1.0 - e2)) / (2.0 * x * x);
    if (top <= 1) {
        i[0] = i0;
        i[1] = i1;
        return;
    }
    miller(top, x, i0, i1, [x](int n, double tn, double tn1) { return tn1 + (2.0 * n + 1.0) / x * tn; }, i);
}

}  // namespace

BesselPair sph_bessel(int l, double x)
{
    check_args(l, x, "sph_bessel");
    OrderTable j{};
    OrderTable y{};
    j_orders(l + 1, x, j);
    y_orders(l + 1, x, y);

    BesselPair out;
    out.j = j[l];
    out.jp = l / x * j[l] - j[l + 1];
    out.y = y[l];
    if (std::isfinite(y[l + 1])) {
        out.yp = l / x * y[l] - y[l + 1];
    } else {
        out.yp = std::numeric_limits<double>::infinity();
    }
    return out;
}

ValueDeriv mod_sph_bessel_i_scaled(int l, double x)
{
    check_args(l, x, "mod_sph_bessel_i");
    OrderTable i{};
    if (l <= 1 && x >= 1.0) {
        // Closed forms; i_l' = i_{l-1} - (l+1)/x i_l with i_{-1} = i_1 for l = 0.
        i_orders_scaled(1, x, i);
        const double lower = (l == 0) ? i[1] : i[0];
        const double deriv = (l == 0) ? lower : lower - 2.0 / x * i[1];
        return {i[l], deriv};
    }
    i_orders_scaled(l + 1, x, i);
    return {i[l], i[l + 1] + l / x * i[l]};
}

ValueDeriv mod_sph_bessel_i(int l, double x)
{
    check_args(l, x, "mod_sph_bessel_i");
    if (x > 700.0) {
        fail(ErrorCode::overflow,
             "specfun: mod_sph_bessel_i overflows for x = " + std::to_string(x) + "; use the scaled form");
    }
    const ValueDeriv scaled = mod_sph_bessel_i_scaled(l, x);
    const double grow = std::exp(x);
    return {scaled.value * grow, scaled.derivative * grow};
}

Riccati riccati(int l, double x)
{
    const BesselPair b = sph_bessel(l, x);
    return {x * b.j, b.j + x * b.jp, x * b.y, b.y + x * b.yp};
}

}  // namespace catkit
