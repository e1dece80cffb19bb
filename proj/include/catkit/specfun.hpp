#pragma once

// Spherical Bessel, modified spherical Bessel and Riccati-Bessel functions of
// integer order for real positive arguments.

namespace catkit {

inline constexpr int kMaxBesselOrder = 50;

struct BesselPair {
    double j = 0.0;   ///< j_l(x)
    double jp = 0.0;  ///< j_l'(x)
    double y = 0.0;   ///< y_l(x)
    double yp = 0.0;  ///< y_l'(x)
};

struct ValueDeriv {
    double value = 0.0;
    double derivative = 0.0;
};

/// Riccati-Bessel functions S = x j_l(x), C = x y_l(x) and their x-derivatives.
struct Riccati {
    double S = 0.0;
    double Sp = 0.0;
    double C = 0.0;
    double Cp = 0.0;
};

/// j_l, y_l and derivatives at x > 0, 0 <= l <= 50.
///
/// l = 0, 1 use closed forms (power series below x = 1); higher orders use
/// upward recurrence when x > l + 1 and Miller's downward recurrence otherwise.
/// Derivatives come from f_l' = (l/x) f_l - f_{l+1}. y_l saturates to -inf
/// when it leaves the double range near the origin.
BesselPair sph_bessel(int l, double x);

/// Modified spherical Bessel i_l(x) = i^{-l} j_l(ix) and its derivative.
/// Throws ErrorCode::overflow when e^x is not representable (x > 700);
/// mod_sph_bessel_i_scaled covers that range.
ValueDeriv mod_sph_bessel_i(int l, double x);

/// e^{-x} i_l(x) and e^{-x} i_l'(x); finite for every x > 0.
ValueDeriv mod_sph_bessel_i_scaled(int l, double x);

Riccati riccati(int l, double x);

}  // namespace catkit
