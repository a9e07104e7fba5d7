#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace liyau {

// Upsilon(z) = e^z - z - 1, the convex replacement of z^2/2 in the discrete
// calculus. Direct evaluation of expm1(z) - z cancels for tiny z, so a short
// series takes over below 1e-5.
inline double upsilon(double z) {
    double az = std::abs(z);
    if (az < 1e-5) {
        return z * z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
    }
    return std::expm1(z) - z;
}

// Upsilon'(z) = e^z - 1.
inline double upsilon_prime(double z) { return std::expm1(z); }

// Upsilon_alpha(z) = Upsilon(alpha z).
inline double upsilon_alpha(double alpha, double z) { return upsilon(alpha * z); }

// g_alpha(z) = Upsilon(z) - Upsilon(alpha z)/alpha, nonnegative on R with
// g_alpha(z) >= (1-alpha)/2 z^2 for z >= 0.
inline double g_alpha(double alpha, double z) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("g_alpha: alpha must lie in (0,1)");
    return upsilon(z) - upsilon(alpha * z) / alpha;
}

// h_alpha(z) = z - z^alpha/alpha + (1-alpha)/alpha on [0,inf);
// satisfies g_alpha(z) = h_alpha(e^z).
inline double h_alpha(double alpha, double z) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("h_alpha: alpha must lie in (0,1)");
    if (z < 0.0) throw std::domain_error("h_alpha: argument must be >= 0");
    return z - std::pow(z, alpha) / alpha + (1.0 - alpha) / alpha;
}

// A C^1 scalar function with its analytic derivative and an open domain.
struct ScalarField {
    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double y) const { return y > lo && y < hi; }
};

inline ScalarField sf_half_square() {
    return {"half_square", [](double y) { return 0.5 * y * y; }, [](double y) { return y; }};
}

inline ScalarField sf_sqrt() {
    ScalarField f{"sqrt", [](double y) { return std::sqrt(y); },
                  [](double y) { return 0.5 / std::sqrt(y); }};
    f.lo = 0.0;
    return f;
}

inline ScalarField sf_neg_log() {
    ScalarField f{"neg_log", [](double y) { return -std::log(y); },
                  [](double y) { return -1.0 / y; }};
    f.lo = 0.0;
    return f;
}

inline ScalarField sf_upsilon() {
    return {"upsilon", [](double y) { return upsilon(y); },
            [](double y) { return upsilon_prime(y); }};
}

inline ScalarField sf_upsilon_prime() {
    return {"upsilon_prime", [](double y) { return upsilon_prime(y); },
            [](double y) { return std::exp(y); }};
}

inline ScalarField sf_upsilon_alpha(double alpha) {
    return {"upsilon_alpha(" + std::to_string(alpha) + ")",
            [alpha](double y) { return upsilon(alpha * y); },
            [alpha](double y) { return alpha * upsilon_prime(alpha * y); }};
}

// Checks deriv against a central difference of eval on sampled interior
// points; returns the worst relative mismatch.
double scalar_field_derivative_mismatch(const ScalarField& f, double a, double b, int samples = 64);

}  // namespace liyau
