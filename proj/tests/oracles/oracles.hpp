#pragma once

// Independent numerical oracles used only by tests. Everything here goes
// through the defining integrals (adaptive Simpson + std Bessel), never
// through the library's series implementations, so agreement is meaningful.

#include <cmath>
#include <functional>

namespace oracles {

// Adaptive Simpson with Richardson correction.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, int max_depth = 48);

// exp(-z) I0(z), stable for large z (asymptotic expansion past the point
// where cyl_bessel_i would overflow).
double bessel_i0_scaled(double z);

// Q1(a, b) from its defining integral over the Rician density tail.
double marcum_q1(double a, double b);

// Integral over [0, S] of sum_{i<=m} e^(-A l) (A l)^i / i!  (the tail-sum
// integrand whose closed form the Phi series provides).
double phi(int m, double a, double s);

// Integral over [0, S] of sum_{i<=m} sum_{j<=n} e^(-(A1+A2) l) (A1 l)^i (A2 l)^j / (i! j!).
double psi(int m, int n, double a1, double a2, double s);

}  // namespace oracles
