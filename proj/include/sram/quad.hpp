#pragma once

#include <functional>

namespace sram {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod 15(7) quadrature on [a, b].
QuadResult integrate_gk15(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-13,
                          double rel_tol = 1e-12, int max_depth = 40);

// Dawson integral D(x) = exp(-x^2) * Integral_0^x exp(t^2) dt.
double dawson(double x);

}
