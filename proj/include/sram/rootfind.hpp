#pragma once

#include <functional>

namespace sram {

struct BrentResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Brent's method on [a, b]; requires f(a) and f(b) of opposite sign
// (throws std::invalid_argument otherwise). xtol is an absolute tolerance
// on the bracket width.
BrentResult brent(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-15, int max_iter = 200);

}
