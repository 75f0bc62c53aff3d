#include "sram/rootfind.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace sram {

BrentResult brent(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0.0, 0, true};
    if (fb == 0.0) return {b, 0.0, 0, true};
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent: root not bracketed");

    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa;   // previous iterate
    double d = b - a;        // step taken last iteration
    double e = d;            // step before that
    BrentResult r;
    for (int it = 0; it < max_iter; ++it) {
        r.iterations = it + 1;
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b)
                     + 0.5 * xtol;
        double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) {
            r.x = b;
            r.fx = fb;
            r.converged = true;
            return r;
        }
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                double qa = fa / fc, rb = fb / fc;
                p = s * (2.0 * m * qa * (qa - rb) - (b - a) * (rb - 1.0));
                q = (qa - 1.0) * (rb - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    r.x = b;
    r.fx = fb;
    r.converged = false;
    return r;
}

}
