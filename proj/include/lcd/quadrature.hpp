#pragma once

#include <functional>
#include <vector>

namespace lcd {

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int min_depth = 3;   // forced bisection levels before the error test may stop
    int max_depth = 60;
    };

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Adaptive Simpson on [a,b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {});

// Adaptive Simpson cell-by-cell over a sorted breakpoint grid; the per-cell
// absolute budget is abs_tol * cell_width / total_width.
QuadResult integrate_cells(const std::function<double(double)>& f,
                           const std::vector<double>& grid,
                           const QuadOptions& opts = {});

// Stable helpers for integrals of exp over a segment where the exponent is
// linear.  En(h) = int_0^1 t^n e^{h t} dt, n = 0,1,2; series for small |h|.
double exp_moment0(double h);
double exp_moment1(double h);
double exp_moment2(double h);

// Partial derivatives of J(a,b) = int_0^1 exp((1-t)a + t b) dt used by the
// MLE objective: J = e^a * exp_moment0(b-a), dJ/da = e^a * J10(b-a), etc.
double j10(double h);  // int (1-t) e^{ht}
double j11(double h);  // int t(1-t) e^{ht}
double j20(double h);  // int (1-t)^2 e^{ht}

}  // namespace lcd
