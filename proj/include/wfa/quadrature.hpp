#pragma once

#include <functional>
#include <vector>

namespace wfa::quad {

// Default absolute tolerance used by the distribution code. Overridable at
// process level (the CLI maps WFA_QUAD_TOL onto this).
double default_tolerance();
void set_default_tolerance(double tol);

struct Panel {
    double a, b;
    double integral;
    double error;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t panels = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [a,b] with absolute tolerance budget
// `abs_tol`, allocated across subintervals in proportion to width. Throws
// NumericError when the panel budget is exhausted. When `out` is non-null,
// the accepted panels are appended in ascending order of `a`.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, std::vector<Panel>* out = nullptr);

// Single non-adaptive 15-point Gauss-Kronrod rule on [a,b].
Result gk15(const std::function<double(double)>& f, double a, double b);

}  // namespace wfa::quad
