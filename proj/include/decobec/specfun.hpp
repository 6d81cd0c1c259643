// specfun.hpp — sine integral and adaptive quadrature primitives
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace decobec {

// Result of a quadrature call.  `diverged` is only ever set by
// integrate_to_cutoff, where the value is then a lower bound still growing
// with the cutoff.
struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool diverged = false;
};

struct QuadratureOptions {
    double tol = 1e-10;
    int max_depth = 48;                    // bisection depth per initial panel
    double max_initial_panel_width = 0.0;  // 0 = single initial panel
};

// Si(z) = ∫_0^z sin(x)/x dx.  Relative error < 1e-12 for |z| <= 1e4.
// Odd in z; throws InvalidArgumentError on non-finite input.
double sine_integral(double z);

// Adaptive Gauss–Kronrod 7–15 bisection on [a, b].  The result satisfies
// |value − true| <= max(tol, tol·|value|) for smooth kernels and is
// deterministic for identical inputs.  Throws AccuracyError (carrying the
// best estimate) when the depth limit is hit before convergence.
QuadratureResult integrate_adaptive(const std::function<double(double)>& kernel,
                                    double a, double b,
                                    const QuadratureOptions& options);
QuadratureResult integrate_adaptive(const std::function<double(double)>& kernel,
                                    double a, double b, double tol);

// Evaluates partial integrals on [a, c_1], [a, c_2], … for strictly
// ascending cutoffs and flags divergence when increments keep growing
// (each increment > 0.5× the previous one across at least three cutoffs).
// The returned value is the integral up to the last cutoff; the per-cutoff
// partials are appended to `partials` when provided.
QuadratureResult integrate_to_cutoff(const std::function<double(double)>& kernel,
                                     double a, const std::vector<double>& cutoffs,
                                     const QuadratureOptions& options,
                                     std::vector<double>* partials = nullptr);

// Deterministic pairwise (cascade) summation; used wherever reproducible
// floating-point reductions are required.
double pairwise_sum(const std::vector<double>& terms);

} // namespace decobec
