// specfun.cpp — sine integral (series + continued fraction) and
// Gauss–Kronrod 7–15 adaptive quadrature
#include "decobec/specfun.hpp"
#include "decobec/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace decobec {

namespace {

// E1(z) by the modified Lentz continued fraction
//   E1(z) = e^{-z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...)))))
// Used on the imaginary axis z = ix, x > 4, where it converges in < 60
// iterations to machine precision.
std::complex<double> exp_integral_e1_cf(std::complex<double> z) {
    constexpr double tiny = 1e-300;
    std::complex<double> f = z, C = z, D = 0.0;
    if (std::abs(f) < tiny) f = tiny;
    C = f;
    for (int n = 1; n <= 400; ++n) {
        std::complex<double> delta = 1.0;
        const double a = static_cast<double>(n);
        const std::complex<double> bs[2] = {1.0, z};
        for (const auto& b : bs) {
            D = b + a * D;
            if (std::abs(D) < tiny) D = tiny;
            C = b + a / C;
            if (std::abs(C) < tiny) C = tiny;
            D = 1.0 / D;
            delta = C * D;
            f *= delta;
        }
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-z) / f;
}

double sine_integral_series(double z) {
    // sum_k (-1)^k z^(2k+1) / ((2k+1)(2k+1)!)
    double term = z, sum = z;
    const double z2 = z * z;
    for (int k = 0; k < 60; ++k) {
        const double kk = 2.0 * k;
        term *= -z2 * (kk + 1.0) / ((kk + 3.0) * (kk + 3.0) * (kk + 2.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Gauss–Kronrod 7–15 nodes/weights on [-1, 1] (positive half; symmetric).
constexpr std::array<double, 8> gk_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr std::array<double, 8> gk_weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> gauss_weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEstimate {
    double kronrod;
    double error;  // |kronrod - gauss|
};

PanelEstimate gauss_kronrod_panel(const std::function<double(double)>& kernel,
                                  double a, double b, std::int64_t& evaluations) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = gk_weights[7] * kernel(mid);
    double gauss = gauss_weights[3] * kernel(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        const double fsum = kernel(mid - dx) + kernel(mid + dx);
        kron += gk_weights[i] * fsum;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * fsum;
    }
    evaluations += 15;
    return {kron * half, std::abs((kron - gauss) * half)};
}

// Recursively bisect one panel until its error estimate fits its share of
// the absolute budget.  Returns the refined integral; accumulates the final
// error estimate.  Throws AccuracyError when max_depth is exhausted while
// still over budget (carrying the unrefined best estimate).
double refine_panel(const std::function<double(double)>& kernel, double a, double b,
                    double budget, int depth, int max_depth,
                    double& error_acc, std::int64_t& evaluations) {
    const PanelEstimate est = gauss_kronrod_panel(kernel, a, b, evaluations);
    if (est.error <= budget || b - a <= std::abs(a) * 1e-15) {
        error_acc += est.error;
        return est.kronrod;
    }
    if (depth >= max_depth) {
        throw AccuracyError("integrate_adaptive: no convergence on [" +
                                std::to_string(a) + ", " + std::to_string(b) +
                                "] after depth " + std::to_string(max_depth),
                            est.kronrod);
    }
    const double mid = 0.5 * (a + b);
    const double left = refine_panel(kernel, a, mid, 0.5 * budget, depth + 1,
                                     max_depth, error_acc, evaluations);
    const double right = refine_panel(kernel, mid, b, 0.5 * budget, depth + 1,
                                      max_depth, error_acc, evaluations);
    return left + right;
}

} // namespace

double sine_integral(double z) {
    if (!std::isfinite(z))
        throw InvalidArgumentError("sine_integral: non-finite argument");
    const double x = std::abs(z);
    double si;
    if (x <= 4.0) {
        si = sine_integral_series(x);
    } else {
        const std::complex<double> e1 = exp_integral_e1_cf({0.0, x});
        si = std::numbers::pi / 2 + e1.imag();
    }
    return z < 0 ? -si : si;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& kernel,
                                    double a, double b,
                                    const QuadratureOptions& options) {
    if (!(a < b)) throw InvalidArgumentError("integrate_adaptive: requires a < b");
    if (!(options.tol > 0)) throw InvalidArgumentError("integrate_adaptive: tol must be > 0");

    const double width = b - a;
    std::int64_t panels = 1;
    if (options.max_initial_panel_width > 0)
        panels = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::ceil(width / options.max_initial_panel_width)));
    const double panel_width = width / static_cast<double>(panels);

    QuadratureResult result;

    // First pass: coarse estimates give the scale for the relative target.
    double coarse = 0.0;
    if (panels > 1) {
        for (std::int64_t i = 0; i < panels; ++i) {
            const double pa = a + panel_width * static_cast<double>(i);
            const double pb = (i + 1 == panels) ? b : pa + panel_width;
            coarse += gauss_kronrod_panel(kernel, pa, pb, result.evaluations).kronrod;
        }
    } else {
        coarse = gauss_kronrod_panel(kernel, a, b, result.evaluations).kronrod;
    }
    const double abs_tol = std::max(options.tol, options.tol * std::abs(coarse));

    double total = 0.0, error_acc = 0.0;
    for (std::int64_t i = 0; i < panels; ++i) {
        const double pa = a + panel_width * static_cast<double>(i);
        const double pb = (i + 1 == panels) ? b : pa + panel_width;
        const double budget = abs_tol * (pb - pa) / width;
        total += refine_panel(kernel, pa, pb, budget, 0, options.max_depth,
                              error_acc, result.evaluations);
    }
    result.value = total;
    result.abs_error_estimate = error_acc;
    return result;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& kernel,
                                    double a, double b, double tol) {
    QuadratureOptions options;
    options.tol = tol;
    return integrate_adaptive(kernel, a, b, options);
}

QuadratureResult integrate_to_cutoff(const std::function<double(double)>& kernel,
                                     double a, const std::vector<double>& cutoffs,
                                     const QuadratureOptions& options,
                                     std::vector<double>* partials) {
    if (cutoffs.empty())
        throw InvalidArgumentError("integrate_to_cutoff: needs at least one cutoff");
    double previous = a;
    for (double c : cutoffs) {
        if (!(c > previous))
            throw InvalidArgumentError("integrate_to_cutoff: cutoffs must be ascending and > a");
        previous = c;
    }

    QuadratureResult result;
    std::vector<double> increments;
    double lower = a, running = 0.0;
    for (double c : cutoffs) {
        const QuadratureResult piece = integrate_adaptive(kernel, lower, c, options);
        running += piece.value;
        result.abs_error_estimate += piece.abs_error_estimate;
        result.evaluations += piece.evaluations;
        increments.push_back(piece.value);
        if (partials) partials->push_back(running);
        lower = c;
    }
    result.value = running;

    if (cutoffs.size() >= 3) {
        bool growing = true;
        for (std::size_t i = 1; i < increments.size(); ++i)
            growing = growing && increments[i] > 0.5 * increments[i - 1];
        result.diverged = growing;
    }
    return result;
}

double pairwise_sum(const std::vector<double>& terms) {
    // bottom-up cascade; order independent of chunking choices elsewhere
    if (terms.empty()) return 0.0;
    std::vector<double> level = terms;
    while (level.size() > 1) {
        std::vector<double> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(level[i] + level[i + 1]);
        if (level.size() % 2 == 1) next.push_back(level.back());
        level.swap(next);
    }
    return level.front();
}

} // namespace decobec
