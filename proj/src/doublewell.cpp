// doublewell.cpp — tunneling suppression of a two-mode condensate coupled
// to a scattered-light register
#include "decobec/doublewell.hpp"

#include "decobec/errors.hpp"
#include "decobec/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace decobec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// log of the binomial-type magnitude sqrt(n!/((n−m)! m!)) / 2^{n/2}
double log_amplitude_magnitude(int n, int m) {
    return 0.5 * (log_factorial(n) - log_factorial(n - m) - log_factorial(m))
           - 0.5 * static_cast<double>(n) * std::log(2.0);
}

} // namespace

std::complex<double> splitting_amplitude(int n, int m, double delta, double t) {
    if (n < 0 || m < 0)
        throw InvalidArgumentError("splitting_amplitude: negative index");
    if (m > n)
        throw InvalidArgumentError("splitting_amplitude: m exceeds n");
    const double mag = std::exp(log_amplitude_magnitude(n, m));
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double phase = -2.0 * static_cast<double>(m) * delta * t;
    return sign * mag * std::polar(1.0, phase);
}

std::vector<ModeDisplacement> field_displacements(int n, int m, const ModeGrid& grid,
                                                  double t) {
    if (n < 0 || m < 0 || m > n)
        throw InvalidArgumentError("field_displacements: invalid (n, m)");
    std::vector<ModeDisplacement> out;
    out.reserve(grid.modes.size());
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    for (const Mode& mode : grid.modes) {
        const std::complex<double> drive =
            mode.number_coupling * nd + mode.exchange_coupling * (nd - 2.0 * md);
        out.push_back(forced_displacement(drive, mode.omega, t));
    }
    return out;
}

std::complex<double> adjacent_overlap(int n, int m, const ModeGrid& grid, double t) {
    if (m + 1 > n)
        throw InvalidArgumentError("adjacent_overlap: needs m + 1 <= n");
    const std::vector<ModeDisplacement> lo = field_displacements(n, m, grid, t);
    const std::vector<ModeDisplacement> hi = field_displacements(n, m + 1, grid, t);
    // ⟨hi|lo⟩ per mode = exp(−|b_hi|²/2 − |b_lo|²/2 + conj(b_hi)·b_lo),
    // times the kick-phase difference e^{i(γ_lo − γ_hi)}; weights enter as
    // mode multiplicities in the exponent.
    std::vector<double> re_terms;
    std::vector<double> im_terms;
    re_terms.reserve(grid.modes.size());
    im_terms.reserve(grid.modes.size());
    for (std::size_t i = 0; i < grid.modes.size(); ++i) {
        const double w = grid.modes[i].weight;
        const std::complex<double> bl = lo[i].alpha;
        const std::complex<double> bh = hi[i].alpha;
        const std::complex<double> cross = std::conj(bh) * bl;
        re_terms.push_back(w * (cross.real() - 0.5 * (std::norm(bl) + std::norm(bh))));
        im_terms.push_back(w * (cross.imag() + lo[i].gamma - hi[i].gamma));
    }
    const double re = pairwise_sum(re_terms);
    const double im = pairwise_sum(im_terms);
    return std::exp(re) * std::polar(1.0, im);
}

double population_difference_exact(double alpha, const ModeGrid& grid, double delta,
                                   double t, double tail_tol) {
    if (!(alpha >= 0.0))
        throw InvalidArgumentError("population_difference_exact: alpha must be >= 0");
    if (!(tail_tol > 0.0))
        throw InvalidArgumentError("population_difference_exact: tail_tol must be > 0");
    const double mean = alpha * alpha;
    if (mean == 0.0)
        return 0.0;

    // Smallest N with the Poisson tail beyond N below tail_tol.  The state
    // keeps its raw truncated coefficients (no renormalization).
    int n_max = 0;
    {
        double term = std::exp(-mean); // P(n = 0)
        double cum = term;
        while (1.0 - cum > tail_tol) {
            ++n_max;
            term *= mean / static_cast<double>(n_max);
            cum += term;
            if (n_max > 100000)
                throw AccuracyError("population_difference_exact: Poisson tail stall",
                                    0.0);
        }
    }

    // p(t) = 2 Re[ e^{−2iδt} Σ_n w_n Σ_{m=0}^{n−1} (−2^{−n}) C(n,m)(n−m) O_m^{(n)} ]
    // with w_n = e^{−α²} α^{2n}/n!.  The overall minus per term is the
    // product of adjacent alternating signs (−1)^m (−1)^{m+1}.
    std::vector<double> re_terms;
    std::vector<double> im_terms;
    std::complex<double> total{0.0, 0.0};
    for (int n = 1; n <= n_max; ++n) {
        const double log_wn = -mean + n * std::log(mean) - log_factorial(n);
        std::complex<double> inner{0.0, 0.0};
        for (int m = 0; m < n; ++m) {
            const double log_coeff = log_factorial(n) - log_factorial(m)
                                     - log_factorial(n - m)
                                     + std::log(static_cast<double>(n - m))
                                     - n * std::log(2.0);
            const std::complex<double> ov = adjacent_overlap(n, m, grid, t);
            inner += -std::exp(log_coeff) * ov;
        }
        const std::complex<double> contrib = std::exp(log_wn) * inner;
        re_terms.push_back(contrib.real());
        im_terms.push_back(contrib.imag());
    }
    total = {pairwise_sum(re_terms), pairwise_sum(im_terms)};
    const std::complex<double> rotated = std::polar(1.0, -2.0 * delta * t) * total;
    return 2.0 * rotated.real();
}

EnvelopeFit fit_overlap_envelope(const ModeGrid& grid, int n_ref, double t) {
    if (n_ref < 1)
        throw InvalidArgumentError("fit_overlap_envelope: n_ref must be >= 1");
    EnvelopeFit fit;
    std::vector<std::complex<double>> ov(static_cast<std::size_t>(n_ref));
    for (int m = 0; m < n_ref; ++m)
        ov[static_cast<std::size_t>(m)] = adjacent_overlap(n_ref, m, grid, t);

    bool all_tiny = true;
    for (const auto& o : ov)
        if (std::abs(o) >= 1e-300)
            all_tiny = false;
    if (all_tiny) {
        fit.magnitude = 0.0;
        fit.phase_step = 0.0;
        fit.residual = 0.0;
        fit.defined = false;
        return fit;
    }

    // J: geometric mean of the magnitudes.
    double log_sum = 0.0;
    for (const auto& o : ov)
        log_sum += std::log(std::abs(o));
    fit.magnitude = std::exp(log_sum / static_cast<double>(n_ref));

    // S: mean increment of the unwrapped phases.
    if (n_ref >= 2) {
        double prev = std::arg(ov[0]);
        double unwrapped = prev;
        std::vector<double> phases{prev};
        for (int m = 1; m < n_ref; ++m) {
            double cur = std::arg(ov[static_cast<std::size_t>(m)]);
            double d = cur - prev;
            while (d > pi)
                d -= 2.0 * pi;
            while (d < -pi)
                d += 2.0 * pi;
            unwrapped += d;
            phases.push_back(unwrapped);
            prev = cur;
        }
        fit.phase_step =
            (phases.back() - phases.front()) / static_cast<double>(n_ref - 1);
        // rms of the model error across the fitted overlaps
        double sq = 0.0;
        for (int m = 0; m < n_ref; ++m) {
            const std::complex<double> model =
                fit.magnitude
                * std::polar(1.0, phases.front()
                                      + fit.phase_step * static_cast<double>(m));
            sq += std::norm(ov[static_cast<std::size_t>(m)] - model);
        }
        fit.residual = std::sqrt(sq / static_cast<double>(n_ref));
    } else {
        fit.phase_step = 0.0;
        fit.residual = 0.0;
    }
    return fit;
}

double population_difference_compact(double alpha, double J, double S, double delta,
                                     double t) {
    const double a2 = alpha * alpha;
    const std::complex<double> damp =
        std::exp(-0.5 * (1.0 - std::exp(kI * S)) * a2);
    const std::complex<double> p =
        -J * a2 * damp * std::polar(1.0, -2.0 * delta * t);
    return p.real();
}

double phase_shift(double S, double alpha) {
    const double a2 = alpha * alpha;
    const std::complex<double> E = std::exp(0.5 * (1.0 - std::exp(kI * S)) * a2);
    if (std::abs(E) < 1e-300)
        return std::numeric_limits<double>::quiet_NaN();
    return std::atan2(E.real(), (kI * E).real());
}

TunnelingTrace tunneling_trace(const ModeGrid& grid, double alpha, double delta,
                               double t_start, double t_end, int steps, int n_ref,
                               double tail_tol) {
    if (steps < 2)
        throw InvalidArgumentError("tunneling_trace: needs at least 2 steps");
    if (!(t_end > t_start))
        throw InvalidArgumentError("tunneling_trace: t_end must exceed t_start");
    if (n_ref <= 0)
        n_ref = static_cast<int>(std::ceil(alpha * alpha)) + 3;

    TunnelingTrace trace;
    trace.times.resize(static_cast<std::size_t>(steps));
    trace.p_exact.resize(static_cast<std::size_t>(steps));
    trace.p_compact.resize(static_cast<std::size_t>(steps));
    trace.J.resize(static_cast<std::size_t>(steps));
    trace.S.resize(static_cast<std::size_t>(steps));
    trace.theta.resize(static_cast<std::size_t>(steps));

    const double dt = (t_end - t_start) / static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i) {
        const double t = t_start + dt * static_cast<double>(i);
        trace.times[static_cast<std::size_t>(i)] = t;
        trace.p_exact[static_cast<std::size_t>(i)] =
            population_difference_exact(alpha, grid, delta, t, tail_tol);
        const EnvelopeFit fit = fit_overlap_envelope(grid, n_ref, t);
        trace.J[static_cast<std::size_t>(i)] = fit.magnitude;
        trace.S[static_cast<std::size_t>(i)] = fit.phase_step;
        trace.p_compact[static_cast<std::size_t>(i)] = population_difference_compact(
            alpha, fit.magnitude, fit.phase_step, delta, t);
        trace.theta[static_cast<std::size_t>(i)] =
            fit.defined ? phase_shift(fit.phase_step, alpha)
                        : std::numeric_limits<double>::quiet_NaN();
    }
    return trace;
}

} // namespace decobec
