// doublewell.hpp — two-mode BEC tunneling under decoherence: splitting
// amplitudes, per-term field states, exact and compact population
// difference, envelope fits, phase shift
#pragma once

#include "decobec/dephasing.hpp"
#include "decobec/model.hpp"

#include <complex>
#include <vector>

namespace decobec {

// Expansion amplitude f_m^n of the initially left-localized sector-n state
// over the symmetric/antisymmetric two-mode basis:
//   |f| = (1/√2)^n sqrt(n!/((n−m)! m!)),  sign (−1)^m,  phase e^{−2imδt}.
std::complex<double> splitting_amplitude(int n, int m, double delta, double t);

// Field register attached to the (n, m) term: each mode is a forced
// oscillator with drive μ_k·n + ζ_k·(n−2m) (couplings in frequency units).
std::vector<ModeDisplacement> field_displacements(int n, int m, const ModeGrid& grid,
                                                  double t);

// Weighted overlap ⟨v_{m+1}^n | v_m^n⟩ of adjacent field registers, kick
// phases included — the per-term decoherence factor of the tunneling sum.
std::complex<double> adjacent_overlap(int n, int m, const ModeGrid& grid, double t);

// Exact population difference p(t) = ⟨N_right − N_left⟩ for an initial
// left-well coherent state of amplitude α: Poisson-weighted double sum over
// (n, m) with per-term overlaps.  The sum over n is truncated where the
// Poisson tail drops below tail_tol and the truncated state is used
// unnormalized, so brute-force comparisons can share the same state.
double population_difference_exact(double alpha, const ModeGrid& grid, double delta,
                                   double t, double tail_tol = 1e-12);

// Geometric-mean / mean-phase-increment fit of the adjacent overlaps
// O_m ≈ J e^{imS} over m ∈ [0, n_ref): J from ln|O_m|, S from unwrapped
// phase increments.  `defined` is false when the overlaps underflow to zero
// (complete decoherence).
struct EnvelopeFit {
    double magnitude = 1.0;   // J
    double phase_step = 0.0;  // S
    double residual = 0.0;    // rms deviation from the (J, S) model
    bool defined = true;
};
EnvelopeFit fit_overlap_envelope(const ModeGrid& grid, int n_ref, double t);

// Compact population difference for fitted (J, S):
//   p = Re(−J α² e^{−(1/2)(1−e^{iS})α²} e^{−2iδt}),
// which reduces to −Jα²cos(2δt) at S = 0.
double population_difference_compact(double alpha, double J, double S, double delta,
                                     double t);

// Phase shift of the compact oscillation relative to the undamped one:
// θ = atan2(Re E, Re(iE)) with E = e^{+(1/2)(1−e^{iS})α²}; θ(S=0) = π/2.
double phase_shift(double S, double alpha);

struct TunnelingTrace {
    std::vector<double> times;
    std::vector<double> p_exact;
    std::vector<double> p_compact;
    std::vector<double> J;
    std::vector<double> S;
    std::vector<double> theta;
};

// Uniform time sampling of everything above.  n_ref <= 0 selects the
// default ceil(α²) + 3 (near the Poisson peak).
TunnelingTrace tunneling_trace(const ModeGrid& grid, double alpha, double delta,
                               double t_start, double t_end, int steps,
                               int n_ref = 0, double tail_tol = 1e-12);

} // namespace decobec
