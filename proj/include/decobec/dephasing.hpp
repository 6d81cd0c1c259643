// dephasing.hpp — single-well exact dynamics: per-mode displacements, kick
// phases, entangled states, decoherence factors, reduced density matrix
#pragma once

#include "decobec/model.hpp"
#include "decobec/specfun.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace decobec {

// Coherent displacement of one field mode driven by one atom sector,
// together with the accumulated kick phase of the forced oscillator.
struct ModeDisplacement {
    std::complex<double> alpha{0.0, 0.0};
    double gamma = 0.0;
};

// Forced-oscillator solution for drive amplitude f (frequency units):
//   alpha = (f/(iω))(e^{−iωt} − 1),  gamma = |f|²(ωt − sin ωt)/ω².
// ω → 0 is a removable limit (alpha → −f·t, gamma → 0), taken by a Taylor
// branch for |ωt| < 1e-4.
ModeDisplacement forced_displacement(std::complex<double> f, double omega, double t);

// Sector-n displacement of a mode with real coupling magnitude g.
ModeDisplacement displacement(int n, double g, double omega, double t);

// Overlap of the evolved field registers of sectors m and n on a weighted
// grid, kick phases included:
//   O_mn = exp(−(m−n)²·Sn + i(n²−m²)·Sp),
//   Sn = 2·Σ_k w_k g_k² sin²(ω_k t/2)/ω_k²,  Sp = Σ_k w_k g_k² (ω_k t − sin ω_k t)/ω_k²,
// with g_k = |number_coupling|.  Accumulated in log space.
std::complex<double> decoherence_factor(int m, int n, const ModeGrid& grid, double t);

// Continuum version of the decoherence norm: the exponent integral over the
// mode density, evaluated by adaptive quadrature up to k_max.  A free-space
// density grows without bound; it is scanned over cutoffs
// {k_max/100, k_max/10, k_max} and reported as value 0 with diverged = true.
struct ContinuumNorm {
    double value = 1.0;          // |O_mn|
    double exponent = 0.0;       // −ln(value) at the last cutoff
    bool diverged = false;
    std::vector<double> exponent_partials;  // per-cutoff exponents (divergence scans)
    std::int64_t evaluations = 0;
};
ContinuumNorm decoherence_norm_continuum(int m, int n, const PumpConfig& pump,
                                         const SpectralDensity& density, double t,
                                         double tol, double k_max,
                                         double hbar = 1.0, double c = 1.0);

// Closed form of the cavity (inverse-cubic density) decoherence norm.
// `rate` is the decay scale for a unit sector difference; the exponent is
// scaled by (m−n)².  Verbatim keeps the dimensionally inconsistent constant
// term "−2" of the source expression (|O(0)| ≠ 1 for ω0 ≠ 1); Corrected uses
// −2/ω0, which matches the continuum integral exactly.
enum class CavityVariant { Verbatim, Corrected };
double decoherence_norm_cavity(int m, int n, double rate, double omega0, double t,
                               CavityVariant variant = CavityVariant::Corrected);

// Entangled atom–field state: one term per atom sector.  Kick phases are
// folded into the sector amplitude; displacements are the bare coherent
// amplitudes per grid mode.
struct SectorState {
    int n = 0;
    std::complex<double> amplitude{0.0, 0.0};
    std::vector<ModeDisplacement> displacements;
};
struct EntangledState {
    std::vector<SectorState> sectors;
    double time = 0.0;
};

// Exact solution at time t for initial sector coefficients c (must be
// normalized to 1e-9): amplitude_n = c_n e^{−iε(n)t} e^{+iΣ_k w_k γ_nk}.
EntangledState evolve_entangled_state(const std::vector<std::complex<double>>& c,
                                      const ModeGrid& grid, double omega0,
                                      double kappa, double t);

// Reduced atom density matrix: ρ_mn = amplitude_m · conj(amplitude_n) ×
// (weighted coherent overlap of the stored displacement registers).
// Hermitian, unit trace, PSD; diagonals equal |c_n|² at all times.
Eigen::MatrixXcd reduced_density_matrix(const EntangledState& state,
                                        const ModeGrid& grid);

double purity(const Eigen::MatrixXcd& rho);

} // namespace decobec
