// model.hpp — physical parameters, spectral densities, trap geometry, and
// coupling-constant formulas
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

namespace decobec {

// Classical pump drive: Rabi frequency R, detuning Δ of the pump from the
// atomic transition, pump frequency ω0 = c·k0, transition dipole d, and a
// dimensionless overall coupling calibration g0.
struct PumpConfig {
    double rabi_frequency = 1.0;
    double detuning = 100.0;
    double pump_frequency = 1.0;
    double dipole = 1.0;
    double coupling_scale = 1.0;
};

// Effective scattered-mode density μ(k).
struct SpectralDensity {
    enum class Kind { FreeSpace, CavityInverseCubic, Tabulated };
    Kind kind = Kind::FreeSpace;
    double cavity_scale = 1.0;                        // ξ_c in μ(k) = ξ_c/k³
    std::vector<std::pair<double, double>> samples;   // (k, μ) ascending in k

    double operator()(double k) const;  // throws outside a tabulated range
};

struct SingleWell {
    double width = 1.0;             // Gaussian ground-state width σ
    double trap_frequency = 1.0;    // level spacing Ω0
};

struct DoubleWell {
    double separation = 5.0;        // distance a between the two minima
    double local_width = 1.0;       // σ of each local Gaussian
    double barrier_height = 0.5;    // V0 of the central barrier
    double mass = 1.0;              // atomic mass M
    double splitting_scale = 1.0;   // calibration constant for the splitting
};

using TrapGeometry = std::variant<SingleWell, DoubleWell>;

// One discretized field mode.  Couplings are stored in angular-frequency
// units (energy couplings divided by ħ).  For a single well
// number_coupling is the density–light coupling and exchange_coupling is 0;
// for a double well they couple to the total-number and tunneling operators
// respectively.  `weight` carries the full quadrature measure
// (radial × angular × μ(k)·k²), i.e. the mode multiplicity.
struct Mode {
    double k = 0.0;
    double weight = 1.0;
    double omega = 0.0;  // ω_k = c·k − ω0
    std::complex<double> number_coupling{0.0, 0.0};
    std::complex<double> exchange_coupling{0.0, 0.0};
};

struct ModeGrid {
    std::vector<Mode> modes;
    double c = 1.0;
};

enum class ModeFunctionKind { Ground, Excited, Left, Right };

// g_k = g0 · d · |R| · sqrt(c·k) / (2|Δ|); frequency units.
double coupling_strength(const PumpConfig& pump, double k, double c = 1.0);

// Calibration g0 for which the discretized weighted mode sums reproduce the
// continuum decoherence exponent prefactor exactly: g0 = 1/(4·(2π)^{3/2}·√ħ).
double calibrated_coupling_scale(double hbar = 1.0);

// Normalized Gaussian trap orbitals.  Single well supports Ground only;
// the double well supports Left/Right (displaced Gaussians at x = ∓a/2) and
// their normalized symmetric/antisymmetric combinations Ground/Excited.
double mode_function(const TrapGeometry& geometry, ModeFunctionKind which,
                     const std::array<double, 3>& r);

// Density–light coupling of the single-well condensate: for the Gaussian
// orbital, ħ·g_k·exp(−σ²|k−k0|²/4).  Energy units.
std::complex<double> form_factor(const TrapGeometry& geometry, const PumpConfig& pump,
                                 const std::array<double, 3>& k_vec,
                                 const std::array<double, 3>& k0_vec,
                                 double hbar = 1.0, double c = 1.0);

// Double-well couplings (energy units): `first` couples to the total atom
// number (left-well density form factor, complex through the displacement
// phase), `second` to the tunneling operator (left–right cross overlap,
// suppressed by exp(−a²/4σ²)).
std::pair<std::complex<double>, std::complex<double>>
local_couplings(const TrapGeometry& geometry, const PumpConfig& pump,
                const std::array<double, 3>& k_vec,
                const std::array<double, 3>& k0_vec,
                double hbar = 1.0, double c = 1.0);

// Mean-field sector energy ε(n) = n(Ω0 − κ) + κn²; frequency units.
double hartree_fock_energy(int n, double omega0, double kappa);

// Self-interaction scale κ = g_aa · ∫|φ0|⁴ = g_aa · (2πσ²)^{−3/2}.
double kappa_from_trap(const SingleWell& well, double g_aa);

// Decay-rate scale of the cavity closed form,
// λ_mn = ξ_c (m−n)² R² d² / (256 π² ħ Δ²).
double decoherence_rate_scale(const PumpConfig& pump, double cavity_scale,
                              int m, int n, double hbar = 1.0);

// Inverse of the above for (m−n)² = 1: the ξ_c that produces a given rate.
double cavity_scale_for_rate(const PumpConfig& pump, double rate, double hbar = 1.0);

// Tunnel splitting δ = C · e^{−2 ξ_b a} / (M ξ_b ħ), ξ_b = sqrt(2 M V0).
double tunnel_splitting(const DoubleWell& well, double hbar = 1.0);

struct GridSpec {
    double k_min = 0.0;
    double k_max = 1.0;
    int n_radial = 1;   // radial midpoint panels
    int n_angular = 1;  // polar Gauss–Legendre nodes and azimuthal midpoints
};

// Deterministic product quadrature grid over (k, θ, φ) with k0 along +x.
// Weighted sums over the grid approximate ∫ μ(k) f(k) k² dΩ dk; each mode
// carries its couplings (number for a single well, number+exchange for a
// double well) divided by ħ.
ModeGrid build_mode_grid(const PumpConfig& pump, const TrapGeometry& geometry,
                         const SpectralDensity& density, const GridSpec& spec,
                         double hbar = 1.0, double c = 1.0);

} // namespace decobec
