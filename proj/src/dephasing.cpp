// dephasing.cpp — displacements, decoherence factors, reduced density matrix
#include "decobec/dephasing.hpp"
#include "decobec/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace decobec {

namespace {

constexpr double pi = std::numbers::pi;

// sin²(ωt/2)/ω² with its removable ω → 0 limit t²/4
double half_angle_sin_sq_ratio(double omega, double t) {
    const double x = omega * t;
    if (std::abs(x) < 1e-4) {
        // sin²(x/2)/x² = 1/4 − x²/48 + x⁴/1440 − …
        const double x2 = x * x;
        return t * t * (0.25 - x2 / 48.0 + x2 * x2 / 1440.0);
    }
    const double s = std::sin(0.5 * x);
    return s * s / (omega * omega);
}

// (ωt − sin ωt)/ω² with its removable ω → 0 limit 0
double kick_phase_ratio(double omega, double t) {
    const double x = omega * t;
    if (std::abs(x) < 1e-4) {
        // (x − sin x)/x² = x/6 − x³/120 + x⁵/5040 − …
        const double x2 = x * x;
        return t * t * (x / 6.0) * (1.0 - x2 / 20.0 + x2 * x2 / 840.0);
    }
    return (x - std::sin(x)) / (omega * omega);
}

} // namespace

ModeDisplacement forced_displacement(std::complex<double> f, double omega, double t) {
    ModeDisplacement d;
    const double x = omega * t;
    if (std::abs(x) < 1e-4) {
        // (e^{−ix} − 1)/(ix) = −1 + ix/2 + x²/6 − ix³/24 − x⁴/120 + …
        const std::complex<double> series(-1.0 + x * x / 6.0, x / 2.0 - x * x * x / 24.0);
        d.alpha = f * t * series;
    } else {
        const std::complex<double> phase = std::exp(std::complex<double>(0.0, -x));
        d.alpha = f * (phase - 1.0) / std::complex<double>(0.0, omega);
    }
    d.gamma = std::norm(f) * kick_phase_ratio(omega, t);
    return d;
}

ModeDisplacement displacement(int n, double g, double omega, double t) {
    if (n < 0) throw InvalidArgumentError("displacement: sector must be >= 0");
    return forced_displacement(static_cast<double>(n) * g, omega, t);
}

std::complex<double> decoherence_factor(int m, int n, const ModeGrid& grid, double t) {
    if (grid.modes.empty())
        throw InvalidArgumentError("decoherence_factor: empty mode grid");
    std::vector<double> norm_terms, phase_terms;
    norm_terms.reserve(grid.modes.size());
    phase_terms.reserve(grid.modes.size());
    for (const Mode& mode : grid.modes) {
        const double g2 = std::norm(mode.number_coupling);
        norm_terms.push_back(mode.weight * g2 * half_angle_sin_sq_ratio(mode.omega, t));
        phase_terms.push_back(mode.weight * g2 * kick_phase_ratio(mode.omega, t));
    }
    const double diff = static_cast<double>(m - n);
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    const double log_norm = -diff * diff * 2.0 * pairwise_sum(norm_terms);
    const double phase = (nn * nn - mm * mm) * pairwise_sum(phase_terms);
    return std::exp(std::complex<double>(log_norm, phase));
}

ContinuumNorm decoherence_norm_continuum(int m, int n, const PumpConfig& pump,
                                         const SpectralDensity& density, double t,
                                         double tol, double k_max,
                                         double hbar, double c) {
    if (!(t >= 0)) throw InvalidArgumentError("decoherence_norm_continuum: t must be >= 0");
    const double omega0 = pump.pump_frequency;
    if (!(k_max > omega0 / c))
        throw InvalidArgumentError("decoherence_norm_continuum: k_max must exceed ω0/c");

    ContinuumNorm out;
    if (m == n || t == 0.0) {
        out.exponent_partials.assign(1, 0.0);
        return out;
    }

    const double diff = static_cast<double>(m - n);
    const double R = pump.rabi_frequency, d = pump.dipole, delta = pump.detuning;
    const double prefactor = diff * diff * pi * R * R * c * d * d /
                             (8.0 * std::pow(2.0 * pi, 3.0) * hbar * delta * delta);

    const double patch_width = 1e-8 * omega0;
    auto kernel = [&](double k) {
        const double w = c * k - omega0;
        if (std::abs(w) < patch_width)  // removable singularity at ck = ω0
            return 0.25 * t * t * k * k * k * density(k);
        const double s = std::sin(0.5 * t * w);
        return s * s * k * k * k / (w * w) * density(k);
    };

    QuadratureOptions options;
    options.tol = tol;
    // resolve the sin²((t/2)(ck−ω0)) oscillation before adapting
    options.max_initial_panel_width = pi / (2.0 * t * c);

    if (density.kind == SpectralDensity::Kind::FreeSpace) {
        const std::vector<double> cutoffs = {k_max / 100.0, k_max / 10.0, k_max};
        std::vector<double> partials;
        const QuadratureResult scan =
            integrate_to_cutoff(kernel, 0.0, cutoffs, options, &partials);
        out.evaluations = scan.evaluations;
        out.diverged = scan.diverged;
        for (double p : partials) out.exponent_partials.push_back(prefactor * p);
        out.exponent = prefactor * scan.value;
        out.value = scan.diverged ? 0.0 : std::exp(-out.exponent);
        return out;
    }

    const double k_min = density.kind == SpectralDensity::Kind::Tabulated
                             ? density.samples.front().first
                             : 0.0;
    const QuadratureResult integral = integrate_adaptive(kernel, k_min, k_max, options);
    out.evaluations = integral.evaluations;
    out.exponent = prefactor * integral.value;
    out.exponent_partials.assign(1, out.exponent);
    out.value = std::exp(-out.exponent);
    return out;
}

double decoherence_norm_cavity(int m, int n, double rate, double omega0, double t,
                               CavityVariant variant) {
    if (!(rate >= 0)) throw InvalidArgumentError("decoherence_norm_cavity: rate must be >= 0");
    if (!(omega0 > 0)) throw InvalidArgumentError("decoherence_norm_cavity: ω0 must be > 0");
    const double diff = static_cast<double>(m - n);
    const double constant = variant == CavityVariant::Corrected ? 2.0 / omega0 : 2.0;
    const double bracket = pi * t - constant + 2.0 * std::cos(omega0 * t) / omega0 +
                           2.0 * sine_integral(omega0 * t) * t;
    return std::exp(-rate * diff * diff * bracket);
}

EntangledState evolve_entangled_state(const std::vector<std::complex<double>>& c,
                                      const ModeGrid& grid, double omega0,
                                      double kappa, double t) {
    double norm = 0.0;
    for (const auto& cn : c) norm += std::norm(cn);
    if (std::abs(norm - 1.0) > 1e-9)
        throw InvalidArgumentError("evolve_entangled_state: coefficients not normalized (Σ|c|² = " +
                                   std::to_string(norm) + ")");

    EntangledState state;
    state.time = t;
    state.sectors.reserve(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        SectorState sector;
        sector.n = static_cast<int>(n);
        sector.displacements.reserve(grid.modes.size());
        std::vector<double> kick_terms;
        kick_terms.reserve(grid.modes.size());
        for (const Mode& mode : grid.modes) {
            const ModeDisplacement d =
                displacement(sector.n, std::abs(mode.number_coupling), mode.omega, t);
            kick_terms.push_back(mode.weight * d.gamma);
            sector.displacements.push_back(d);
        }
        const double energy_phase = -hartree_fock_energy(sector.n, omega0, kappa) * t;
        const double kick_phase = pairwise_sum(kick_terms);
        sector.amplitude =
            c[n] * std::exp(std::complex<double>(0.0, energy_phase + kick_phase));
        state.sectors.push_back(std::move(sector));
    }
    return state;
}

Eigen::MatrixXcd reduced_density_matrix(const EntangledState& state,
                                        const ModeGrid& grid) {
    const auto size = static_cast<Eigen::Index>(state.sectors.size());
    Eigen::MatrixXcd rho(size, size);
    for (Eigen::Index m = 0; m < size; ++m) {
        rho(m, m) = std::norm(state.sectors[m].amplitude);
        for (Eigen::Index n = m + 1; n < size; ++n) {
            const auto& dm = state.sectors[m].displacements;
            const auto& dn = state.sectors[n].displacements;
            // log of the weighted coherent overlap ⟨v_n|v_m⟩
            std::vector<double> re_terms, im_terms;
            re_terms.reserve(dm.size());
            im_terms.reserve(dm.size());
            for (std::size_t k = 0; k < dm.size(); ++k) {
                const std::complex<double> cross = std::conj(dn[k].alpha) * dm[k].alpha;
                const double w = grid.modes[k].weight;
                re_terms.push_back(
                    w * (cross.real() -
                         0.5 * (std::norm(dm[k].alpha) + std::norm(dn[k].alpha))));
                im_terms.push_back(w * cross.imag());
            }
            const std::complex<double> overlap =
                std::exp(std::complex<double>(pairwise_sum(re_terms), pairwise_sum(im_terms)));
            rho(m, n) = state.sectors[m].amplitude *
                        std::conj(state.sectors[n].amplitude) * overlap;
            rho(n, m) = std::conj(rho(m, n));
        }
    }
    return rho;
}

double purity(const Eigen::MatrixXcd& rho) {
    return (rho * rho).trace().real();
}

} // namespace decobec
