// model.cpp — coupling formulas, Gaussian orbital overlaps, quadrature grids
#include "decobec/model.hpp"
#include "decobec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace decobec {

namespace {

constexpr double pi = std::numbers::pi;

double norm3(const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

double gaussian_orbital(double sigma, const std::array<double, 3>& r,
                        double x_shift) {
    const double dx = r[0] - x_shift;
    const double r2 = dx * dx + r[1] * r[1] + r[2] * r[2];
    return std::pow(pi * sigma * sigma, -0.75) * std::exp(-r2 / (2.0 * sigma * sigma));
}

// Gauss–Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n == 1) {  // closed form; the Newton loop degenerates for n = 1
        nodes[0] = 0.0;
        weights[0] = 2.0;
    }
}

} // namespace

double SpectralDensity::operator()(double k) const {
    switch (kind) {
        case Kind::FreeSpace:
            return 1.0;
        case Kind::CavityInverseCubic:
            return cavity_scale / (k * k * k);
        case Kind::Tabulated: {
            if (samples.empty() || k < samples.front().first || k > samples.back().first)
                throw InvalidArgumentError(
                    "SpectralDensity: k = " + std::to_string(k) +
                    " outside the tabulated range");
            auto hi = std::lower_bound(
                samples.begin(), samples.end(), k,
                [](const std::pair<double, double>& s, double v) { return s.first < v; });
            if (hi == samples.begin()) return hi->second;
            auto lo = hi - 1;
            const double f = (k - lo->first) / (hi->first - lo->first);
            return lo->second + f * (hi->second - lo->second);
        }
    }
    throw InvalidArgumentError("SpectralDensity: unknown kind");
}

double coupling_strength(const PumpConfig& pump, double k, double c) {
    if (!(k > 0)) throw InvalidArgumentError("coupling_strength: k must be > 0");
    return pump.coupling_scale * pump.dipole * std::abs(pump.rabi_frequency) *
           std::sqrt(c * k) / (2.0 * std::abs(pump.detuning));
}

double calibrated_coupling_scale(double hbar) {
    return 1.0 / (4.0 * std::pow(2.0 * pi, 1.5) * std::sqrt(hbar));
}

double mode_function(const TrapGeometry& geometry, ModeFunctionKind which,
                     const std::array<double, 3>& r) {
    if (const auto* sw = std::get_if<SingleWell>(&geometry)) {
        if (which != ModeFunctionKind::Ground)
            throw InvalidArgumentError("mode_function: single well has only the ground orbital");
        return gaussian_orbital(sw->width, r, 0.0);
    }
    const auto& dw = std::get<DoubleWell>(geometry);
    const double sigma = dw.local_width, a = dw.separation;
    const double left = gaussian_orbital(sigma, r, -0.5 * a);
    const double right = gaussian_orbital(sigma, r, +0.5 * a);
    switch (which) {
        case ModeFunctionKind::Left:
            return left;
        case ModeFunctionKind::Right:
            return right;
        case ModeFunctionKind::Ground:
        case ModeFunctionKind::Excited: {
            // (φ_r ± φ_l)/sqrt(2(1 ± s)) with overlap s = exp(−a²/4σ²),
            // normalized exactly despite the non-orthogonal locals
            const double s = std::exp(-a * a / (4.0 * sigma * sigma));
            if (which == ModeFunctionKind::Ground)
                return (right + left) / std::sqrt(2.0 * (1.0 + s));
            return (right - left) / std::sqrt(2.0 * (1.0 - s));
        }
    }
    throw InvalidArgumentError("mode_function: unknown orbital");
}

std::complex<double> form_factor(const TrapGeometry& geometry, const PumpConfig& pump,
                                 const std::array<double, 3>& k_vec,
                                 const std::array<double, 3>& k0_vec,
                                 double hbar, double c) {
    const auto* sw = std::get_if<SingleWell>(&geometry);
    if (!sw) throw InvalidArgumentError("form_factor: requires a single-well geometry");
    const double sigma = sw->width;
    const std::array<double, 3> q = {k_vec[0] - k0_vec[0], k_vec[1] - k0_vec[1],
                                     k_vec[2] - k0_vec[2]};
    const double q2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    const double g = coupling_strength(pump, norm3(k_vec), c);
    return hbar * g * std::exp(-sigma * sigma * q2 / 4.0);
}

std::pair<std::complex<double>, std::complex<double>>
local_couplings(const TrapGeometry& geometry, const PumpConfig& pump,
                const std::array<double, 3>& k_vec,
                const std::array<double, 3>& k0_vec,
                double hbar, double c) {
    const auto* dw = std::get_if<DoubleWell>(&geometry);
    if (!dw) throw InvalidArgumentError("local_couplings: requires a double-well geometry");
    const double sigma = dw->local_width, a = dw->separation;
    const std::array<double, 3> q = {k_vec[0] - k0_vec[0], k_vec[1] - k0_vec[1],
                                     k_vec[2] - k0_vec[2]};
    const double q2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    const double g = coupling_strength(pump, norm3(k_vec), c);
    const double envelope = hbar * g * std::exp(-sigma * sigma * q2 / 4.0);
    // left-well density sits at x = −a/2: its form factor picks up the
    // displacement phase; the cross term is centered and real
    const std::complex<double> number =
        envelope * std::exp(std::complex<double>(0.0, -q[0] * a / 2.0));
    const std::complex<double> exchange =
        envelope * std::exp(-a * a / (4.0 * sigma * sigma));
    return {number, exchange};
}

double hartree_fock_energy(int n, double omega0, double kappa) {
    if (n < 0) throw InvalidArgumentError("hartree_fock_energy: n must be >= 0");
    const double nn = static_cast<double>(n);
    return nn * (omega0 - kappa) + kappa * nn * nn;
}

double kappa_from_trap(const SingleWell& well, double g_aa) {
    const double s2 = well.width * well.width;
    return g_aa * std::pow(2.0 * pi * s2, -1.5);
}

double decoherence_rate_scale(const PumpConfig& pump, double cavity_scale,
                              int m, int n, double hbar) {
    if (m < 0 || n < 0)
        throw InvalidArgumentError("decoherence_rate_scale: sector indices must be >= 0");
    const double diff = static_cast<double>(m - n);
    const double R = pump.rabi_frequency, d = pump.dipole, delta = pump.detuning;
    return cavity_scale * diff * diff * R * R * d * d /
           (256.0 * pi * pi * hbar * delta * delta);
}

double cavity_scale_for_rate(const PumpConfig& pump, double rate, double hbar) {
    const double R = pump.rabi_frequency, d = pump.dipole, delta = pump.detuning;
    return rate * 256.0 * pi * pi * hbar * delta * delta / (R * R * d * d);
}

double tunnel_splitting(const DoubleWell& well, double hbar) {
    const double xi_b = std::sqrt(2.0 * well.mass * well.barrier_height);
    return well.splitting_scale * std::exp(-2.0 * xi_b * well.separation) /
           (well.mass * xi_b * hbar);
}

ModeGrid build_mode_grid(const PumpConfig& pump, const TrapGeometry& geometry,
                         const SpectralDensity& density, const GridSpec& spec,
                         double hbar, double c) {
    if (!(spec.k_min >= 0) || !(spec.k_max > spec.k_min))
        throw InvalidArgumentError("build_mode_grid: requires 0 <= k_min < k_max");
    if (spec.n_radial < 1 || spec.n_angular < 1)
        throw InvalidArgumentError("build_mode_grid: counts must be >= 1");

    std::vector<double> u_nodes, u_weights;
    gauss_legendre(spec.n_angular, u_nodes, u_weights);

    const double k0 = pump.pump_frequency / c;
    const std::array<double, 3> k0_vec = {k0, 0.0, 0.0};
    const bool double_well = std::holds_alternative<DoubleWell>(geometry);

    ModeGrid grid;
    grid.c = c;
    grid.modes.reserve(static_cast<std::size_t>(spec.n_radial) * spec.n_angular *
                       spec.n_angular);
    const double dk = (spec.k_max - spec.k_min) / spec.n_radial;
    const double dphi = 2.0 * pi / spec.n_angular;
    for (int ir = 0; ir < spec.n_radial; ++ir) {
        const double k = spec.k_min + dk * (ir + 0.5);  // radial midpoints
        const double mu = density(k);
        const double radial_measure = dk * mu * k * k;
        for (int iu = 0; iu < spec.n_angular; ++iu) {
            const double cos_theta = u_nodes[iu];
            const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
            for (int ip = 0; ip < spec.n_angular; ++ip) {
                const double phi = dphi * (ip + 0.5);
                // polar axis along +x, the pump direction
                const std::array<double, 3> k_vec = {k * cos_theta,
                                                     k * sin_theta * std::cos(phi),
                                                     k * sin_theta * std::sin(phi)};
                Mode mode;
                mode.k = k;
                mode.omega = c * k - pump.pump_frequency;
                mode.weight = radial_measure * u_weights[iu] * dphi;
                if (double_well) {
                    const auto [number, exchange] =
                        local_couplings(geometry, pump, k_vec, k0_vec, hbar, c);
                    mode.number_coupling = number / hbar;
                    mode.exchange_coupling = exchange / hbar;
                } else {
                    mode.number_coupling =
                        form_factor(geometry, pump, k_vec, k0_vec, hbar, c) / hbar;
                }
                grid.modes.push_back(mode);
            }
        }
    }
    return grid;
}

} // namespace decobec
