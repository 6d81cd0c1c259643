// oracle.cpp — truncated-Fock Hamiltonians and two independent evolvers
#include "decobec/oracle.hpp"
#include "decobec/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace decobec::oracle {

namespace {

constexpr std::int64_t dense_matrix_cap = 8192;  // memory guard for dense builders

void check_dense(std::int64_t dim, const char* where) {
    if (dim > dense_matrix_cap)
        throw ResourceError(std::string(where) + ": dense dimension " +
                            std::to_string(dim) + " exceeds " +
                            std::to_string(dense_matrix_cap));
}

// √weight-folded couplings of all grid modes
struct FoldedMode {
    double omega;
    std::complex<double> number;
    std::complex<double> exchange;
};

std::vector<FoldedMode> fold_modes(const ModeGrid& grid, const TruncationSpec& trunc) {
    if (static_cast<int>(grid.modes.size()) != trunc.num_modes)
        throw InvalidArgumentError("oracle: grid mode count does not match truncation spec");
    std::vector<FoldedMode> out;
    out.reserve(grid.modes.size());
    for (const Mode& m : grid.modes) {
        const double root_w = std::sqrt(m.weight);
        out.push_back({m.omega, m.number_coupling * root_w, m.exchange_coupling * root_w});
    }
    return out;
}

// energy ε(n) = n(Ω0 − κ) + κ n² of the single-well sector
double sector_energy(int n, double omega0, double kappa) {
    const double nn = n;
    return nn * (omega0 - kappa) + kappa * nn * nn;
}

} // namespace

BasisLayout::BasisLayout(ModelKind kind, const TruncationSpec& trunc)
    : kind_(kind), trunc_(trunc) {
    if (trunc.max_atoms < 1 || trunc.max_photons_per_mode < 1 || trunc.num_modes < 1)
        throw InvalidArgumentError("BasisLayout: truncation counts must be >= 1");
    for (int k = 0; k < trunc.num_modes; ++k) {
        fock_dim_ *= trunc.max_photons_per_mode + 1;
        if (fock_dim_ > trunc.dimension_cap)
            throw ResourceError("BasisLayout: Fock dimension exceeds cap");
    }
    atomic_dim_ = 0;
    for (int n = 0; n <= trunc.max_atoms; ++n) atomic_dim_ += sector_atomic_dim(n);
    dimension_ = static_cast<std::int64_t>(atomic_dim_) * fock_dim_;
    if (dimension_ > trunc.dimension_cap)
        throw ResourceError("BasisLayout: total dimension " + std::to_string(dimension_) +
                            " exceeds cap " + std::to_string(trunc.dimension_cap));
}

int BasisLayout::sector_atomic_dim(int n) const {
    return kind_ == ModelKind::SingleWell ? 1 : n + 1;
}

std::int64_t BasisLayout::sector_offset(int n) const {
    if (n < 0 || n > trunc_.max_atoms)
        throw InvalidArgumentError("BasisLayout: sector out of range");
    std::int64_t atoms_before = 0;
    for (int m = 0; m < n; ++m) atoms_before += sector_atomic_dim(m);
    return atoms_before * fock_dim_;
}

std::int64_t BasisLayout::sector_dim(int n) const {
    return static_cast<std::int64_t>(sector_atomic_dim(n)) * fock_dim_;
}

int BasisLayout::atomic_index(int n, int j) const {
    if (j < 0 || j >= sector_atomic_dim(n))
        throw InvalidArgumentError("BasisLayout: atomic state out of range");
    return static_cast<int>(sector_offset(n) / fock_dim_) + j;
}

int BasisLayout::photon_occupation(std::int64_t fock_index, int mode) const {
    std::int64_t stride = 1;
    for (int k = trunc_.num_modes - 1; k > mode; --k)
        stride *= trunc_.max_photons_per_mode + 1;
    return static_cast<int>((fock_index / stride) % (trunc_.max_photons_per_mode + 1));
}

Eigen::MatrixXcd sector_hamiltonian_single(const ModeGrid& grid, double omega0,
                                           double kappa, int n,
                                           const TruncationSpec& trunc) {
    const BasisLayout layout(ModelKind::SingleWell, trunc);
    const std::int64_t F = layout.fock_dim();
    check_dense(F, "sector_hamiltonian_single");
    const auto modes = fold_modes(grid, trunc);
    const int P = trunc.max_photons_per_mode;

    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(F, F);
    const double energy = sector_energy(n, omega0, kappa);
    std::int64_t stride = 1;
    for (int k = trunc.num_modes - 1; k >= 0; --k) {
        // drive coefficient of a_k: i·n·conj(g_k)
        const std::complex<double> drive =
            std::complex<double>(0.0, 1.0) * static_cast<double>(n) *
            std::conj(modes[k].number);
        for (std::int64_t i = 0; i < F; ++i) {
            const int occ = static_cast<int>((i / stride) % (P + 1));
            H(i, i) += modes[k].omega * static_cast<double>(occ) +
                       (k == trunc.num_modes - 1 ? energy : 0.0);
            if (occ > 0) {
                const std::int64_t j = i - stride;  // a_k lowers mode k
                const std::complex<double> amp = drive * std::sqrt(static_cast<double>(occ));
                H(j, i) += amp;
                H(i, j) += std::conj(amp);
            }
        }
        stride *= P + 1;
    }
    return H;
}

Eigen::MatrixXcd sector_hamiltonian_double(const ModeGrid& grid, double omega,
                                           double delta, int n,
                                           const TruncationSpec& trunc) {
    const BasisLayout layout(ModelKind::DoubleWell, trunc);
    const std::int64_t F = layout.fock_dim();
    const std::int64_t dim = static_cast<std::int64_t>(n + 1) * F;
    check_dense(dim, "sector_hamiltonian_double");
    const auto modes = fold_modes(grid, trunc);
    const int P = trunc.max_photons_per_mode;

    // atomic operators in the left/right occupation basis |n−j left, j right⟩:
    // N = n·1; T(j±1, j) = sqrt((j+1)(n−j)) hops one atom between the wells
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    auto idx = [F](int j, std::int64_t f) { return static_cast<std::int64_t>(j) * F + f; };

    for (int j = 0; j <= n; ++j) {
        for (std::int64_t f = 0; f < F; ++f) {
            double diag = omega * static_cast<double>(n);
            std::int64_t stride = 1;
            for (int k = trunc.num_modes - 1; k >= 0; --k) {
                diag += modes[k].omega *
                        static_cast<double>((f / stride) % (P + 1));
                stride *= P + 1;
            }
            H(idx(j, f), idx(j, f)) += diag;
        }
        if (j < n) {
            const double hop = std::sqrt(static_cast<double>((j + 1) * (n - j)));
            for (std::int64_t f = 0; f < F; ++f) {
                H(idx(j + 1, f), idx(j, f)) += delta * hop;
                H(idx(j, f), idx(j + 1, f)) += delta * hop;
            }
        }
    }

    // drive: (i·conj(μ_k)·N + i·conj(ζ_k)·T) ⊗ a_k + H.c.
    std::int64_t stride = 1;
    for (int k = trunc.num_modes - 1; k >= 0; --k) {
        const std::complex<double> mu_drive = std::complex<double>(0.0, 1.0) *
                                              static_cast<double>(n) *
                                              std::conj(modes[k].number);
        const std::complex<double> zeta_drive =
            std::complex<double>(0.0, 1.0) * std::conj(modes[k].exchange);
        for (std::int64_t f = 0; f < F; ++f) {
            const int occ = static_cast<int>((f / stride) % (P + 1));
            if (occ == 0) continue;
            const std::int64_t fl = f - stride;
            const double root = std::sqrt(static_cast<double>(occ));
            for (int j = 0; j <= n; ++j) {
                const std::complex<double> amp = mu_drive * root;
                H(idx(j, fl), idx(j, f)) += amp;
                H(idx(j, f), idx(j, fl)) += std::conj(amp);
                if (j < n) {
                    const double hop = std::sqrt(static_cast<double>((j + 1) * (n - j)));
                    const std::complex<double> cross = zeta_drive * hop * root;
                    H(idx(j + 1, fl), idx(j, f)) += cross;
                    H(idx(j, f), idx(j + 1, fl)) += std::conj(cross);
                    H(idx(j, fl), idx(j + 1, f)) += cross;
                    H(idx(j + 1, f), idx(j, fl)) += std::conj(cross);
                }
            }
        }
        stride *= P + 1;
    }
    return H;
}

namespace {

Eigen::MatrixXcd assemble_blocks(const BasisLayout& layout,
                                 const std::function<Eigen::MatrixXcd(int)>& block) {
    check_dense(layout.dimension(), "build_hamiltonian");
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(layout.dimension(), layout.dimension());
    for (int n = 0; n <= layout.truncation().max_atoms; ++n) {
        const std::int64_t off = layout.sector_offset(n);
        const Eigen::MatrixXcd b = block(n);
        H.block(off, off, b.rows(), b.cols()) = b;
    }
    return H;
}

} // namespace

Eigen::MatrixXcd build_hamiltonian_single(const ModeGrid& grid, double omega0,
                                          double kappa, const TruncationSpec& trunc) {
    const BasisLayout layout(ModelKind::SingleWell, trunc);
    return assemble_blocks(layout, [&](int n) {
        return sector_hamiltonian_single(grid, omega0, kappa, n, trunc);
    });
}

Eigen::MatrixXcd build_hamiltonian_double(const ModeGrid& grid, double omega,
                                          double delta, const TruncationSpec& trunc) {
    const BasisLayout layout(ModelKind::DoubleWell, trunc);
    return assemble_blocks(layout, [&](int n) {
        return sector_hamiltonian_double(grid, omega, delta, n, trunc);
    });
}

Eigen::VectorXcd evolve(const Eigen::MatrixXcd& hamiltonian,
                        const Eigen::VectorXcd& psi0, double t, double tol) {
    if (hamiltonian.rows() != psi0.size())
        throw InvalidArgumentError("evolve: dimension mismatch");
    if (t == 0.0) return psi0;

    // Dormand–Prince 5(4) on ψ' = −iHψ; backward time folds into the sign.
    const double direction = t > 0 ? 1.0 : -1.0;
    const double t_end = std::abs(t);
    const std::complex<double> minus_i(0.0, -direction);
    auto rhs = [&](const Eigen::VectorXcd& psi) -> Eigen::VectorXcd {
        return minus_i * (hamiltonian * psi);
    };

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double h_norm = hamiltonian.cwiseAbs().rowwise().sum().maxCoeff();
    double dt = std::min(t_end, h_norm > 0 ? 0.1 / h_norm : t_end);
    double time = 0.0;
    Eigen::VectorXcd psi = psi0;
    Eigen::VectorXcd k1 = rhs(psi);

    for (long step = 0; step < 10'000'000; ++step) {
        if (time >= t_end) return psi;
        dt = std::min(dt, t_end - time);
        if (dt < t_end * 1e-15)
            throw AccuracyError("evolve: step size underflow", 0.0);

        const Eigen::VectorXcd k2 = rhs(psi + dt * (a21 * k1));
        const Eigen::VectorXcd k3 = rhs(psi + dt * (a31 * k1 + a32 * k2));
        const Eigen::VectorXcd k4 = rhs(psi + dt * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::VectorXcd k5 =
            rhs(psi + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::VectorXcd k6 =
            rhs(psi + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Eigen::VectorXcd next =
            psi + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::VectorXcd k7 = rhs(next);
        const Eigen::VectorXcd err_vec =
            dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            const double scale = tol + tol * std::max(std::abs(psi[i]), std::abs(next[i]));
            const double r = std::abs(err_vec[i]) / scale;
            err += r * r;
        }
        err = std::sqrt(err / static_cast<double>(psi.size()));

        if (err <= 1.0) {
            time += dt;
            psi = next;
            k1 = k7;  // first-same-as-last
        }
        const double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        dt *= std::clamp(factor, 0.2, 5.0);
    }
    throw AccuracyError("evolve: step budget exhausted", 0.0);
}

Eigen::VectorXcd evolve_expm(const Eigen::MatrixXcd& hamiltonian,
                             const Eigen::VectorXcd& psi0, double t) {
    if (hamiltonian.rows() != psi0.size())
        throw InvalidArgumentError("evolve_expm: dimension mismatch");
    return propagator(hamiltonian, t) * psi0;
}

Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& hamiltonian, double dt) {
    check_dense(hamiltonian.rows(), "propagator");
    const Eigen::MatrixXcd generator =
        std::complex<double>(0.0, -dt) * hamiltonian;
    return generator.exp();
}

std::complex<double> overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (a.size() != b.size()) throw InvalidArgumentError("overlap: dimension mismatch");
    return a.dot(b);
}

Eigen::MatrixXcd partial_trace_field(const DenseState& state) {
    const std::int64_t F = state.layout.fock_dim();
    const int A = state.layout.atomic_dim();
    if (state.amplitudes.size() != state.layout.dimension())
        throw InvalidArgumentError("partial_trace_field: state does not match layout");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(A, A);
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < A; ++b)
            for (std::int64_t f = 0; f < F; ++f)
                rho(a, b) += state.amplitudes[a * F + f] *
                             std::conj(state.amplitudes[b * F + f]);
    return rho;
}

} // namespace decobec::oracle
