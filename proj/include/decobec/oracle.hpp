// oracle.hpp — brute-force truncated-Fock verification engine: builds the
// exact Hamiltonians on a product basis and evolves states numerically,
// independently of every closed form it is used to check
#pragma once

#include "decobec/model.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace decobec::oracle {

struct TruncationSpec {
    int max_atoms = 1;
    int max_photons_per_mode = 1;
    int num_modes = 1;
    std::int64_t dimension_cap = 200000;
};

enum class ModelKind { SingleWell, DoubleWell };

// Basis bookkeeping.  Atom sectors are major, the photon multi-index minor
// with the last mode fastest.  Single well: sector n is one atomic state ×
// Fock space.  Double well: sector n splits into n+1 atomic states indexed
// by the right-well occupation j.
class BasisLayout {
  public:
    BasisLayout(ModelKind kind, const TruncationSpec& trunc);  // throws ResourceError over cap

    ModelKind kind() const { return kind_; }
    const TruncationSpec& truncation() const { return trunc_; }
    std::int64_t fock_dim() const { return fock_dim_; }
    std::int64_t dimension() const { return dimension_; }
    int atomic_dim() const { return atomic_dim_; }
    int sector_atomic_dim(int n) const;
    std::int64_t sector_offset(int n) const;
    std::int64_t sector_dim(int n) const;
    // flat atomic index of (sector n, internal state j); j = 0 for single well
    int atomic_index(int n, int j) const;
    int photon_occupation(std::int64_t fock_index, int mode) const;

  private:
    ModelKind kind_;
    TruncationSpec trunc_;
    std::int64_t fock_dim_ = 1;
    std::int64_t dimension_ = 0;
    int atomic_dim_ = 0;
};

struct DenseState {
    Eigen::VectorXcd amplitudes;
    BasisLayout layout;
};

// Sector-n Hamiltonians in angular-frequency units (ħ divided out), dense.
// Mode weights (multiplicities) are folded into the couplings as √w so that
// oracle overlaps reproduce weighted grid sums; the drive enters with an i
// phase (coefficient of a_k is i·n·conj(g_k)), fixing the coherent-state
// phase convention of the closed-form displacement.
Eigen::MatrixXcd sector_hamiltonian_single(const ModeGrid& grid, double omega0,
                                           double kappa, int n,
                                           const TruncationSpec& trunc);
Eigen::MatrixXcd sector_hamiltonian_double(const ModeGrid& grid, double omega,
                                           double delta, int n,
                                           const TruncationSpec& trunc);

// Full block-diagonal Hamiltonians over all sectors (cross-check path).
Eigen::MatrixXcd build_hamiltonian_single(const ModeGrid& grid, double omega0,
                                          double kappa, const TruncationSpec& trunc);
Eigen::MatrixXcd build_hamiltonian_double(const ModeGrid& grid, double omega,
                                          double delta, const TruncationSpec& trunc);

// Adaptive Dormand–Prince 5(4) integration of ψ' = −iHψ from 0 to t.
// Norm is conserved to the requested tolerance; negative t runs backwards.
Eigen::VectorXcd evolve(const Eigen::MatrixXcd& hamiltonian,
                        const Eigen::VectorXcd& psi0, double t, double tol = 1e-10);

// Independent second path: dense matrix exponential (scaling and squaring).
Eigen::VectorXcd evolve_expm(const Eigen::MatrixXcd& hamiltonian,
                             const Eigen::VectorXcd& psi0, double t);

// exp(−iH·dt) for repeated uniform-step propagation.
Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& hamiltonian, double dt);

// ⟨a|b⟩.  Throws InvalidArgumentError on dimension mismatch.
std::complex<double> overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// Reduced atomic density matrix (field register traced out), indexed by the
// flat atomic index of the layout.
Eigen::MatrixXcd partial_trace_field(const DenseState& state);

} // namespace decobec::oracle
