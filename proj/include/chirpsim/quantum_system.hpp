// quantum_system.hpp - level structure and FM-frame Hamiltonian assembly.
//
// Basis convention: index 0 is the ground state everywhere, index 1 the
// radiatively bright excited state, indices 2..M-1 dark states. The ground
// state sits at zero energy; every excited diagonal carries its static
// detuning plus the common sweep offset N*phidot(t). Only the (0,1) pair
// is radiatively coupled; dark states attach to the bright state (and to
// each other) through the static intramolecular couplings V_ij.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "chirpsim/pulse.hpp"
#include "chirpsim/units.hpp"

namespace chirpsim {

struct QuantumSystem {
    int dim = 2;                 // M >= 2 (ground + M-1 excited levels)
    Eigen::VectorXd detunings;   // Delta_1..Delta_{M-1}, rad/ps
    Eigen::MatrixXd couplings;   // (M-1)x(M-1) symmetric, zero diagonal, rad/ps
    double mu_eff = 1.0;

    void validate() const {
        if (dim < 2) throw std::invalid_argument("system dim must be >= 2");
        if (detunings.size() != dim - 1)
            throw std::invalid_argument("detunings must have dim-1 entries");
        if (couplings.rows() != dim - 1 || couplings.cols() != dim - 1)
            throw std::invalid_argument("couplings must be (dim-1)x(dim-1)");
        for (int i = 0; i < couplings.rows(); ++i) {
            if (couplings(i, i) != 0.0)
                throw std::invalid_argument("couplings diagonal must be zero");
            for (int j = 0; j < i; ++j)
                if (couplings(i, j) != couplings(j, i))
                    throw std::invalid_argument("couplings must be symmetric");
        }
        if (!detunings.allFinite() || !couplings.allFinite() || !std::isfinite(mu_eff))
            throw std::invalid_argument("system parameters must be finite");
    }

    static QuantumSystem two_level(double delta, double mu_eff = 1.0) {
        QuantumSystem s;
        s.dim = 2;
        s.detunings = Eigen::VectorXd::Constant(1, delta);
        s.couplings = Eigen::MatrixXd::Zero(1, 1);
        s.mu_eff = mu_eff;
        return s;
    }

    // Five-level bright/dark model of jet-cooled anthracene; detunings and
    // intramolecular couplings quoted in GHz in the fluorescence
    // quantum-beat literature, converted here to rad/ps.
    static QuantumSystem anthracene_5lvl() {
        QuantumSystem s;
        s.dim = 5;
        s.detunings = Eigen::VectorXd(4);
        s.detunings << 3.23, 1.7, 7.57, 3.7;
        s.detunings *= kGhzToRadPerPs;
        s.couplings = Eigen::MatrixXd(4, 4);
        s.couplings << 0.00, -0.28, -4.24, -1.86,
                      -0.28,  0.00,  0.29,  1.82,
                      -4.24,  0.29,  0.00,  0.94,
                      -1.86,  1.82,  0.94,  0.00;
        s.couplings *= kGhzToRadPerPs;
        s.mu_eff = 1.0;
        return s;
    }
};

struct HamiltonianSnapshot {
    double time = 0.0;
    Eigen::MatrixXcd matrix;  // M x M Hermitian, rad/ps
};

// H = [[0, Omega], [Omega*, Delta + N*phidot]] (hbar = 1)
inline HamiltonianSnapshot two_level_hamiltonian(double t, const PulseSpec& pulse,
                                                 double delta, double mu_eff) {
    const std::complex<double> omega = rabi_frequency(t, pulse, mu_eff);
    const double offset =
        delta + pulse.photon_order * instantaneous_frequency(t, pulse.chirp);
    HamiltonianSnapshot snap;
    snap.time = t;
    snap.matrix.resize(2, 2);
    snap.matrix(0, 0) = 0.0;
    snap.matrix(0, 1) = omega;
    snap.matrix(1, 0) = std::conj(omega);
    snap.matrix(1, 1) = offset;
    return snap;
}

// Zero-order multilevel Hamiltonian: ground row/column vanish beyond the
// radiative (0,1) pair; every excited diagonal is Delta_i + N*phidot(t).
inline HamiltonianSnapshot multilevel_hamiltonian(double t, const PulseSpec& pulse,
                                                  const QuantumSystem& system) {
    system.validate();
    const int m = system.dim;
    const std::complex<double> omega = rabi_frequency(t, pulse, system.mu_eff);
    const double sweep =
        pulse.photon_order * instantaneous_frequency(t, pulse.chirp);

    HamiltonianSnapshot snap;
    snap.time = t;
    snap.matrix = Eigen::MatrixXcd::Zero(m, m);
    snap.matrix(0, 1) = omega;
    snap.matrix(1, 0) = std::conj(omega);
    for (int i = 1; i < m; ++i) {
        snap.matrix(i, i) = system.detunings(i - 1) + sweep;
        for (int j = 1; j < m; ++j)
            if (i != j) snap.matrix(i, j) = system.couplings(i - 1, j - 1);
    }
    return snap;
}

// Static excited-states block: diag(Delta_1..Delta_{M-1}) + V. Its
// eigenvalues are the zero-field eigenstate energies; pairwise differences
// set the quantum-beat frequencies.
inline Eigen::MatrixXd excited_submatrix(const QuantumSystem& system) {
    system.validate();
    Eigen::MatrixXd sub = system.couplings;
    sub += system.detunings.asDiagonal();
    return sub;
}

// Callable Hamiltonian source for the propagator; owns its scratch matrix
// so the integration loop does not allocate.
class HamiltonianBuilder {
  public:
    HamiltonianBuilder(QuantumSystem system, PulseSpec pulse)
        : system_(std::move(system)), pulse_(std::move(pulse)) {
        system_.validate();
        pulse_.validate();
        scratch_ = Eigen::MatrixXcd::Zero(system_.dim, system_.dim);
        for (int i = 1; i < system_.dim; ++i)
            for (int j = 1; j < system_.dim; ++j)
                if (i != j) scratch_(i, j) = system_.couplings(i - 1, j - 1);
    }

    int dim() const { return system_.dim; }
    const QuantumSystem& system() const { return system_; }
    const PulseSpec& pulse() const { return pulse_; }

    const Eigen::MatrixXcd& operator()(double t) const {
        const std::complex<double> omega = rabi_frequency(t, pulse_, system_.mu_eff);
        const double sweep =
            pulse_.photon_order * instantaneous_frequency(t, pulse_.chirp);
        scratch_(0, 1) = omega;
        scratch_(1, 0) = std::conj(omega);
        for (int i = 1; i < system_.dim; ++i)
            scratch_(i, i) = system_.detunings(i - 1) + sweep;
        return scratch_;
    }

    HamiltonianSnapshot snapshot(double t) const {
        return {t, (*this)(t)};
    }

  private:
    QuantumSystem system_;
    PulseSpec pulse_;
    mutable Eigen::MatrixXcd scratch_;
};

}  // namespace chirpsim
