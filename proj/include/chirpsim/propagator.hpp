// propagator.hpp - Liouville-von Neumann and Schroedinger integration.
//
// The density matrix obeys drho/dt = i [rho, H(t)] (hbar = 1); the
// state-vector route integrates dpsi/dt = -i H(t) psi and serves as an
// independent cross-check for pure states. Evolution is unitary (no
// dissipation terms), so trace, hermiticity and purity conservation are
// test signals: nothing is re-normalized or re-symmetrized during the run.
//
// Default integrator is fixed-step RK4 with step <= (1/50) / ||H||_max,
// where ||H|| is estimated as (max absolute element) * M sampled over the
// window. RK45 (Dormand-Prince, adaptive) is available as an alternative.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chirpsim {

class IntegrationError : public std::runtime_error {
  public:
    IntegrationError(const std::string& what, double time)
        : std::runtime_error(what + " at t = " + std::to_string(time) + " ps"),
          time_(time) {}
    double time() const { return time_; }

  private:
    double time_;
};

struct DensityMatrix {
    Eigen::MatrixXcd matrix;

    static DensityMatrix ground(int dim) {
        DensityMatrix rho;
        rho.matrix = Eigen::MatrixXcd::Zero(dim, dim);
        rho.matrix(0, 0) = 1.0;
        return rho;
    }

    static DensityMatrix pure(const Eigen::VectorXcd& psi) {
        DensityMatrix rho;
        rho.matrix = psi * psi.adjoint();
        return rho;
    }

    // Hermitian within 1e-9, unit trace within 1e-9, spectrum in [0,1]
    // up to 1e-9.
    void validate() const {
        if (matrix.rows() != matrix.cols() || matrix.rows() < 1)
            throw std::invalid_argument("density matrix must be square");
        if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
            throw std::invalid_argument("density matrix is not Hermitian");
        if (std::abs(matrix.trace().real() - 1.0) > 1e-9 ||
            std::abs(matrix.trace().imag()) > 1e-9)
            throw std::invalid_argument("density matrix trace must be 1");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
            matrix, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -1e-9 ||
            solver.eigenvalues().maxCoeff() > 1.0 + 1e-9)
            throw std::invalid_argument("density matrix eigenvalues outside [0, 1]");
    }
};

inline double purity(const Eigen::MatrixXcd& rho) {
    return (rho * rho).trace().real();
}

struct DensityTrajectory {
    std::vector<double> times;              // strictly increasing, ps
    std::vector<Eigen::MatrixXcd> states;   // one density matrix per time

    int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().rows()); }
};

struct StateTrajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
};

enum class IntegratorMethod { RK4, RK45Adaptive };

struct IntegratorConfig {
    IntegratorMethod method = IntegratorMethod::RK4;
    double step = 0.0;         // ps; 0 = derive from the default rule
    double tolerance = 1e-10;  // per-step elementwise tolerance (RK45)
    int store_points = 2000;   // stored grid size (integrator may substep)

    void validate() const {
        if (step < 0.0 || !std::isfinite(step))
            throw std::invalid_argument("integrator step must be >= 0 and finite");
        if (!(tolerance > 0.0) || !std::isfinite(tolerance))
            throw std::invalid_argument("integrator tolerance must be > 0");
        if (store_points < 2)
            throw std::invalid_argument("store_points must be >= 2");
    }
};

// step <= (1/50) / ||H||_max with ||H|| ~ (max |element|) * M, sampled on a
// fine grid over [t0, t1].
template <class HBuilder>
double default_step(const HBuilder& h, double t0, double t1, int samples = 2001) {
    double hmax = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = t0 + (t1 - t0) * i / (samples - 1);
        const Eigen::MatrixXcd& m = h(t);
        hmax = std::max(hmax, m.cwiseAbs().maxCoeff() * m.rows());
    }
    if (hmax <= 0.0) return (t1 - t0) / 100.0;  // free system: any step works
    return 1.0 / (50.0 * hmax);
}

namespace detail {

// Dormand-Prince 5(4) tableau
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
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
    // difference between 5th- and embedded 4th-order weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
};

// Generic driver over a state type (matrix or vector). Deriv has signature
// deriv(t, state, out). Store callback fires at every grid time, including
// t0.
template <class State, class Deriv>
void integrate_on_grid(State state, Deriv&& deriv, const std::vector<double>& grid,
                       const IntegratorConfig& cfg, double base_step,
                       const std::function<void(double, const State&)>& store) {
    store(grid.front(), state);

    State k1 = state, k2 = state, k3 = state, k4 = state, k5 = state,
          k6 = state, k7 = state, tmp = state;

    double h_adapt = base_step;
    for (std::size_t seg = 0; seg + 1 < grid.size(); ++seg) {
        const double ta = grid[seg], tb = grid[seg + 1];
        if (cfg.method == IntegratorMethod::RK4) {
            const long n = std::max<long>(1, static_cast<long>(std::ceil((tb - ta) / base_step - 1e-12)));
            const double h = (tb - ta) / static_cast<double>(n);
            double t = ta;
            for (long i = 0; i < n; ++i) {
                deriv(t, state, k1);
                tmp = state + (h / 2) * k1;
                deriv(t + h / 2, tmp, k2);
                tmp = state + (h / 2) * k2;
                deriv(t + h / 2, tmp, k3);
                tmp = state + h * k3;
                deriv(t + h, tmp, k4);
                state += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                t = ta + (tb - ta) * static_cast<double>(i + 1) / static_cast<double>(n);
            }
        } else {
            double t = ta;
            while (t < tb - 1e-12 * std::abs(tb - ta)) {
                double h = std::min(h_adapt, tb - t);
                using D = Dopri5;
                deriv(t, state, k1);
                for (;;) {
                    tmp = state + h * D::a21 * k1;
                    deriv(t + D::c2 * h, tmp, k2);
                    tmp = state + h * (D::a31 * k1 + D::a32 * k2);
                    deriv(t + D::c3 * h, tmp, k3);
                    tmp = state + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3);
                    deriv(t + D::c4 * h, tmp, k4);
                    tmp = state + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 +
                                       D::a54 * k4);
                    deriv(t + D::c5 * h, tmp, k5);
                    tmp = state + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 +
                                       D::a64 * k4 + D::a65 * k5);
                    deriv(t + h, tmp, k6);
                    tmp = state + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 +
                                       D::b5 * k5 + D::b6 * k6);
                    deriv(t + h, tmp, k7);
                    const double err =
                        (h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 +
                              D::e6 * k6 + D::e7 * k7))
                            .cwiseAbs()
                            .maxCoeff();
                    if (err <= cfg.tolerance || h <= 1e-12) {
                        state = tmp;
                        t += h;
                        const double grow =
                            err > 0 ? 0.9 * std::pow(cfg.tolerance / err, 0.2) : 5.0;
                        h_adapt = h * std::clamp(grow, 0.2, 5.0);
                        break;
                    }
                    h *= std::max(0.2, 0.9 * std::pow(cfg.tolerance / err, 0.2));
                    if (h < 1e-14 * std::max(1.0, std::abs(tb)))
                        throw IntegrationError("adaptive step underflow", t);
                }
            }
        }
        if (!state.allFinite())
            throw IntegrationError("integration produced non-finite values", tb);
        store(tb, state);
    }
}

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return out;
}

}  // namespace detail

// Integrates drho/dt = i [rho, H(t)] over [t0, t1], storing cfg.store_points
// snapshots on a uniform grid.
template <class HBuilder>
DensityTrajectory evolve_density(const HBuilder& hamiltonian,
                                 const DensityMatrix& rho0, double t0, double t1,
                                 const IntegratorConfig& cfg = {}) {
    cfg.validate();
    rho0.validate();
    if (!(t0 < t1)) throw std::invalid_argument("evolve_density: empty window");

    const double step =
        cfg.step > 0.0 ? cfg.step : default_step(hamiltonian, t0, t1);
    const std::complex<double> I(0.0, 1.0);

    DensityTrajectory traj;
    traj.times.reserve(cfg.store_points);
    traj.states.reserve(cfg.store_points);

    Eigen::MatrixXcd hrho(rho0.matrix.rows(), rho0.matrix.cols());
    auto deriv = [&](double t, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) {
        const Eigen::MatrixXcd& h = hamiltonian(t);
        hrho.noalias() = rho * h;
        out.noalias() = h * rho;
        out = I * (hrho - out);
    };

    detail::integrate_on_grid<Eigen::MatrixXcd>(
        rho0.matrix, deriv, detail::linspace(t0, t1, cfg.store_points), cfg, step,
        [&](double t, const Eigen::MatrixXcd& rho) {
            traj.times.push_back(t);
            traj.states.push_back(rho);
        });
    return traj;
}

// Integrates dpsi/dt = -i H(t) psi; the outer product psi psi^dagger must
// match evolve_density for pure initial states.
template <class HBuilder>
StateTrajectory evolve_statevector(const HBuilder& hamiltonian,
                                   const Eigen::VectorXcd& psi0, double t0,
                                   double t1, const IntegratorConfig& cfg = {}) {
    cfg.validate();
    if (std::abs(psi0.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("evolve_statevector: psi0 must be normalized");
    if (!(t0 < t1)) throw std::invalid_argument("evolve_statevector: empty window");

    const double step =
        cfg.step > 0.0 ? cfg.step : default_step(hamiltonian, t0, t1);
    const std::complex<double> I(0.0, 1.0);

    StateTrajectory traj;
    traj.times.reserve(cfg.store_points);
    traj.states.reserve(cfg.store_points);

    auto deriv = [&](double t, const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) {
        out.noalias() = hamiltonian(t) * psi;
        out *= -I;
    };

    detail::integrate_on_grid<Eigen::VectorXcd>(
        psi0, deriv, detail::linspace(t0, t1, cfg.store_points), cfg, step,
        [&](double t, const Eigen::VectorXcd& psi) {
            traj.times.push_back(t);
            traj.states.push_back(psi);
        });
    return traj;
}

// Max over stored times and levels of |P_i^{(a)} - P_i^{(b)}| between two
// runs of the same scenario (used with steps h and h/2).
inline double convergence_check(const DensityTrajectory& a,
                                const DensityTrajectory& b) {
    if (a.times.size() != b.times.size() || a.dim() != b.dim())
        throw std::invalid_argument("convergence_check: mismatched scenarios");
    double dev = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        if (std::abs(a.times[i] - b.times[i]) > 1e-9)
            throw std::invalid_argument("convergence_check: mismatched time grids");
        for (int k = 0; k < a.dim(); ++k)
            dev = std::max(dev, std::abs(a.states[i](k, k).real() -
                                         b.states[i](k, k).real()));
    }
    return dev;
}

}  // namespace chirpsim
