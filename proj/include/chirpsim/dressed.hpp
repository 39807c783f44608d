// dressed.hpp - instantaneous eigensystem of H(t) with continuity tracking.
//
// Eigen's self-adjoint solver orders eigenpairs by ascending eigenvalue,
// which scrambles the physical branches across avoided crossings. When a
// previous eigenvector set is supplied, the output is re-ordered so that
// each index keeps maximal overlap with its predecessor, and each vector's
// global phase is fixed to make that overlap real positive.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chirpsim/quantum_system.hpp"

namespace chirpsim {

struct Eigensystem {
    Eigen::VectorXd values;    // real eigenvalues, rad/ps
    Eigen::MatrixXcd vectors;  // orthonormal columns
};

namespace detail {

// Greedy assignment on the overlap matrix |prev^dagger cur|: repeatedly take
// the globally largest remaining overlap. Ties within 1e-12 fall back to
// ascending-eigenvalue order (smaller source index wins after sorting).
inline std::vector<int> continuity_assignment(const Eigen::MatrixXcd& previous,
                                              const Eigen::MatrixXcd& current) {
    const int m = static_cast<int>(previous.cols());
    Eigen::MatrixXd overlap = (previous.adjoint() * current).cwiseAbs();
    std::vector<int> source_for_slot(m, -1);
    std::vector<bool> slot_used(m, false), col_used(m, false);
    for (int pick = 0; pick < m; ++pick) {
        int best_slot = -1, best_col = -1;
        double best = -1.0;
        for (int k = 0; k < m; ++k) {
            if (slot_used[k]) continue;
            for (int l = 0; l < m; ++l) {
                if (col_used[l]) continue;
                const double o = overlap(k, l);
                if (o > best + 1e-12 ||
                    (o > best - 1e-12 && (best_slot < 0 || l < best_col))) {
                    best = o;
                    best_slot = k;
                    best_col = l;
                }
            }
        }
        source_for_slot[best_slot] = best_col;
        slot_used[best_slot] = true;
        col_used[best_col] = true;
    }
    return source_for_slot;
}

}  // namespace detail

inline Eigensystem dressed_eigensystem(
    const HamiltonianSnapshot& snap,
    const std::optional<Eigen::MatrixXcd>& previous = std::nullopt) {
    const auto& h = snap.matrix;
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("dressed_eigensystem: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dressed_eigensystem: eigensolver failed");

    Eigensystem out;
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();

    if (previous) {
        if (previous->rows() != h.rows() || previous->cols() != h.cols())
            throw std::invalid_argument("dressed_eigensystem: previous set has wrong shape");
        const auto pick = detail::continuity_assignment(*previous, out.vectors);
        Eigen::VectorXd values(out.values.size());
        Eigen::MatrixXcd vectors(out.vectors.rows(), out.vectors.cols());
        for (int k = 0; k < out.values.size(); ++k) {
            values(k) = out.values(pick[k]);
            vectors.col(k) = out.vectors.col(pick[k]);
            // fix the arbitrary global phase against the predecessor
            const std::complex<double> o =
                previous->col(k).adjoint() * vectors.col(k);
            if (std::abs(o) > 1e-14) vectors.col(k) *= std::conj(o) / std::abs(o);
        }
        out.values = std::move(values);
        out.vectors = std::move(vectors);
    }
    return out;
}

struct DressedFrame {
    std::vector<double> times;
    Eigen::MatrixXd energies;                // times.size() x M, tracked order
    std::vector<Eigen::MatrixXcd> vectors;   // tracked orthonormal sets
};

template <class HBuilder>
DressedFrame dressed_frame(const HBuilder& builder, const std::vector<double>& times) {
    DressedFrame frame;
    frame.times = times;
    frame.vectors.reserve(times.size());
    std::optional<Eigen::MatrixXcd> previous;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto eig = dressed_eigensystem(builder.snapshot(times[i]), previous);
        if (i == 0) frame.energies.resize(times.size(), eig.values.size());
        frame.energies.row(i) = eig.values.transpose();
        frame.vectors.push_back(eig.vectors);
        previous = eig.vectors;
    }
    return frame;
}

}  // namespace chirpsim
