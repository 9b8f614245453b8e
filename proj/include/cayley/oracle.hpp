/**
 * @file oracle.hpp
 * @brief Floating-point spectrum oracle, independent of the exact path.
 *
 * Builds the 0/1 adjacency matrix of Gamma(R, S) directly from the ring's
 * additive structure and diagonalizes it with a dense symmetric eigensolver.
 */
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "cayley/spectra.hpp"

namespace cayley {

/// Sorted (ascending) real eigenvalues of the adjacency matrix
/// A[a][b] = 1 iff b - a in S. Refuses |R| > 4096.
inline std::vector<double> numeric_spectrum_oracle(const CayleyGraphSpec& graph) {
    const FiniteRing& ring = graph.ring();
    const std::size_t order = ring.order();
    if (order > 4096) throw CapExceeded("numeric_spectrum_oracle: ring order exceeds 4096");
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(order),
                                                static_cast<Eigen::Index>(order));
    std::vector<std::uint64_t> a, s, sum;
    for (std::uint64_t ai = 0; ai < order; ++ai) {
        ring.coords_of(ai, a);
        for (std::uint64_t si : graph.connection_set()) {
            ring.coords_of(si, s);
            ring.add_coords(a, s, sum);
            adj(static_cast<Eigen::Index>(ai),
                static_cast<Eigen::Index>(ring.index_of_coords(sum))) = 1.0;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("numeric_spectrum_oracle: eigensolver failed");
    std::vector<double> out(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cayley
