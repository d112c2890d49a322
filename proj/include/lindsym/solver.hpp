#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <optional>

#include "lindsym/liouvillian.hpp"

namespace lindsym {

struct SolverOptions {
    // Accepted residual: ||L c|| / ||c|| <= residual_tol * ||L||_inf.
    double residual_tol = 1e-10;
    // An eigenvalue below this magnitude counts as part of the kernel.
    double gap_threshold = 1e-8;
    // Dense decomposition up to this dimension, sparse factorization above.
    Eigen::Index dense_threshold = 5000;
    // Dense eigendecomposition cap for the uniqueness check.
    Eigen::Index eig_dense_threshold = 2048;
    // Krylov size for the shift-invert Arnoldi gap estimate.
    int krylov_dim = 80;
};

// Steady-state coefficient vector over the invariant basis, unit trace.
// The vector always spans the whole basis; indices outside the solved sector
// stay zero.
struct SteadyState {
    Eigen::VectorXcd coefficients;
    std::shared_ptr<const InvariantBasis> basis;
    Sector sector = Sector::full;
    double residual = 0.0;
    std::optional<double> gap_estimate;
};

// Null vector of the reduced generator: bordered factorization (the trace
// functional closes the singular system), singular-value fallback; the
// result is phase-fixed, Hermitian-symmetrized and trace-normalized.
SteadyState solve_steady(const ReducedLiouvillian& red, const SolverOptions& opts = {});

struct GapReport {
    std::complex<double> smallest;  // eigenvalue of least magnitude
    std::complex<double> second;    // next one up
    double gap = 0.0;               // |second|
    bool unique = false;            // exactly one eigenvalue below threshold
    bool reducible = false;         // two or more near-zero eigenvalues
};

// Two smallest-magnitude eigenvalues of the reduced generator; dense
// eigendecomposition below eig_dense_threshold, shift-invert Arnoldi above.
GapReport check_uniqueness(const ReducedLiouvillian& red, const SolverOptions& opts = {});

// Dense 2^V x 2^V reconstruction of sum_j c_j rho_j. Capped at V <= 6.
Eigen::MatrixXcd reconstruct_dense(const SteadyState& ss);

// Assemble-and-solve convenience used by observables and the CLI.
SteadyState solve_model(const LindbladModel& m, std::shared_ptr<const InvariantBasis> basis,
                        Sector sector, const SolverOptions& opts = {}, int threads = 1);

}  // namespace lindsym
