#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "lindsym/model.hpp"

namespace lindsym {

// Brute-force full-space reference path. Everything here is dense and scales
// as 4^V x 4^V; it exists to validate the reduced path, not to be fast.

inline constexpr std::uint64_t kDefaultOracleSeed = 987654321u;

// Dense 2^V x 2^V matrix of a sum of operator strings.
Eigen::MatrixXcd dense_operator(const std::vector<OperatorString>& terms, int v);
Eigen::MatrixXcd dense_operator(const OperatorString& term, int v);

// Dense permutation matrix W with W|n> = |permuted n>.
Eigen::MatrixXcd permutation_matrix(const SitePermutation& p);

// Diagonal parity operator exp(-i pi sum_s n_s) = diag((-1)^popcount).
Eigen::MatrixXcd parity_matrix(int v);

// Direct application of the generator to a density matrix.
Eigen::MatrixXcd apply_lindblad_dense(const LindbladModel& m, const Eigen::MatrixXcd& rho);

// Full superoperator on column-stacked density matrices:
//   L = -i (I (x) H - H^T (x) I)
//       + sum_j gamma_j [conj(L_j) (x) L_j - 1/2 I (x) (L^dag L) - 1/2 (L^dag L)^T (x) I].
struct DenseLiouvillian {
    Eigen::MatrixXcd matrix;  // 4^V x 4^V
    int sites = 0;
};
DenseLiouvillian build_full(const LindbladModel& m);  // V <= 6

struct FullSteadyResult {
    Eigen::MatrixXcd rho;            // Hermitized, trace-normalized null vector
    bool degenerate = false;         // a second singular value was also ~0
    double second_singular = 0.0;    // the next-smallest singular value
    double min_eigenvalue = 0.0;     // smallest eigenvalue of rho (positivity)
};
FullSteadyResult full_steady(const DenseLiouvillian& fl);

// Max over group elements and seeded random Hermitian test matrices of
//   || W L[rho] W^dag - L[W rho W^dag] ||_F.
double verify_weak_symmetry_numeric(const LindbladModel& m, const SymmetryGroup& g,
                                    std::uint64_t seed = kDefaultOracleSeed,
                                    int n_test_matrices = 3);  // V <= 5

}  // namespace lindsym
