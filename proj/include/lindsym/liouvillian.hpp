#pragma once

#include <Eigen/SparseCore>
#include <memory>
#include <vector>

#include "lindsym/model.hpp"
#include "lindsym/orbit_basis.hpp"

namespace lindsym {

using SparseCplx = Eigen::SparseMatrix<cplx>;

enum class Sector { full, even_only };

// The Lindblad generator projected onto the invariant basis:
// entries(k, j) = tr(rho_k^dagger L[rho_j]). In the even_only sector the
// matrix covers basis indices 0..dims.even-1.
struct ReducedLiouvillian {
    SparseCplx entries;
    Sector sector = Sector::full;
    std::shared_ptr<const InvariantBasis> basis;
    Eigen::VectorXd trace_vector;  // tr(rho_k) for the covered indices

    Eigen::Index dim() const { return entries.cols(); }
};

// Expands -i[H, P] + sum_j gamma_j (L P L^dag - 1/2 {L^dag L, P}) of a single
// projector pair in the pair basis; duplicate pairs are combined.
std::vector<std::pair<ProjectorPair, cplx>> apply_generator(const LindbladModel& m,
                                                            ProjectorPair pp);

// Column j holds the expansion of L applied to the canonical representative
// of orbit j, with each output pair folded onto its orbit k and weighted by
// sqrt(|O_j| / |O_k|). Entries below 1e-15 in magnitude are dropped.
// Requires a complete basis; missing orbits raise assembly_error.
ReducedLiouvillian assemble(const LindbladModel& m, std::shared_ptr<const InvariantBasis> basis,
                            Sector sector = Sector::full, int threads = 1);

// Lazy variant for clusters too large to enumerate: orbits are discovered on
// demand, starting from the seed pairs, and columns are assembled until the
// discovered set is closed under the generator. The returned basis is in
// discovery order and may span only the L-reachable invariant subspace.
struct LazyAssemblyResult {
    ReducedLiouvillian liouvillian;
    std::shared_ptr<const InvariantBasis> basis;
};
LazyAssemblyResult assemble_lazy(const LindbladModel& m,
                                 std::shared_ptr<const GroupAction> action,
                                 const std::vector<ProjectorPair>& seeds, Sector sector);

// Parity-split generator per the even/odd decomposition of the Hamiltonian;
// with definite-parity jump strings the dissipator sits entirely in m_plus.
struct ParitySplit {
    ReducedLiouvillian m_plus;
    ReducedLiouvillian m_minus;
    bool mixes_parity = false;  // true iff m_minus has any Hamiltonian content
};
ParitySplit split_parity(const LindbladModel& m, std::shared_ptr<const InvariantBasis> basis,
                         int threads = 1);

// Infinity norm (max absolute row sum).
double inf_norm(const SparseCplx& m);

}  // namespace lindsym
