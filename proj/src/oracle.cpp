#include "lindsym/oracle.hpp"

#include <Eigen/SVD>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "lindsym/errors.hpp"
#include "lindsym/fock.hpp"

namespace lindsym {

Eigen::MatrixXcd dense_operator(const OperatorString& term, int v) {
    const Eigen::Index dim = Eigen::Index{1} << v;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (State n = 0; n < static_cast<State>(dim); ++n)
        if (auto r = apply_string(term, n, v)) out(static_cast<Eigen::Index>(r->first), n) += r->second;
    return out;
}

Eigen::MatrixXcd dense_operator(const std::vector<OperatorString>& terms, int v) {
    const Eigen::Index dim = Eigen::Index{1} << v;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : terms) out += dense_operator(t, v);
    return out;
}

Eigen::MatrixXcd permutation_matrix(const SitePermutation& p) {
    const Eigen::Index dim = Eigen::Index{1} << p.size();
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, dim);
    for (State n = 0; n < static_cast<State>(dim); ++n)
        w(static_cast<Eigen::Index>(permute_state(p, n)), n) = 1.0;
    return w;
}

Eigen::MatrixXcd parity_matrix(int v) {
    const Eigen::Index dim = Eigen::Index{1} << v;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (State n = 0; n < static_cast<State>(dim); ++n)
        p(n, n) = std::popcount(n) % 2 == 0 ? 1.0 : -1.0;
    return p;
}

Eigen::MatrixXcd apply_lindblad_dense(const LindbladModel& m, const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXcd h = dense_operator(m.hamiltonian, m.sites);
    Eigen::MatrixXcd out = cplx{0.0, -1.0} * (h * rho - rho * h);
    for (const auto& jump : m.jumps) {
        const Eigen::MatrixXcd l = dense_operator(jump.op, m.sites);
        const Eigen::MatrixXcd ldl = l.adjoint() * l;
        out += jump.rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

DenseLiouvillian build_full(const LindbladModel& m) {
    if (m.sites > 6) throw resource_limit_error("full superoperator capped at 6 sites");
    const Eigen::Index dim = Eigen::Index{1} << m.sites;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd h = dense_operator(m.hamiltonian, m.sites);

    DenseLiouvillian fl;
    fl.sites = m.sites;
    fl.matrix = cplx{0.0, -1.0} *
                (Eigen::kroneckerProduct(id, h) - Eigen::kroneckerProduct(h.transpose(), id));
    for (const auto& jump : m.jumps) {
        const Eigen::MatrixXcd l = dense_operator(jump.op, m.sites);
        const Eigen::MatrixXcd ldl = l.adjoint() * l;
        fl.matrix += jump.rate * (Eigen::kroneckerProduct(l.conjugate(), l) -
                                  0.5 * Eigen::kroneckerProduct(id, ldl) -
                                  0.5 * Eigen::kroneckerProduct(ldl.transpose(), id));
    }
    return fl;
}

FullSteadyResult full_steady(const DenseLiouvillian& fl) {
    const Eigen::Index dim2 = fl.matrix.rows();
    const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(dim2))));

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(fl.matrix, Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma[0] : 0.0;
    const Eigen::VectorXcd null_vec = svd.matrixV().col(dim2 - 1);

    FullSteadyResult result;
    result.second_singular = dim2 >= 2 ? sigma[dim2 - 2] : 0.0;
    result.degenerate = result.second_singular < 1e-10 * std::max(smax, 1.0);

    // Column stacking: entry (r, c) sits at index c*dim + r.
    Eigen::MatrixXcd rho(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) rho.col(c) = null_vec.segment(c * dim, dim);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const cplx tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw no_steady_state_error("full-space null vector is traceless");
    rho /= tr;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    result.min_eigenvalue = es.eigenvalues().minCoeff();
    result.rho = std::move(rho);
    return result;
}

double verify_weak_symmetry_numeric(const LindbladModel& m, const SymmetryGroup& g,
                                    std::uint64_t seed, int n_test_matrices) {
    if (m.sites > 5) throw resource_limit_error("numeric symmetry check capped at 5 sites");
    if (m.sites != g.sites()) throw dimension_error("model and group site counts differ");
    const Eigen::Index dim = Eigen::Index{1} << m.sites;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < n_test_matrices; ++t) {
        Eigen::MatrixXcd a(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = cplx{unit(rng), unit(rng)};
        const Eigen::MatrixXcd rho = 0.5 * (a + a.adjoint());
        const Eigen::MatrixXcd lrho = apply_lindblad_dense(m, rho);
        for (const auto& p : g.elements()) {
            const Eigen::MatrixXcd w = permutation_matrix(p);
            const double dev =
                (w * lrho * w.adjoint() - apply_lindblad_dense(m, w * rho * w.adjoint())).norm();
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

}  // namespace lindsym
