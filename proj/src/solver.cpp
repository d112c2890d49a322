#include "lindsym/solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lindsym/errors.hpp"

namespace lindsym {

namespace {

// Bordered square system [[L, t], [t^T, 0]] [c; mu] = [0; 1]. When the
// kernel of L is one-dimensional with nonzero trace, the system is regular
// and c is exactly the trace-normalized null vector.
Eigen::VectorXcd solve_bordered_dense(const Eigen::MatrixXcd& l, const Eigen::VectorXd& t) {
    const Eigen::Index n = l.rows();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    a.topLeftCorner(n, n) = l;
    a.col(n).head(n) = t.cast<cplx>();
    a.row(n).head(n) = t.transpose().cast<cplx>();
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n + 1);
    rhs[n] = 1.0;
    const Eigen::VectorXcd x = a.partialPivLu().solve(rhs);
    return x.head(n);
}

// Shift-invert power iteration toward the smallest-magnitude eigenvalue; the
// strictly positive real shift keeps the factorization regular even when the
// kernel is degenerate.
Eigen::VectorXcd shifted_inverse_iteration(const SparseCplx& l, double shift, int max_steps) {
    const Eigen::Index n = l.rows();
    SparseCplx shifted = l;
    SparseCplx id(n, n);
    id.setIdentity();
    shifted -= cplx{shift, 0.0} * id;
    Eigen::SparseLU<SparseCplx> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success)
        throw convergence_error("shifted sparse factorization failed", -1.0);
    Eigen::VectorXcd x = Eigen::VectorXcd::Ones(n).normalized();
    for (int step = 0; step < max_steps; ++step) {
        x = lu.solve(x).normalized();
        if ((l * x).norm() < shift) break;  // already in the near-kernel
    }
    return x;
}

Eigen::VectorXcd solve_bordered_sparse(const SparseCplx& l, const Eigen::VectorXd& t) {
    const Eigen::Index n = l.rows();
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<size_t>(l.nonZeros()) + 2 * static_cast<size_t>(n));
    for (int k = 0; k < l.outerSize(); ++k)
        for (SparseCplx::InnerIterator it(l, k); it; ++it)
            trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (Eigen::Index k = 0; k < n; ++k) {
        if (t[k] != 0.0) {
            trip.emplace_back(static_cast<int>(k), static_cast<int>(n), cplx{t[k], 0.0});
            trip.emplace_back(static_cast<int>(n), static_cast<int>(k), cplx{t[k], 0.0});
        }
    }
    SparseCplx a(n + 1, n + 1);
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();

    Eigen::SparseLU<SparseCplx> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success) {
        // singular bordered system (degenerate or traceless kernel): fall
        // back to iterating toward the smallest-magnitude eigenvector
        const double shift = 1e-8 * std::max(inf_norm(l), 1.0);
        return shifted_inverse_iteration(l, shift, 200);
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n + 1);
    rhs[n] = 1.0;
    const Eigen::VectorXcd x = lu.solve(rhs);
    return x.head(n);
}

// Kernel extraction by SVD, used when the bordered solve does not converge
// (e.g. a degenerate kernel). Picks the kernel combination with maximal
// trace so that normalization stays possible.
Eigen::VectorXcd kernel_by_svd(const Eigen::MatrixXcd& l, const Eigen::VectorXd& t,
                               double sigma_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(l, Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma[0] : 0.0;
    const double cutoff = std::max(sigma_tol * std::max(smax, 1.0), 1e-300);
    const Eigen::Index n = l.cols();
    std::vector<Eigen::Index> kernel_cols;
    for (Eigen::Index i = 0; i < n; ++i)
        if (sigma[i] <= cutoff) kernel_cols.push_back(i);
    if (kernel_cols.empty())
        throw no_steady_state_error("no null vector within tolerance (smallest singular value " +
                                    std::to_string(sigma[n - 1]) + ")");
    Eigen::VectorXcd combo = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index i : kernel_cols) {
        const Eigen::VectorXcd k = svd.matrixV().col(i);
        const cplx overlap = (t.cast<cplx>().transpose() * k).value();
        combo += std::conj(overlap) * k;
    }
    if (combo.norm() < 1e-12)
        throw no_steady_state_error("kernel contains no normalizable (traceful) state");
    return combo;
}

void fix_phase(Eigen::VectorXcd& c) {
    Eigen::Index arg_max = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double a = std::abs(c[i]);
        if (a > best) {
            best = a;
            arg_max = i;
        }
    }
    if (best <= 0.0) return;
    c *= std::conj(c[arg_max]) / best;
}

void hermitian_symmetrize(Eigen::VectorXcd& c, const InvariantBasis& basis) {
    Eigen::VectorXcd sym(c.size());
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        const auto adj = basis.at(static_cast<size_t>(j)).adjoint_index;
        if (adj < 0 || adj >= c.size())
            throw assembly_error("adjoint index escapes the solved sector");
        sym[j] = 0.5 * (c[j] + std::conj(c[adj]));
    }
    c = std::move(sym);
}

}  // namespace

SteadyState solve_steady(const ReducedLiouvillian& red, const SolverOptions& opts) {
    const Eigen::Index n = red.dim();
    if (n < 1) throw dimension_error("empty reduced generator");
    const double norm = inf_norm(red.entries);
    const double tol = opts.residual_tol * std::max(norm, 1.0);

    auto residual_of = [&](const Eigen::VectorXcd& c) {
        const double cn = c.norm();
        return cn > 0.0 ? (red.entries * c).norm() / cn : std::numeric_limits<double>::infinity();
    };

    Eigen::VectorXcd c;
    if (n <= opts.dense_threshold) {
        const Eigen::MatrixXcd dense = red.entries.toDense();
        c = solve_bordered_dense(dense, red.trace_vector);
        if (!c.allFinite() || residual_of(c) > tol)
            c = kernel_by_svd(dense, red.trace_vector, opts.residual_tol);
    } else {
        c = solve_bordered_sparse(red.entries, red.trace_vector);
    }

    fix_phase(c);
    hermitian_symmetrize(c, *red.basis);

    const cplx trace = (red.trace_vector.cast<cplx>().transpose() * c).value();
    if (std::abs(trace) < 1e-12)
        throw no_steady_state_error("steady-state candidate is traceless");
    c /= trace;

    const double res = residual_of(c);
    if (!(res <= tol))
        throw convergence_error("steady-state residual " + std::to_string(res) +
                                    " above tolerance " + std::to_string(tol),
                                res);

    SteadyState ss;
    ss.basis = red.basis;
    ss.sector = red.sector;
    ss.residual = res;
    ss.coefficients = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(red.basis->size()));
    ss.coefficients.head(n) = c;
    return ss;
}

namespace {

std::pair<cplx, cplx> two_smallest(std::vector<cplx> eigs) {
    std::sort(eigs.begin(), eigs.end(),
              [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    if (eigs.size() == 1) return {eigs[0], eigs[0]};
    return {eigs[0], eigs[1]};
}

std::vector<cplx> arnoldi_shift_invert(const SparseCplx& l, double shift, int krylov_dim) {
    const Eigen::Index n = l.rows();
    SparseCplx shifted = l;
    SparseCplx id(n, n);
    id.setIdentity();
    shifted -= cplx{shift, 0.0} * id;
    Eigen::SparseLU<SparseCplx> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success)
        throw convergence_error("shift-invert factorization failed", -1.0);

    const int m = std::min<int>(krylov_dim, static_cast<int>(n));
    Eigen::MatrixXcd v(n, m + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m + 1, m);
    v.col(0) = Eigen::VectorXcd::Ones(n) / std::sqrt(static_cast<double>(n));
    int steps = m;
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXcd w = lu.solve(v.col(k));
        for (int i = 0; i <= k; ++i) {  // modified Gram-Schmidt
            h(i, k) = v.col(i).dot(w);
            w -= h(i, k) * v.col(i);
        }
        h(k + 1, k) = w.norm();
        if (std::abs(h(k + 1, k)) < 1e-14) {  // invariant subspace found
            steps = k + 1;
            break;
        }
        v.col(k + 1) = w / h(k + 1, k);
    }
    const Eigen::MatrixXcd hm = h.topLeftCorner(steps, steps);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(hm, false);
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(es.eigenvalues().size()));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const cplx theta = es.eigenvalues()[i];
        if (std::abs(theta) > 1e-14) out.push_back(shift + 1.0 / theta);
    }
    return out;
}

}  // namespace

GapReport check_uniqueness(const ReducedLiouvillian& red, const SolverOptions& opts) {
    const Eigen::Index n = red.dim();
    GapReport report;
    if (n == 1) {
        report.smallest = red.entries.coeff(0, 0);
        report.second = report.smallest;
        report.gap = std::abs(report.second);
        report.unique = std::abs(report.smallest) < opts.gap_threshold;
        report.reducible = false;
        return report;
    }

    std::vector<cplx> eigs;
    if (n <= opts.eig_dense_threshold) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(red.entries.toDense(), false);
        eigs.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    } else {
        // A positive real shift never collides with the spectrum: Lindblad
        // eigenvalues have nonpositive real part.
        const double shift = 1e-4 * std::max(inf_norm(red.entries), 1.0);
        eigs = arnoldi_shift_invert(red.entries, shift, opts.krylov_dim);
        if (eigs.size() < 2) throw convergence_error("Arnoldi returned fewer than 2 Ritz values", -1.0);
    }

    auto [l1, l2] = two_smallest(std::move(eigs));
    report.smallest = l1;
    report.second = l2;
    report.gap = std::abs(l2);
    report.unique = std::abs(l1) < opts.gap_threshold && std::abs(l2) >= opts.gap_threshold;
    report.reducible = std::abs(l2) < opts.gap_threshold;
    return report;
}

Eigen::MatrixXcd reconstruct_dense(const SteadyState& ss) {
    const int v = ss.basis->sites();
    if (v > 6) throw resource_limit_error("dense reconstruction capped at 6 sites");
    const Eigen::Index dim = Eigen::Index{1} << v;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    const auto& action = ss.basis->action();
    for (Eigen::Index j = 0; j < ss.coefficients.size(); ++j) {
        const cplx cj = ss.coefficients[j];
        if (cj == cplx{0.0, 0.0}) continue;
        const auto& el = ss.basis->at(static_cast<size_t>(j));
        const cplx amp = cj / std::sqrt(static_cast<double>(el.orbit_size));
        for (const auto& member : action.orbit_members(el.canonical))
            rho(static_cast<Eigen::Index>(member.ket), static_cast<Eigen::Index>(member.bra)) += amp;
    }
    return rho;
}

SteadyState solve_model(const LindbladModel& m, std::shared_ptr<const InvariantBasis> basis,
                        Sector sector, const SolverOptions& opts, int threads) {
    return solve_steady(assemble(m, std::move(basis), sector, threads), opts);
}

}  // namespace lindsym
