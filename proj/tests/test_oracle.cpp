#include <doctest.h>

#include <Eigen/Dense>

#include "lindsym/errors.hpp"
#include "lindsym/liouvillian.hpp"
#include "lindsym/oracle.hpp"
#include "lindsym/solver.hpp"

using namespace lindsym;

namespace {

LindbladModel decay_qubit() {
    return LindbladModel(1, {}, {{OperatorString({1.0, 0.0}, {{0, LocalOp::sm}}), 1.0}});
}

}  // namespace

TEST_CASE("full superoperator dimensions") {
    CHECK(build_full(decay_qubit()).matrix.rows() == 4);
    const LindbladModel two_site(2, {}, {{OperatorString({1.0, 0.0}, {{0, LocalOp::sm}}), 1.0}});
    CHECK(build_full(two_site).matrix.rows() == 16);
    CHECK(build_full(build_xyz(Lattice::rectangle(2, 2), 0.9, 1.0, 1.0, 1.0)).matrix.rows() ==
          256);
    const LindbladModel too_big(7, {}, {{OperatorString({1.0, 0.0}, {{0, LocalOp::sm}}), 1.0}});
    CHECK_THROWS_AS(build_full(too_big), resource_limit_error);
}

TEST_CASE("full superoperator agrees with the reduced trivial-group assembly") {
    const auto m = decay_qubit();
    const auto fl = build_full(m);
    const auto basis = std::make_shared<InvariantBasis>(enumerate_basis(SymmetryGroup::trivial(1), 1));
    const auto red = assemble(m, basis);
    // column stacking puts pair (ket, bra) at index bra*2^V + ket
    auto flat = [&](size_t j) {
        const auto& pp = basis->at(j).canonical;
        return static_cast<Eigen::Index>(pp.bra * 2 + pp.ket);
    };
    for (size_t k = 0; k < 4; ++k)
        for (size_t j = 0; j < 4; ++j)
            CHECK(std::abs(fl.matrix(flat(k), flat(j)) -
                           red.entries.coeff(static_cast<Eigen::Index>(k),
                                             static_cast<Eigen::Index>(j))) < 1e-15);
}

TEST_CASE("trace functional lies in the left kernel of the full generator") {
    const auto m = build_xyz(Lattice::chain(3), 0.9, 1.05, 1.0, 1.0);
    const auto fl = build_full(m);
    const Eigen::Index dim = 1 << m.sites;
    Eigen::RowVectorXcd trace_vec = Eigen::RowVectorXcd::Zero(dim * dim);
    for (Eigen::Index n = 0; n < dim; ++n) trace_vec[n * dim + n] = 1.0;
    CHECK((trace_vec * fl.matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("full steady state of the dark model") {
    const LindbladModel m(2, {}, {{OperatorString({1.0, 0.0}, {{0, LocalOp::sm}}), 1.0},
                                  {OperatorString({1.0, 0.0}, {{1, LocalOp::sm}}), 1.0}});
    const auto result = full_steady(build_full(m));
    CHECK(!result.degenerate);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(0, 0) = 1.0;
    CHECK((result.rho - expected).norm() < 1e-10);
    CHECK(result.min_eigenvalue > -1e-10);
}

TEST_CASE("degenerate kernel is reported") {
    // gamma = 0: purely Hamiltonian evolution has many stationary states
    const LindbladModel m(1, {OperatorString({1.0, 0.0}, {{0, LocalOp::sz}})}, {});
    const auto result = full_steady(build_full(m));
    CHECK(result.degenerate);
}

TEST_CASE("numeric weak-symmetry deviation") {
    const auto chain = Lattice::chain(4);
    const auto g = build_chain_group(4);
    LindbladModel m = build_xyz(chain, 0.9, 1.05, 1.0, 1.0);
    CHECK(verify_weak_symmetry_numeric(m, g) < 1e-10);

    // a uniform field commutes with every site permutation
    LindbladModel with_field = m;
    for (auto& t : build_field(4, 1e-3, 0.0)) with_field.hamiltonian.push_back(std::move(t));
    CHECK(verify_weak_symmetry_numeric(with_field, g) < 1e-10);

    // perturbing one bond produces a deviation on the scale of the perturbation
    LindbladModel broken = m;
    broken.hamiltonian[0].coefficient += 0.1;
    CHECK(verify_weak_symmetry_numeric(broken, g) > 1e-3);
}

TEST_CASE("oracle steady state is group invariant and parity even") {
    const auto m = build_xyz(Lattice::rectangle(2, 2), 0.9, 1.05, 1.0, 1.0);
    const auto result = full_steady(build_full(m));
    const auto g = build_rectangle_group(2, 2);
    for (const auto& p : g.elements()) {
        const Eigen::MatrixXcd w = permutation_matrix(p);
        CHECK((w * result.rho * w.adjoint() - result.rho).norm() < 1e-9);
    }
    const Eigen::MatrixXcd parity = parity_matrix(4);
    CHECK((parity * result.rho * parity.adjoint() - result.rho).norm() < 1e-9);
}

TEST_CASE("seeded symmetry check is reproducible") {
    const auto m = build_xyz(Lattice::chain(3), 0.9, 1.05, 1.0, 1.0);
    const auto g = build_chain_group(3);
    CHECK(verify_weak_symmetry_numeric(m, g, 123) == verify_weak_symmetry_numeric(m, g, 123));
}
