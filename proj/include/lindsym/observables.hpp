#pragma once

#include <functional>
#include <vector>

#include "lindsym/solver.hpp"

namespace lindsym {

// tr(O rho_ss) evaluated directly on the orbit structure: every orbit member
// contributes its matrix element with amplitude c_j / sqrt(orbit size). No
// dense reconstruction.
cplx expect(const std::vector<OperatorString>& op, const SteadyState& ss);
cplx expect(const OperatorString& op, const SteadyState& ss);

struct Magnetization {
    double mx = 0.0;
    double my = 0.0;
    double mz = 0.0;
};

// Per-site magnetizations; site transitivity of the group makes the response
// uniform, which is asserted (spread below 1e-10) before averaging.
Magnetization magnetization(const SteadyState& ss);

struct SusceptibilityTensor {
    double xx = 0.0;
    double xy = 0.0;
    double yx = 0.0;
    double yy = 0.0;
};

// Builds the model at a given in-plane field.
using FieldModelBuilder = std::function<LindbladModel(double hx, double hy)>;

// chi_ab = [M_a(h_b = +delta) - M_a(h_b = -delta)] / (2 delta) from four
// full-sector steady-state solves. The h = 0 model must be parity
// preserving so that M(0) = 0.
SusceptibilityTensor susceptibility(const FieldModelBuilder& builder,
                                    std::shared_ptr<const InvariantBasis> basis, double delta = 1e-3,
                                    const SolverOptions& opts = {}, int threads = 1);

// Angular average (1/2pi) int |(chi_xx cos + chi_xy sin, chi_yx cos + chi_yy sin)| dtheta
// by the periodic trapezoid rule.
double chi_av(const SusceptibilityTensor& chi, int n_theta = 256);

struct SpectrumRecord {
    size_t rank = 0;         // position in decreasing-|c| order
    size_t basis_index = 0;  // position in basis order
    cplx c;
    double abs_c = 0.0;
    int delta_n = 0;
    int parity = 0;
    std::uint64_t orbit_size = 0;
};

// All coefficients sorted by |c| descending (ties by basis index); the basis
// ordering is recoverable through basis_index.
std::vector<SpectrumRecord> coefficient_spectrum(const SteadyState& ss);

}  // namespace lindsym
