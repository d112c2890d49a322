#pragma once

#include <cstdint>
#include <string>

#include "lindsym/lattice.hpp"
#include "lindsym/solver.hpp"

namespace lindsym {

enum class SectorChoice { auto_select, full, even };

// Flat key=value configuration with [lattice], [model], [field], [solver],
// [sweep] and [output] sections. Command-line flags override file values.
// All energies are in units of gamma when gamma = 1.
struct RunConfig {
    // [lattice]
    LatticeKind lattice_kind = LatticeKind::rectangle;
    int l = 4;   // chain length
    int l1 = 2;  // rectangle sides
    int l2 = 2;

    // [model]
    double jx = 0.9;
    double jy = 1.0;
    double jz = 1.0;
    double gamma = 1.0;
    BondConvention bond_convention = BondConvention::dedup;

    // [field]
    double hx = 0.0;
    double hy = 0.0;
    double delta = 1e-3;  // susceptibility field step
    int n_theta = 256;    // chi_av quadrature points

    // [solver]
    SectorChoice sector = SectorChoice::auto_select;
    double residual_tol = 1e-10;
    double gap_threshold = 1e-8;
    int dense_threshold = 5000;
    int max_enumeration_sites = 10;

    // [sweep]
    std::string sweep_parameter = "jy";
    double sweep_start = 0.8;
    double sweep_stop = 1.2;
    double sweep_step = 0.05;

    // [output]
    std::string out_path;
    int threads = 1;
    std::uint64_t seed = 987654321u;

    Lattice lattice() const;
    SolverOptions solver_options() const;
};

// Parses the config file; unknown keys and malformed lines raise config_error.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// Parses "2x3" or "chain:6" style lattice descriptions.
void apply_lattice_spec(RunConfig& cfg, const std::string& spec);

}  // namespace lindsym
