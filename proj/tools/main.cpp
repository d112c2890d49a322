// Command-line front end: dims, steady, sweep, susceptibility, verify,
// basis-dump. Exit codes: 0 ok, 2 config error, 3 convergence failure,
// 4 reducibility warning, 5 verification failure.

#include <CLI11.hpp>
#include <cmath>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "lindsym/config.hpp"
#include "lindsym/errors.hpp"
#include "lindsym/io.hpp"
#include "lindsym/observables.hpp"
#include "lindsym/oracle.hpp"
#include "lindsym/solver.hpp"

namespace {

using namespace lindsym;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitReducible = 4;
constexpr int kExitVerification = 5;

struct FlagOverrides {
    std::optional<std::string> config_path;
    std::optional<std::string> lattice;
    std::optional<double> jx, jy, jz, gamma, hx, hy, delta;
    std::optional<std::string> sector;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
};

void add_common_flags(CLI::App* cmd, FlagOverrides& f) {
    cmd->add_option("--config", f.config_path, "Config file (key=value with sections)");
    cmd->add_option("--lattice", f.lattice, "Lattice spec: 'L1xL2' or 'chain:L'");
    cmd->add_option("--jx", f.jx, "XYZ coupling J_x");
    cmd->add_option("--jy", f.jy, "XYZ coupling J_y");
    cmd->add_option("--jz", f.jz, "XYZ coupling J_z");
    cmd->add_option("--gamma", f.gamma, "Local decay rate");
    cmd->add_option("--hx", f.hx, "Field component h_x");
    cmd->add_option("--hy", f.hy, "Field component h_y");
    cmd->add_option("--delta", f.delta, "Susceptibility field step");
    cmd->add_option("--sector", f.sector, "Sector: auto, full or even");
    cmd->add_option("--out", f.out, "Output CSV path");
    cmd->add_option("--threads", f.threads, "Worker threads");
    cmd->add_option("--seed", f.seed, "Seed for the numeric symmetry check");
}

RunConfig resolve_config(const FlagOverrides& f) {
    RunConfig cfg;
    if (f.config_path) cfg = load_config_file(*f.config_path, cfg);
    if (f.lattice) apply_lattice_spec(cfg, *f.lattice);
    if (f.jx) cfg.jx = *f.jx;
    if (f.jy) cfg.jy = *f.jy;
    if (f.jz) cfg.jz = *f.jz;
    if (f.gamma) cfg.gamma = *f.gamma;
    if (f.hx) cfg.hx = *f.hx;
    if (f.hy) cfg.hy = *f.hy;
    if (f.delta) cfg.delta = *f.delta;
    if (f.sector) {
        if (*f.sector == "auto")
            cfg.sector = SectorChoice::auto_select;
        else if (*f.sector == "full")
            cfg.sector = SectorChoice::full;
        else if (*f.sector == "even")
            cfg.sector = SectorChoice::even;
        else
            throw config_error("--sector must be auto, full or even");
    }
    if (f.out) cfg.out_path = *f.out;
    if (f.threads) cfg.threads = *f.threads;
    if (f.seed) cfg.seed = *f.seed;
    if (cfg.threads < 1) throw config_error("threads must be >= 1");
    return cfg;
}

LindbladModel model_from(const RunConfig& cfg) {
    if (cfg.gamma <= 0.0) throw config_error("gamma must be > 0 for steady-state commands");
    LindbladModel m =
        build_xyz(cfg.lattice(), cfg.jx, cfg.jy, cfg.jz, cfg.gamma, cfg.bond_convention);
    for (auto& t : build_field(m.sites, cfg.hx, cfg.hy)) m.hamiltonian.push_back(std::move(t));
    return m;
}

Sector resolve_sector(const RunConfig& cfg, const LindbladModel& m) {
    const bool preserving = is_parity_preserving(m);
    switch (cfg.sector) {
        case SectorChoice::full:
            return Sector::full;
        case SectorChoice::even:
            if (!preserving)
                throw config_error("sector=even requested but the model mixes parity sectors");
            return Sector::even_only;
        case SectorChoice::auto_select:
            return preserving ? Sector::even_only : Sector::full;
    }
    return Sector::full;
}

std::string default_out(const RunConfig& cfg, const std::string& fallback) {
    return cfg.out_path.empty() ? fallback : cfg.out_path;
}

int cmd_dims(const RunConfig& cfg, bool enumerate_check) {
    const Lattice lat = cfg.lattice();
    const SymmetryGroup g = lattice_group(lat);
    const int v = lat.sites();
    const std::uint64_t dim_h2 = std::uint64_t{1} << (2 * v);
    const std::uint64_t dim = burnside_dim(g, v);
    const std::uint64_t even = even_dim(g, v);
    std::cout << "lattice " << lat.describe() << "  sites " << v << "  |G| " << g.order() << "\n";
    std::cout << "dim[H]^2 " << dim_h2 << "\n";
    std::cout << "dim[I_G] " << dim << "\n";
    std::cout << "dim[I_G+] " << even << "\n";
    if (enumerate_check) {
        const InvariantBasis basis = enumerate_basis(g, v, cfg.max_enumeration_sites);
        std::cout << "enumerated " << basis.size() << " orbits, " << basis.dims().even
                  << " even\n";
        if (basis.size() != dim || basis.dims().even != even) {
            std::cerr << "enumeration disagrees with Burnside counting\n";
            return kExitVerification;
        }
    }
    return kExitOk;
}

struct SolvedInstance {
    std::shared_ptr<const InvariantBasis> basis;
    SteadyState state;
    GapReport gap;
};

SolvedInstance solve_instance(const RunConfig& cfg, const LindbladModel& m) {
    const Lattice lat = cfg.lattice();
    const SymmetryGroup g = lattice_group(lat);
    const auto structural = check_weak_symmetry(m, g);
    if (!structural.ok)
        throw internal_consistency_error("weak-symmetry check failed: " + structural.witness);
    const Sector sector = resolve_sector(cfg, m);
    const SolverOptions opts = cfg.solver_options();

    SolvedInstance out;
    ReducedLiouvillian red;
    if (lat.sites() <= cfg.max_enumeration_sites) {
        out.basis = std::make_shared<InvariantBasis>(
            enumerate_basis(g, lat.sites(), cfg.max_enumeration_sites));
        red = assemble(m, out.basis, sector, cfg.threads);
    } else {
        // Too large to enumerate: discover orbits on demand, seeded with the
        // all-zeros diagonal pair whose reachable set contains the steady state.
        auto action = std::make_shared<GroupAction>(g, lat.sites());
        auto lazy = assemble_lazy(m, action, {ProjectorPair{0, 0}}, sector);
        out.basis = lazy.basis;
        red = std::move(lazy.liouvillian);
    }
    out.state = solve_steady(red, opts);
    out.gap = check_uniqueness(red, opts);
    out.state.gap_estimate = out.gap.gap;
    return out;
}

int cmd_steady(const RunConfig& cfg) {
    const LindbladModel m = model_from(cfg);
    SolvedInstance solved = solve_instance(cfg, m);

    const auto records = coefficient_spectrum(solved.state);
    write_file(default_out(cfg, "steady_coefficients.csv"), spectrum_csv(records));

    const Magnetization mag = magnetization(solved.state);
    std::cout << "sector " << (solved.state.sector == Sector::even_only ? "even" : "full")
              << "  dim " << (solved.state.sector == Sector::even_only
                                  ? solved.basis->dims().even
                                  : solved.basis->size())
              << "\n";
    std::cout << "M_x " << fmt17(mag.mx) << "\n";
    std::cout << "M_y " << fmt17(mag.my) << "\n";
    std::cout << "M_z " << fmt17(mag.mz) << "\n";
    std::cout << "gap " << fmt17(solved.gap.gap) << "\n";
    std::cout << "residual " << fmt17(solved.state.residual) << "\n";
    if (solved.gap.reducible) {
        std::cerr << "warning: second eigenvalue " << fmt17(std::abs(solved.gap.second))
                  << " is also near zero; dynamics may be reducible\n";
        return kExitReducible;
    }
    return kExitOk;
}

int cmd_susceptibility(const RunConfig& cfg) {
    const Lattice lat = cfg.lattice();
    const SymmetryGroup g = lattice_group(lat);
    auto basis = std::make_shared<InvariantBasis>(
        enumerate_basis(g, lat.sites(), cfg.max_enumeration_sites));
    RunConfig zero_field = cfg;
    zero_field.hx = zero_field.hy = 0.0;
    auto builder = [&](double hx, double hy) {
        RunConfig point = zero_field;
        point.hx = hx;
        point.hy = hy;
        return model_from(point);
    };
    const SusceptibilityTensor chi =
        susceptibility(builder, basis, cfg.delta, cfg.solver_options(), cfg.threads);
    const double av = chi_av(chi, cfg.n_theta);

    std::ostringstream os;
    os << "chi_xx,chi_xy,chi_yx,chi_yy,chi_av\n";
    os << fmt17(chi.xx) << ',' << fmt17(chi.xy) << ',' << fmt17(chi.yx) << ',' << fmt17(chi.yy)
       << ',' << fmt17(av) << '\n';
    write_file(default_out(cfg, "susceptibility.csv"), os.str());
    std::cout << os.str();
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.sweep_step == 0.0) throw config_error("sweep step must be nonzero");
    const double span = cfg.sweep_stop - cfg.sweep_start;
    if (span != 0.0 && (span > 0.0) != (cfg.sweep_step > 0.0))
        throw config_error("sweep step direction disagrees with start/stop");
    const int n_points = static_cast<int>(std::floor(span / cfg.sweep_step + 0.5)) + 1;

    const std::string& param = cfg.sweep_parameter;
    if (param != "jx" && param != "jy" && param != "jz" && param != "gamma")
        throw config_error("sweep parameter must be one of jx, jy, jz, gamma");

    const Lattice lat = cfg.lattice();
    const SymmetryGroup g = lattice_group(lat);
    auto basis = std::make_shared<InvariantBasis>(
        enumerate_basis(g, lat.sites(), cfg.max_enumeration_sites));

    struct Row {
        double value = 0.0;
        SusceptibilityTensor chi;
        double av = 0.0;
        std::string status = "ok";
    };
    auto run_point = [&](int i) {
        Row row;
        row.value = cfg.sweep_start + i * cfg.sweep_step;
        try {
            RunConfig point = cfg;
            point.hx = point.hy = 0.0;
            if (param == "jx") point.jx = row.value;
            if (param == "jy") point.jy = row.value;
            if (param == "jz") point.jz = row.value;
            if (param == "gamma") point.gamma = row.value;
            auto builder = [&](double hx, double hy) {
                RunConfig with_field = point;
                with_field.hx = hx;
                with_field.hy = hy;
                return model_from(with_field);
            };
            row.chi = susceptibility(builder, basis, cfg.delta, cfg.solver_options(), 1);
            row.av = chi_av(row.chi, cfg.n_theta);
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
        return row;
    };

    std::vector<Row> rows(static_cast<size_t>(n_points));
    if (cfg.threads > 1) {
        std::vector<std::future<Row>> futures;
        futures.reserve(rows.size());
        for (int i = 0; i < n_points; ++i)
            futures.push_back(std::async(std::launch::async, run_point, i));
        for (int i = 0; i < n_points; ++i) rows[static_cast<size_t>(i)] = futures[static_cast<size_t>(i)].get();
    } else {
        for (int i = 0; i < n_points; ++i) rows[static_cast<size_t>(i)] = run_point(i);
    }

    std::ostringstream os;
    os << param << ",chi_xx,chi_xy,chi_yx,chi_yy,chi_av,status\n";
    int n_ok = 0;
    for (const auto& row : rows) {
        os << fmt17(row.value) << ',' << fmt17(row.chi.xx) << ',' << fmt17(row.chi.xy) << ','
           << fmt17(row.chi.yx) << ',' << fmt17(row.chi.yy) << ',' << fmt17(row.av) << ','
           << row.status << '\n';
        if (row.status == "ok") ++n_ok;
    }
    write_file(default_out(cfg, "sweep.csv"), os.str());
    std::cout << "sweep wrote " << rows.size() << " rows (" << n_ok << " ok)\n";
    return n_ok > 0 ? kExitOk : kExitConvergence;
}

int cmd_verify(const RunConfig& cfg) {
    const Lattice lat = cfg.lattice();
    const int v = lat.sites();
    const SymmetryGroup g = lattice_group(lat);
    const LindbladModel m = model_from(cfg);
    bool all_ok = true;
    std::string first_failure;
    auto record = [&](const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "ok   " : "FAIL ") << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok && all_ok) {
            all_ok = false;
            first_failure = name;
        }
    };

    const GroupCheckReport group_report = verify_group(g);
    record("group axioms", group_report.ok(), group_report.witness);

    const WeakSymmetryReport structural = check_weak_symmetry(m, g);
    record("structural weak symmetry", structural.ok, structural.witness);

    if (v <= 5) {
        const double dev = verify_weak_symmetry_numeric(m, g, cfg.seed);
        record("numeric weak symmetry", dev < 1e-10, "max deviation " + fmt17(dev));
    } else {
        std::cout << "skip numeric weak symmetry (sites > 5)\n";
    }

    if (v <= 5) {
        RunConfig full_cfg = cfg;
        full_cfg.sector = SectorChoice::full;
        const SolvedInstance solved = solve_instance(full_cfg, m);
        const Eigen::MatrixXcd reduced_rho = reconstruct_dense(solved.state);
        const FullSteadyResult full = full_steady(build_full(m));
        const double dist = (reduced_rho - full.rho).norm();
        record("reduced vs full steady state", dist < 1e-8, "Frobenius distance " + fmt17(dist));
        record("full-state positivity", full.min_eigenvalue > -1e-10,
               "min eigenvalue " + fmt17(full.min_eigenvalue));
        if (is_parity_preserving(m)) {
            const Eigen::MatrixXcd p = parity_matrix(v);
            const double parity_dev = (p * full.rho * p.adjoint() - full.rho).norm();
            record("steady-state parity", parity_dev < 1e-9, "deviation " + fmt17(parity_dev));
        }
    } else {
        std::cout << "skip oracle comparison (sites > 5)\n";
    }

    if (!all_ok) {
        std::cerr << "verification failed at: " << first_failure << "\n";
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_basis_dump(const RunConfig& cfg) {
    const Lattice lat = cfg.lattice();
    const SymmetryGroup g = lattice_group(lat);
    const InvariantBasis basis = enumerate_basis(g, lat.sites(), cfg.max_enumeration_sites);
    write_file(default_out(cfg, "basis.csv"), basis_csv(basis));
    std::cout << "wrote " << basis.size() << " basis elements\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry-reduced steady-state solver for dissipative spin-1/2 lattices"};
    app.require_subcommand(1);
    FlagOverrides flags;
    bool enumerate_check = false;

    auto* dims = app.add_subcommand("dims", "Invariant-subspace dimensions (Burnside counting)");
    add_common_flags(dims, flags);
    dims->add_flag("--enumerate", enumerate_check, "Cross-check by orbit enumeration");

    auto* steady = app.add_subcommand("steady", "Solve the steady state, dump coefficients");
    add_common_flags(steady, flags);

    auto* sus = app.add_subcommand("susceptibility", "Susceptibility tensor at the configured point");
    add_common_flags(sus, flags);

    auto* sweep = app.add_subcommand("sweep", "Susceptibility sweep over a coupling");
    add_common_flags(sweep, flags);

    auto* verify = app.add_subcommand("verify", "Group, symmetry and oracle cross-checks");
    add_common_flags(verify, flags);

    auto* dump = app.add_subcommand("basis-dump", "Dump the symmetrized basis as CSV");
    add_common_flags(dump, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = resolve_config(flags);
        if (dims->parsed()) return cmd_dims(cfg, enumerate_check);
        if (steady->parsed()) return cmd_steady(cfg);
        if (sus->parsed()) return cmd_susceptibility(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (dump->parsed()) return cmd_basis_dump(cfg);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const resource_limit_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const convergence_error& e) {
        std::cerr << "convergence failure: " << e.what() << " (residual " << e.residual << ")\n";
        return kExitConvergence;
    } catch (const no_steady_state_error& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
