#include "lindsym/config.hpp"

#include <fstream>

#include "lindsym/errors.hpp"

namespace lindsym {

Lattice RunConfig::lattice() const {
    try {
        if (lattice_kind == LatticeKind::chain) return Lattice::chain(l);
        return Lattice::rectangle(l1, l2);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
}

SolverOptions RunConfig::solver_options() const {
    SolverOptions opts;
    opts.residual_tol = residual_tol;
    opts.gap_threshold = gap_threshold;
    opts.dense_threshold = dense_threshold;
    return opts;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double d = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return d;
    } catch (const std::exception&) {
        throw config_error("invalid number for " + key + ": '" + value + "'");
    }
}

long parse_int(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const long i = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return i;
    } catch (const std::exception&) {
        throw config_error("invalid integer for " + key + ": '" + value + "'");
    }
}

}  // namespace

void apply_lattice_spec(RunConfig& cfg, const std::string& raw) {
    const std::string spec = trim(raw);
    if (spec.rfind("chain:", 0) == 0) {
        cfg.lattice_kind = LatticeKind::chain;
        cfg.l = static_cast<int>(parse_int("lattice", spec.substr(6)));
        return;
    }
    const auto x = spec.find('x');
    if (x == std::string::npos)
        throw config_error("lattice spec must be 'L1xL2' or 'chain:L', got '" + spec + "'");
    cfg.lattice_kind = LatticeKind::rectangle;
    cfg.l1 = static_cast<int>(parse_int("lattice", spec.substr(0, x)));
    cfg.l2 = static_cast<int>(parse_int("lattice", spec.substr(x + 1)));
}

RunConfig load_config_file(const std::string& path, RunConfig cfg) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");

    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("malformed section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("expected key=value at line " + std::to_string(lineno));
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "lattice.kind") {
            if (value == "chain")
                cfg.lattice_kind = LatticeKind::chain;
            else if (value == "rectangle")
                cfg.lattice_kind = LatticeKind::rectangle;
            else
                throw config_error("lattice.kind must be chain or rectangle");
        } else if (key == "lattice.l") {
            cfg.l = static_cast<int>(parse_int(key, value));
        } else if (key == "lattice.l1") {
            cfg.l1 = static_cast<int>(parse_int(key, value));
        } else if (key == "lattice.l2") {
            cfg.l2 = static_cast<int>(parse_int(key, value));
        } else if (key == "model.jx") {
            cfg.jx = parse_double(key, value);
        } else if (key == "model.jy") {
            cfg.jy = parse_double(key, value);
        } else if (key == "model.jz") {
            cfg.jz = parse_double(key, value);
        } else if (key == "model.gamma") {
            cfg.gamma = parse_double(key, value);
        } else if (key == "model.bond_convention") {
            if (value == "dedup")
                cfg.bond_convention = BondConvention::dedup;
            else if (value == "multigraph")
                cfg.bond_convention = BondConvention::multigraph;
            else
                throw config_error("model.bond_convention must be dedup or multigraph");
        } else if (key == "field.hx") {
            cfg.hx = parse_double(key, value);
        } else if (key == "field.hy") {
            cfg.hy = parse_double(key, value);
        } else if (key == "field.delta") {
            cfg.delta = parse_double(key, value);
        } else if (key == "field.n_theta") {
            cfg.n_theta = static_cast<int>(parse_int(key, value));
        } else if (key == "solver.sector") {
            if (value == "auto")
                cfg.sector = SectorChoice::auto_select;
            else if (value == "full")
                cfg.sector = SectorChoice::full;
            else if (value == "even")
                cfg.sector = SectorChoice::even;
            else
                throw config_error("solver.sector must be auto, full or even");
        } else if (key == "solver.residual_tol") {
            cfg.residual_tol = parse_double(key, value);
        } else if (key == "solver.gap_threshold") {
            cfg.gap_threshold = parse_double(key, value);
        } else if (key == "solver.dense_threshold") {
            cfg.dense_threshold = static_cast<int>(parse_int(key, value));
        } else if (key == "solver.max_enumeration_sites") {
            cfg.max_enumeration_sites = static_cast<int>(parse_int(key, value));
        } else if (key == "sweep.parameter") {
            cfg.sweep_parameter = value;
        } else if (key == "sweep.start") {
            cfg.sweep_start = parse_double(key, value);
        } else if (key == "sweep.stop") {
            cfg.sweep_stop = parse_double(key, value);
        } else if (key == "sweep.step") {
            cfg.sweep_step = parse_double(key, value);
        } else if (key == "output.path") {
            cfg.out_path = value;
        } else if (key == "output.threads") {
            cfg.threads = static_cast<int>(parse_int(key, value));
        } else if (key == "output.seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else {
            throw config_error("unknown config key '" + key + "' at line " +
                               std::to_string(lineno));
        }
    }
    return cfg;
}

}  // namespace lindsym
