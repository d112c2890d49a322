#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lindsym/fock.hpp"
#include "lindsym/lattice.hpp"

namespace lindsym {

using cplx = std::complex<double>;

enum class LocalOp : std::uint8_t { sx, sy, sz, sp, sm, num };

const char* local_op_name(LocalOp op);

struct Factor {
    int site = 0;
    LocalOp op = LocalOp::sz;

    friend bool operator==(Factor a, Factor b) { return a.site == b.site && a.op == b.op; }
    friend bool operator<(Factor a, Factor b) {
        return a.site != b.site ? a.site < b.site : a.op < b.op;
    }
};

// A product of single-site operators with a complex prefactor. Factors act
// on distinct sites (checked) and therefore commute with each other.
struct OperatorString {
    cplx coefficient{1.0, 0.0};
    std::vector<Factor> factors;  // sorted by site

    OperatorString() = default;
    OperatorString(cplx coeff, std::vector<Factor> fs);

    std::string describe() const;
};

OperatorString adjoint(const OperatorString& t);

// Action on a product state in the occupation basis:
//   sigma^- |0> = 0, sigma^- |1> = |0>, sigma^+ |0> = |1>, sigma^+ |1> = 0,
//   sigma^z |n> = (2n-1)|n>, sigma^x |n> = |1-n>, sigma^y |n> = i(-1)^n |1-n>,
//   num = sigma^+ sigma^-.
// Returns the image state with its amplitude, or nothing when annihilated.
std::optional<std::pair<State, cplx>> apply_string(const OperatorString& t, State s, int v);

struct Jump {
    OperatorString op;
    double rate = 0.0;
};

// Hamiltonian terms plus jump operators with rates; everything is stored as
// site-local operator strings so permutations act by site relabeling.
struct LindbladModel {
    int sites = 0;
    std::vector<OperatorString> hamiltonian;
    std::vector<Jump> jumps;

    LindbladModel() = default;
    LindbladModel(int v, std::vector<OperatorString> h, std::vector<Jump> js);
};

// Dissipative XYZ model: J_a sigma_i^a sigma_j^a on every unique first
// neighbor bond and a sigma^- jump with rate gamma on every site. Terms with
// an exactly zero coupling are omitted.
LindbladModel build_xyz(const Lattice& lat, double jx, double jy, double jz, double gamma,
                        BondConvention convention = BondConvention::dedup);

// Uniform in-plane magnetic field, h_x sigma_i^x + h_y sigma_i^y per site.
std::vector<OperatorString> build_field(int v, double hx, double hy);

// A term anchored at the origin cell: factors carry lattice displacements
// instead of site indices (dy stays 0 on chains).
struct DisplacedFactor {
    int dx = 0;
    int dy = 0;
    LocalOp op = LocalOp::sz;
};
struct TermTemplate {
    cplx coefficient{1.0, 0.0};
    std::vector<DisplacedFactor> factors;
};

// Translation sum of a template: one copy per site, displacements wrapped
// periodically. Wrapped copies on length-2 directions are kept (the sum
// visits each unordered bond twice there). Throws when wrapping collapses
// two factors onto one site.
std::vector<OperatorString> replicate_homogeneous(const Lattice& lat, const TermTemplate& tpl);

// Homogeneous finite-range model: every Hamiltonian template and every
// (template, rate) decay channel replicated over all sites.
LindbladModel build_homogeneous(const Lattice& lat, const std::vector<TermTemplate>& h_templates,
                                const std::vector<std::pair<TermTemplate, double>>& channels);

enum class Parity { even, odd, mixed };

// Number of occupation-flipping factors (sigma^{x,y,+,-}) mod 2; a single
// string always has definite parity.
Parity parity_of(const OperatorString& t);
// A sum classifies mixed when its members disagree.
Parity parity_of(const std::vector<OperatorString>& terms);

// True when every Hamiltonian term is parity-even (jump strings always have
// definite parity, so the dissipator never mixes sectors).
bool is_parity_preserving(const LindbladModel& m);

struct WeakSymmetryReport {
    bool ok = true;
    std::string witness;  // failing group element and term, when not ok
};

// Structural weak-symmetry check: conjugating by any group element must
// permute the Hamiltonian term multiset and the jump multiset onto
// themselves, coefficients compared exactly.
WeakSymmetryReport check_weak_symmetry(const LindbladModel& m, const SymmetryGroup& g);

}  // namespace lindsym
