#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lindsym/fock.hpp"
#include "lindsym/lattice.hpp"

namespace lindsym {

// Precomputed action of every group element on the 2^V state words.
// Memory is |G| * 2^V words, so construction is capped at V <= 16.
class GroupAction {
public:
    GroupAction(const SymmetryGroup& g, int v);

    int sites() const { return v_; }
    State dim_hilbert() const { return State{1} << v_; }
    size_t order() const { return table_.size(); }
    const SymmetryGroup& group() const { return group_; }

    State apply(size_t element, State s) const { return table_[element][s]; }
    ProjectorPair apply(size_t element, ProjectorPair pp) const {
        return {apply(element, pp.ket), apply(element, pp.bra)};
    }

    // Lexicographically smallest image over the group together with the
    // number of distinct images (the orbit size).
    std::pair<ProjectorPair, std::uint64_t> canonical(ProjectorPair pp) const;

    // True iff no group image of pp has a smaller code than pp itself.
    bool is_canonical(ProjectorPair pp) const;

    // Distinct orbit members, sorted by code.
    std::vector<ProjectorPair> orbit_members(ProjectorPair pp) const;

private:
    SymmetryGroup group_;
    int v_;
    std::vector<std::vector<State>> table_;
};

// One G-orbit of projector pairs, symmetrized to a unit-norm operator.
// Every orbit member enters with amplitude 1/sqrt(orbit_size).
struct SymmetrizedBasisElement {
    ProjectorPair canonical;
    std::uint64_t orbit_size = 0;
    int parity = 0;             // Delta N mod 2
    double trace_value = 0.0;   // sqrt(orbit_size) for diagonal orbits, else 0
    std::int64_t adjoint_index = -1;
};

struct BasisDims {
    size_t total = 0;
    size_t even = 0;
    size_t odd = 0;
};

enum class BasisOrder {
    canonical,  // even-parity block first, then by canonical pair code
    discovery   // order of first touch during lazy assembly
};

// The orthonormal G-invariant operator basis, one element per orbit.
class InvariantBasis {
public:
    InvariantBasis(std::shared_ptr<const GroupAction> action,
                   std::vector<SymmetrizedBasisElement> elements, BasisOrder order,
                   bool complete);

    size_t size() const { return elements_.size(); }
    const SymmetrizedBasisElement& at(size_t i) const { return elements_[i]; }
    const std::vector<SymmetrizedBasisElement>& elements() const { return elements_; }
    const BasisDims& dims() const { return dims_; }
    BasisOrder order() const { return order_; }
    bool complete() const { return complete_; }
    const GroupAction& action() const { return *action_; }
    std::shared_ptr<const GroupAction> action_ptr() const { return action_; }
    int sites() const { return action_->sites(); }

    std::optional<size_t> index_of_canonical(std::uint64_t code) const;
    // Canonicalizes the pair first, then looks it up.
    std::optional<size_t> index_of_pair(ProjectorPair pp) const;

private:
    std::shared_ptr<const GroupAction> action_;
    std::vector<SymmetrizedBasisElement> elements_;
    std::unordered_map<std::uint64_t, size_t> lookup_;
    BasisDims dims_;
    BasisOrder order_ = BasisOrder::canonical;
    bool complete_ = false;
};

// Exhaustive orbit enumeration over all 4^V pairs. Elements come out in
// canonical order (even block first). Throws resource_limit_error when V
// exceeds the cap; raise the cap explicitly for larger scans.
InvariantBasis enumerate_basis(const SymmetryGroup& g, int v, int max_sites = 10);
InvariantBasis enumerate_basis(std::shared_ptr<const GroupAction> action, int max_sites = 10);

// dim[I_G] by Burnside's lemma: average over the group of 4^(cycle count).
std::uint64_t burnside_dim(const SymmetryGroup& g, int v);

// dim[I_G^+]: (dim[I_G] + avg of signed fixed-point counts)/2 where an
// element contributes 4^(cycle count) when all its cycles have even length
// and 0 otherwise. Validated against direct orbit enumeration in the tests.
std::uint64_t even_dim(const SymmetryGroup& g, int v);

// Growing canonical-pair index used by lazy (discovery-order) assembly.
// Not thread safe; assembly serializes registrations.
class OrbitRegistry {
public:
    explicit OrbitRegistry(std::shared_ptr<const GroupAction> action);

    // Registers the orbit of pp if unseen; returns its index.
    size_t find_or_add(ProjectorPair pp);
    std::optional<size_t> find(ProjectorPair pp) const;

    size_t size() const { return elements_.size(); }
    const SymmetrizedBasisElement& at(size_t i) const { return elements_[i]; }

    // Freezes the registry into a discovery-order basis; adjoint indices are
    // resolved here (the discovered set is closed under pair swap whenever
    // assembly seeded it with self-adjoint pairs).
    InvariantBasis freeze(bool complete) &&;

private:
    std::shared_ptr<const GroupAction> action_;
    std::vector<SymmetrizedBasisElement> elements_;
    std::unordered_map<std::uint64_t, size_t> lookup_;
};

}  // namespace lindsym
