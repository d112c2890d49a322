#pragma once

#include <bit>
#include <cstdint>

#include "lindsym/errors.hpp"
#include "lindsym/lattice.hpp"

namespace lindsym {

// Product basis state of V spin-1/2 sites, encoded as a bit word: bit s is
// the occupation n_s of site s. |0> on a site is the sigma^z = -1 state
// annihilated by sigma^-.
using State = std::uint32_t;

// Ordered pair (n, m) indexing the projector |n><m|.
struct ProjectorPair {
    State ket = 0;
    State bra = 0;

    // Packs (ket, bra) so that integer order equals lexicographic pair order.
    std::uint64_t code() const {
        return (static_cast<std::uint64_t>(ket) << 32) | bra;
    }
    static ProjectorPair from_code(std::uint64_t c) {
        return {static_cast<State>(c >> 32), static_cast<State>(c & 0xffffffffu)};
    }
    ProjectorPair swapped() const { return {bra, ket}; }
    bool diagonal() const { return ket == bra; }

    friend bool operator==(ProjectorPair a, ProjectorPair b) {
        return a.ket == b.ket && a.bra == b.bra;
    }
    friend bool operator<(ProjectorPair a, ProjectorPair b) { return a.code() < b.code(); }
};

// Transports occupations along the permutation: bit p(s) of the result is
// bit s of the input. Permutation matrices on spins produce no phases.
inline State permute_state(const SitePermutation& p, State s) {
    const int v = p.size();
    if (v < 32 && (s >> v) != 0) throw dimension_error("state word wider than permutation");
    State out = 0;
    for (int i = 0; i < v; ++i)
        if ((s >> i) & 1u) out |= State{1} << p(i);
    return out;
}

inline ProjectorPair permute_pair(const SitePermutation& p, ProjectorPair pp) {
    return {permute_state(p, pp.ket), permute_state(p, pp.bra)};
}

// Occupation-number difference of the pair; its parity labels the sector.
inline int delta_n(ProjectorPair pp) {
    return std::popcount(pp.ket) - std::popcount(pp.bra);
}

// 0 for even, 1 for odd Delta N.
inline int pair_parity(ProjectorPair pp) {
    return (std::popcount(pp.ket) + std::popcount(pp.bra)) & 1;
}

}  // namespace lindsym
