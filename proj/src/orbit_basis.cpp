#include "lindsym/orbit_basis.hpp"

#include <algorithm>
#include <cmath>

#include "lindsym/errors.hpp"

namespace lindsym {

GroupAction::GroupAction(const SymmetryGroup& g, int v) : group_(g), v_(v) {
    if (v != g.sites()) throw dimension_error("group acts on a different site count");
    if (v < 1 || v > 16) throw resource_limit_error("group action tables support 1..16 sites");
    const State dim = State{1} << v;
    table_.resize(g.order());
    for (size_t e = 0; e < g.order(); ++e) {
        table_[e].resize(dim);
        const auto& p = g.element(e);
        for (State s = 0; s < dim; ++s) table_[e][s] = permute_state(p, s);
    }
}

std::pair<ProjectorPair, std::uint64_t> GroupAction::canonical(ProjectorPair pp) const {
    std::uint64_t best = pp.code();
    std::vector<std::uint64_t> codes;
    codes.reserve(order());
    for (size_t e = 0; e < order(); ++e) {
        const std::uint64_t c = apply(e, pp).code();
        codes.push_back(c);
        best = std::min(best, c);
    }
    std::sort(codes.begin(), codes.end());
    const auto distinct = std::unique(codes.begin(), codes.end()) - codes.begin();
    return {ProjectorPair::from_code(best), static_cast<std::uint64_t>(distinct)};
}

bool GroupAction::is_canonical(ProjectorPair pp) const {
    const std::uint64_t self = pp.code();
    for (size_t e = 1; e < order(); ++e)  // element 0 is the identity
        if (apply(e, pp).code() < self) return false;
    return true;
}

std::vector<ProjectorPair> GroupAction::orbit_members(ProjectorPair pp) const {
    std::vector<std::uint64_t> codes;
    codes.reserve(order());
    for (size_t e = 0; e < order(); ++e) codes.push_back(apply(e, pp).code());
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    std::vector<ProjectorPair> members;
    members.reserve(codes.size());
    for (auto c : codes) members.push_back(ProjectorPair::from_code(c));
    return members;
}

namespace {

SymmetrizedBasisElement make_element(ProjectorPair canonical, std::uint64_t orbit_size) {
    SymmetrizedBasisElement el;
    el.canonical = canonical;
    el.orbit_size = orbit_size;
    el.parity = pair_parity(canonical);
    el.trace_value = canonical.diagonal() ? std::sqrt(static_cast<double>(orbit_size)) : 0.0;
    return el;
}

}  // namespace

InvariantBasis::InvariantBasis(std::shared_ptr<const GroupAction> action,
                               std::vector<SymmetrizedBasisElement> elements, BasisOrder order,
                               bool complete)
    : action_(std::move(action)),
      elements_(std::move(elements)),
      order_(order),
      complete_(complete) {
    lookup_.reserve(elements_.size());
    for (size_t i = 0; i < elements_.size(); ++i) {
        lookup_.emplace(elements_[i].canonical.code(), i);
        dims_.total++;
        (elements_[i].parity == 0 ? dims_.even : dims_.odd)++;
    }
}

std::optional<size_t> InvariantBasis::index_of_canonical(std::uint64_t code) const {
    auto it = lookup_.find(code);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<size_t> InvariantBasis::index_of_pair(ProjectorPair pp) const {
    return index_of_canonical(action_->canonical(pp).first.code());
}

InvariantBasis enumerate_basis(const SymmetryGroup& g, int v, int max_sites) {
    return enumerate_basis(std::make_shared<GroupAction>(g, v), max_sites);
}

InvariantBasis enumerate_basis(std::shared_ptr<const GroupAction> action, int max_sites) {
    const int v = action->sites();
    if (v > max_sites)
        throw resource_limit_error("exhaustive enumeration capped at " +
                                   std::to_string(max_sites) + " sites (requested " +
                                   std::to_string(v) + ")");
    const State dim = action->dim_hilbert();
    std::vector<SymmetrizedBasisElement> elems;
    for (State ket = 0; ket < dim; ++ket) {
        for (State bra = 0; bra < dim; ++bra) {
            const ProjectorPair pp{ket, bra};
            if (!action->is_canonical(pp)) continue;
            auto [canon, size] = action->canonical(pp);
            elems.push_back(make_element(canon, size));
        }
    }
    // Even-parity block first, then canonical code, so that sector indices
    // 0..dims.even-1 address exactly the even subspace.
    std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) {
        if (a.parity != b.parity) return a.parity < b.parity;
        return a.canonical.code() < b.canonical.code();
    });

    InvariantBasis basis(action, std::move(elems), BasisOrder::canonical, true);
    // Adjoint indices need the final ordering, so resolve them in a second pass.
    std::vector<SymmetrizedBasisElement> withadj = basis.elements();
    for (auto& el : withadj) {
        auto idx = basis.index_of_pair(el.canonical.swapped());
        el.adjoint_index = static_cast<std::int64_t>(*idx);
    }
    return InvariantBasis(basis.action_ptr(), std::move(withadj), BasisOrder::canonical, true);
}

std::uint64_t burnside_dim(const SymmetryGroup& g, int v) {
    if (v != g.sites()) throw dimension_error("group acts on a different site count");
    std::uint64_t sum = 0;
    for (const auto& p : g.elements()) sum += std::uint64_t{1} << (2 * p.cycle_count());
    return sum / g.order();
}

std::uint64_t even_dim(const SymmetryGroup& g, int v) {
    if (v != g.sites()) throw dimension_error("group acts on a different site count");
    std::uint64_t sum = 0;
    std::uint64_t signed_sum = 0;
    for (const auto& p : g.elements()) {
        const auto lengths = p.cycle_lengths();
        sum += std::uint64_t{1} << (2 * lengths.size());
        const bool all_even =
            std::all_of(lengths.begin(), lengths.end(), [](int l) { return l % 2 == 0; });
        if (all_even) signed_sum += std::uint64_t{1} << (2 * lengths.size());
    }
    return (sum / g.order() + signed_sum / g.order()) / 2;
}

OrbitRegistry::OrbitRegistry(std::shared_ptr<const GroupAction> action)
    : action_(std::move(action)) {}

size_t OrbitRegistry::find_or_add(ProjectorPair pp) {
    auto [canon, size] = action_->canonical(pp);
    auto it = lookup_.find(canon.code());
    if (it != lookup_.end()) return it->second;
    const size_t idx = elements_.size();
    elements_.push_back(make_element(canon, size));
    lookup_.emplace(canon.code(), idx);
    return idx;
}

std::optional<size_t> OrbitRegistry::find(ProjectorPair pp) const {
    auto it = lookup_.find(action_->canonical(pp).first.code());
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

InvariantBasis OrbitRegistry::freeze(bool complete) && {
    for (auto& el : elements_) {
        const auto canon = action_->canonical(el.canonical.swapped()).first;
        auto it = lookup_.find(canon.code());
        if (it == lookup_.end())
            throw assembly_error("discovered orbit set is not closed under adjoint");
        el.adjoint_index = static_cast<std::int64_t>(it->second);
    }
    return InvariantBasis(action_, std::move(elements_), BasisOrder::discovery, complete);
}

}  // namespace lindsym
