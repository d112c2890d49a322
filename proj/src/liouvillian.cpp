#include "lindsym/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <thread>

#include "lindsym/errors.hpp"

namespace lindsym {

namespace {

constexpr double kDropThreshold = 1e-15;

void push(std::vector<std::pair<std::uint64_t, cplx>>& out, ProjectorPair pp, cplx amp) {
    if (amp != cplx{0.0, 0.0}) out.emplace_back(pp.code(), amp);
}

std::vector<std::pair<std::uint64_t, cplx>> expand_generator(const LindbladModel& m,
                                                             ProjectorPair pp) {
    const int v = m.sites;
    std::vector<std::pair<std::uint64_t, cplx>> out;
    const cplx minus_i{0.0, -1.0};

    for (const auto& t : m.hamiltonian) {
        // -i H P: act on the ket.
        if (auto r = apply_string(t, pp.ket, v))
            push(out, {r->first, pp.bra}, minus_i * r->second);
        // +i P H: <m| H = (H^dag |m>)^dag.
        if (auto r = apply_string(adjoint(t), pp.bra, v))
            push(out, {pp.ket, r->first}, cplx{0.0, 1.0} * std::conj(r->second));
    }

    for (const auto& jump : m.jumps) {
        if (jump.rate == 0.0) continue;
        const auto& L = jump.op;
        const auto Ldag = adjoint(L);
        // gamma L P L^dag
        if (auto rk = apply_string(L, pp.ket, v)) {
            if (auto rb = apply_string(L, pp.bra, v))
                push(out, {rk->first, rb->first},
                     jump.rate * rk->second * std::conj(rb->second));
        }
        // -gamma/2 (L^dag L) P
        if (auto r1 = apply_string(L, pp.ket, v)) {
            if (auto r2 = apply_string(Ldag, r1->first, v))
                push(out, {r2->first, pp.bra}, -0.5 * jump.rate * r1->second * r2->second);
        }
        // -gamma/2 P (L^dag L): <m| L^dag L = ((L^dag L)|m>)^dag.
        if (auto r1 = apply_string(L, pp.bra, v)) {
            if (auto r2 = apply_string(Ldag, r1->first, v))
                push(out, {pp.ket, r2->first},
                     -0.5 * jump.rate * std::conj(r1->second * r2->second));
        }
    }

    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::uint64_t, cplx>> combined;
    combined.reserve(out.size());
    for (const auto& [code, amp] : out) {
        if (!combined.empty() && combined.back().first == code)
            combined.back().second += amp;
        else
            combined.emplace_back(code, amp);
    }
    return combined;
}

Eigen::VectorXd trace_vector_for(const InvariantBasis& basis, Eigen::Index n) {
    Eigen::VectorXd t(n);
    for (Eigen::Index k = 0; k < n; ++k) t[k] = basis.at(static_cast<size_t>(k)).trace_value;
    return t;
}

using Triplet = Eigen::Triplet<cplx>;

}  // namespace

std::vector<std::pair<ProjectorPair, cplx>> apply_generator(const LindbladModel& m,
                                                            ProjectorPair pp) {
    std::vector<std::pair<ProjectorPair, cplx>> out;
    for (const auto& [code, amp] : expand_generator(m, pp))
        out.emplace_back(ProjectorPair::from_code(code), amp);
    return out;
}

ReducedLiouvillian assemble(const LindbladModel& m, std::shared_ptr<const InvariantBasis> basis,
                            Sector sector, int threads) {
    if (m.sites != basis->sites()) throw dimension_error("model and basis site counts differ");
    if (sector == Sector::even_only && basis->order() != BasisOrder::canonical)
        throw assembly_error("even-only sector requires a canonically ordered basis");

    const size_t n = sector == Sector::even_only ? basis->dims().even : basis->size();
    const auto& action = basis->action();

    auto lookup_index = [&](ProjectorPair q) -> size_t {
        auto idx = basis->index_of_pair(q);
        if (!idx) throw assembly_error("generator output pair maps outside the basis");
        if (sector == Sector::even_only && *idx >= n)
            throw assembly_error("parity-odd output in even-only assembly");
        return *idx;
    };

    auto run_range = [&](size_t begin, size_t end) {
        std::vector<Triplet> local;
        for (size_t j = begin; j < end; ++j) {
            const auto& el = basis->at(j);
            const double sqrt_oj = std::sqrt(static_cast<double>(el.orbit_size));
            const auto expansion = expand_generator(m, el.canonical);
            std::vector<std::pair<size_t, cplx>> folded;
            folded.reserve(expansion.size());
            for (const auto& [code, amp] : expansion)
                folded.emplace_back(lookup_index(ProjectorPair::from_code(code)), amp);
            std::sort(folded.begin(), folded.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            size_t i = 0;
            while (i < folded.size()) {
                const size_t k = folded[i].first;
                cplx w{0.0, 0.0};
                while (i < folded.size() && folded[i].first == k) w += folded[i++].second;
                const double scale =
                    sqrt_oj / std::sqrt(static_cast<double>(basis->at(k).orbit_size));
                const cplx entry = w * scale;
                if (std::abs(entry) >= kDropThreshold)
                    local.emplace_back(static_cast<int>(k), static_cast<int>(j), entry);
            }
        }
        return local;
    };

    std::vector<Triplet> triplets;
    const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (nthreads == 1) {
        triplets = run_range(0, n);
    } else {
        // Column-parallel: workers own disjoint column ranges, merged in order.
        std::vector<std::future<std::vector<Triplet>>> futures;
        const size_t chunk = (n + static_cast<size_t>(nthreads) - 1) / static_cast<size_t>(nthreads);
        for (int w = 0; w < nthreads; ++w) {
            const size_t begin = static_cast<size_t>(w) * chunk;
            const size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            futures.push_back(std::async(std::launch::async, run_range, begin, end));
        }
        for (auto& f : futures) {
            auto part = f.get();
            triplets.insert(triplets.end(), part.begin(), part.end());
        }
    }

    ReducedLiouvillian red;
    red.sector = sector;
    red.basis = basis;
    red.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    red.entries.setFromTriplets(triplets.begin(), triplets.end());
    red.entries.makeCompressed();
    red.trace_vector = trace_vector_for(*basis, static_cast<Eigen::Index>(n));
    return red;
}

LazyAssemblyResult assemble_lazy(const LindbladModel& m,
                                 std::shared_ptr<const GroupAction> action,
                                 const std::vector<ProjectorPair>& seeds, Sector sector) {
    if (m.sites != action->sites()) throw dimension_error("model and action site counts differ");
    OrbitRegistry registry(action);
    std::deque<size_t> pending;
    for (const auto& s : seeds) {
        if (sector == Sector::even_only && pair_parity(s) != 0)
            throw assembly_error("odd-parity seed in even-only lazy assembly");
        const size_t before = registry.size();
        const size_t idx = registry.find_or_add(s);
        if (registry.size() > before) pending.push_back(idx);
    }

    std::vector<Triplet> triplets;
    while (!pending.empty()) {
        const size_t j = pending.front();
        pending.pop_front();
        const SymmetrizedBasisElement el = registry.at(j);
        const double sqrt_oj = std::sqrt(static_cast<double>(el.orbit_size));
        const auto expansion = expand_generator(m, el.canonical);
        std::vector<std::pair<size_t, cplx>> folded;
        for (const auto& [code, amp] : expansion) {
            const auto q = ProjectorPair::from_code(code);
            if (sector == Sector::even_only && pair_parity(q) != 0)
                throw assembly_error("parity-odd output in even-only lazy assembly");
            const size_t before = registry.size();
            const size_t k = registry.find_or_add(q);
            if (registry.size() > before) pending.push_back(k);
            folded.emplace_back(k, amp);
        }
        std::sort(folded.begin(), folded.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        size_t i = 0;
        while (i < folded.size()) {
            const size_t k = folded[i].first;
            cplx w{0.0, 0.0};
            while (i < folded.size() && folded[i].first == k) w += folded[i++].second;
            const double scale = sqrt_oj / std::sqrt(static_cast<double>(registry.at(k).orbit_size));
            const cplx entry = w * scale;
            if (std::abs(entry) >= kDropThreshold)
                triplets.emplace_back(static_cast<int>(k), static_cast<int>(j), entry);
        }
    }

    const std::uint64_t full_dim = burnside_dim(action->group(), action->sites());
    const bool complete = sector == Sector::full && registry.size() == full_dim;
    auto basis = std::make_shared<InvariantBasis>(std::move(registry).freeze(complete));

    LazyAssemblyResult result;
    result.basis = basis;
    result.liouvillian.sector = sector;
    result.liouvillian.basis = basis;
    const auto n = static_cast<Eigen::Index>(basis->size());
    result.liouvillian.entries.resize(n, n);
    result.liouvillian.entries.setFromTriplets(triplets.begin(), triplets.end());
    result.liouvillian.entries.makeCompressed();
    result.liouvillian.trace_vector = trace_vector_for(*basis, n);
    return result;
}

ParitySplit split_parity(const LindbladModel& m, std::shared_ptr<const InvariantBasis> basis,
                         int threads) {
    std::vector<OperatorString> h_even, h_odd;
    for (const auto& t : m.hamiltonian)
        (parity_of(t) == Parity::even ? h_even : h_odd).push_back(t);

    // Jump strings have definite parity, so L^+ rho L^-dag cross terms vanish
    // and the whole dissipator lands in the parity-preserving part.
    LindbladModel even_part(m.sites, h_even, m.jumps);
    LindbladModel odd_part(m.sites, h_odd, {});

    ParitySplit split;
    split.m_plus = assemble(even_part, basis, Sector::full, threads);
    split.m_minus = assemble(odd_part, basis, Sector::full, threads);
    split.mixes_parity = !h_odd.empty();
    return split;
}

double inf_norm(const SparseCplx& m) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseCplx::InnerIterator it(m, k); it; ++it)
            row_sums[it.row()] += std::abs(it.value());
    return m.rows() == 0 ? 0.0 : row_sums.maxCoeff();
}

}  // namespace lindsym
