#include "lindsym/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "lindsym/errors.hpp"

namespace lindsym {

Lattice Lattice::chain(int l) {
    if (l < 2) throw std::invalid_argument("chain length must be >= 2");
    Lattice lat;
    lat.kind = LatticeKind::chain;
    lat.l1 = l;
    lat.l2 = 1;
    return lat;
}

Lattice Lattice::rectangle(int l1, int l2) {
    if (l1 < 2 || l2 < 2) throw std::invalid_argument("rectangle sides must be >= 2");
    Lattice lat;
    lat.kind = LatticeKind::rectangle;
    lat.l1 = l1;
    lat.l2 = l2;
    return lat;
}

int Lattice::site(int x, int y) const {
    x = ((x % l1) + l1) % l1;
    y = ((y % l2) + l2) % l2;
    return x + l1 * y;
}

std::vector<std::pair<int, int>> Lattice::bonds(BondConvention convention) const {
    std::vector<std::pair<int, int>> all;
    if (kind == LatticeKind::chain) {
        for (int s = 0; s < l1; ++s) {
            int t = (s + 1) % l1;
            all.emplace_back(std::min(s, t), std::max(s, t));
        }
    } else {
        for (int y = 0; y < l2; ++y) {
            for (int x = 0; x < l1; ++x) {
                int s = site(x, y);
                for (auto [nx, ny] : {std::pair{x + 1, y}, std::pair{x, y + 1}}) {
                    int t = site(nx, ny);
                    all.emplace_back(std::min(s, t), std::max(s, t));
                }
            }
        }
    }
    std::sort(all.begin(), all.end());
    if (convention == BondConvention::dedup)
        all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

std::string Lattice::describe() const {
    if (kind == LatticeKind::chain) return "chain:" + std::to_string(l1);
    return std::to_string(l1) + "x" + std::to_string(l2);
}

SitePermutation::SitePermutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
        if (v < 0 || v >= static_cast<int>(image_.size()) || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("permutation image is not a bijection");
        seen[static_cast<size_t>(v)] = true;
    }
}

SitePermutation SitePermutation::identity(int n) {
    std::vector<int> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    return SitePermutation(std::move(img));
}

SitePermutation SitePermutation::after(const SitePermutation& b) const {
    if (size() != b.size()) throw dimension_error("composing permutations of different size");
    std::vector<int> img(image_.size());
    for (size_t s = 0; s < img.size(); ++s) img[s] = image_[static_cast<size_t>(b.image_[s])];
    return SitePermutation(std::move(img));
}

SitePermutation SitePermutation::inverse() const {
    std::vector<int> img(image_.size());
    for (size_t s = 0; s < img.size(); ++s) img[static_cast<size_t>(image_[s])] = static_cast<int>(s);
    return SitePermutation(std::move(img));
}

bool SitePermutation::is_identity() const {
    for (size_t s = 0; s < image_.size(); ++s)
        if (image_[s] != static_cast<int>(s)) return false;
    return true;
}

std::vector<int> SitePermutation::cycle_lengths() const {
    std::vector<int> lengths;
    std::vector<bool> seen(image_.size(), false);
    for (size_t s = 0; s < image_.size(); ++s) {
        if (seen[s]) continue;
        int len = 0;
        size_t t = s;
        while (!seen[t]) {
            seen[t] = true;
            t = static_cast<size_t>(image_[t]);
            ++len;
        }
        lengths.push_back(len);
    }
    return lengths;
}

int SitePermutation::cycle_count() const {
    return static_cast<int>(cycle_lengths().size());
}

SymmetryGroup::SymmetryGroup(std::vector<SitePermutation> elements, std::vector<std::string> labels,
                             int n)
    : elements_(std::move(elements)), labels_(std::move(labels)), n_sites_(n) {}

SymmetryGroup SymmetryGroup::trivial(int n_sites) {
    std::vector<SitePermutation> elems{SitePermutation::identity(n_sites)};
    return SymmetryGroup(std::move(elems), {}, n_sites);
}

SymmetryGroup SymmetryGroup::from_generators(std::vector<SitePermutation> generators,
                                             std::vector<std::string> labels) {
    if (generators.empty()) throw std::invalid_argument("group needs at least one generator");
    const int n = generators.front().size();
    for (const auto& g : generators)
        if (g.size() != n) throw dimension_error("generators act on different site counts");

    constexpr size_t kMaxOrder = 1u << 20;
    std::set<std::vector<int>> seen;
    std::queue<SitePermutation> todo;
    auto push = [&](const SitePermutation& p) {
        if (seen.insert(p.image()).second) todo.push(p);
    };
    push(SitePermutation::identity(n));
    for (const auto& g : generators) push(g);
    while (!todo.empty()) {
        SitePermutation cur = std::move(todo.front());
        todo.pop();
        for (const auto& g : generators) {
            push(cur.after(g));
            push(g.after(cur));
            if (seen.size() > kMaxOrder)
                throw resource_limit_error("group closure exceeded element cap");
        }
    }
    std::vector<SitePermutation> elems;
    elems.reserve(seen.size());
    for (const auto& img : seen) elems.emplace_back(img);  // std::set iterates in lex order
    return SymmetryGroup(std::move(elems), std::move(labels), n);
}

SymmetryGroup build_chain_group(int l) {
    if (l < 2) throw std::invalid_argument("chain length must be >= 2");
    std::vector<int> t(static_cast<size_t>(l)), r(static_cast<size_t>(l));
    for (int s = 0; s < l; ++s) {
        t[static_cast<size_t>(s)] = (s + 1) % l;
        r[static_cast<size_t>(s)] = (l - 1 - s) % l;
    }
    return SymmetryGroup::from_generators({SitePermutation(t), SitePermutation(r)}, {"T", "R"});
}

SymmetryGroup build_rectangle_group(int l1, int l2) {
    if (l1 < 2 || l2 < 2) throw std::invalid_argument("rectangle sides must be >= 2");
    const Lattice lat = Lattice::rectangle(l1, l2);
    const int n = lat.sites();
    auto perm_from = [&](auto&& f) {
        std::vector<int> img(static_cast<size_t>(n));
        for (int y = 0; y < l2; ++y)
            for (int x = 0; x < l1; ++x) {
                auto [fx, fy] = f(x, y);
                img[static_cast<size_t>(lat.site(x, y))] = lat.site(fx, fy);
            }
        return SitePermutation(std::move(img));
    };
    std::vector<SitePermutation> gens;
    std::vector<std::string> labels;
    gens.push_back(perm_from([](int x, int y) { return std::pair{x + 1, y}; }));
    labels.emplace_back("T1");
    gens.push_back(perm_from([](int x, int y) { return std::pair{x, y + 1}; }));
    labels.emplace_back("T2");
    gens.push_back(perm_from([](int x, int y) { return std::pair{x, -y}; }));
    labels.emplace_back("Rx");
    gens.push_back(perm_from([](int x, int y) { return std::pair{-x, y}; }));
    labels.emplace_back("Ry");
    if (l1 == l2) {
        gens.push_back(perm_from([](int x, int y) { return std::pair{-y, x}; }));
        labels.emplace_back("Omega");
    }
    return SymmetryGroup::from_generators(std::move(gens), std::move(labels));
}

SymmetryGroup lattice_group(const Lattice& lat) {
    if (lat.kind == LatticeKind::chain) return build_chain_group(lat.l1);
    return build_rectangle_group(lat.l1, lat.l2);
}

GroupCheckReport verify_group(const SymmetryGroup& g) {
    GroupCheckReport report;
    std::set<std::vector<int>> index;
    for (const auto& e : g.elements()) index.insert(e.image());

    report.no_duplicates = index.size() == g.order();
    report.has_identity = index.count(SitePermutation::identity(g.sites()).image()) > 0;

    report.closed = true;
    for (size_t i = 0; i < g.order() && report.closed; ++i) {
        for (size_t j = 0; j < g.order(); ++j) {
            if (!index.count(g.element(i).after(g.element(j)).image())) {
                report.closed = false;
                report.witness = "product of elements " + std::to_string(i) + " and " +
                                 std::to_string(j) + " is missing";
                break;
            }
        }
    }

    report.has_inverses = true;
    for (size_t i = 0; i < g.order(); ++i) {
        if (!index.count(g.element(i).inverse().image())) {
            report.has_inverses = false;
            if (report.witness.empty())
                report.witness = "inverse of element " + std::to_string(i) + " is missing";
            break;
        }
    }
    return report;
}

}  // namespace lindsym
