#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lindsym {

enum class LatticeKind { chain, rectangle };

// How wrapped first-neighbor pairs are counted on directions of length 2,
// where the +1 and -1 neighbors of a site coincide on the torus.
enum class BondConvention {
    dedup,      // each unordered site pair appears once
    multigraph  // keep both wrapped copies (doubles couplings on length-2 directions)
};

// Periodic cluster geometry. Sites are indexed 0..V-1; on rectangles the
// index is row-major, s = x + l1*y.
struct Lattice {
    LatticeKind kind = LatticeKind::chain;
    int l1 = 0;  // chain length, or first side
    int l2 = 1;  // 1 for chains

    static Lattice chain(int l);
    static Lattice rectangle(int l1, int l2);

    int sites() const { return l1 * l2; }
    int site(int x, int y) const;

    // Unique (or multigraph) unordered first-neighbor pairs on the torus.
    std::vector<std::pair<int, int>> bonds(BondConvention convention = BondConvention::dedup) const;

    std::string describe() const;
};

// A permutation of lattice sites stored as its image sequence:
// image()[s] is where site s goes.
class SitePermutation {
public:
    explicit SitePermutation(std::vector<int> image);
    static SitePermutation identity(int n);

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int s) const { return image_[static_cast<size_t>(s)]; }
    const std::vector<int>& image() const { return image_; }

    // (a.after(b))(s) = a(b(s)).
    SitePermutation after(const SitePermutation& b) const;
    SitePermutation inverse() const;
    bool is_identity() const;

    // Number of disjoint cycles, fixed points counted as 1-cycles.
    int cycle_count() const;
    std::vector<int> cycle_lengths() const;

    friend bool operator==(const SitePermutation& a, const SitePermutation& b) {
        return a.image_ == b.image_;
    }
    friend bool operator<(const SitePermutation& a, const SitePermutation& b) {
        return a.image_ < b.image_;
    }

private:
    std::vector<int> image_;
};

struct GroupCheckReport {
    bool has_identity = false;
    bool closed = false;
    bool has_inverses = false;
    bool no_duplicates = false;
    std::string witness;  // first failing composition/element, if any

    bool ok() const { return has_identity && closed && has_inverses && no_duplicates; }
};

// A finite group of site permutations, stored as the explicit deduplicated
// element set in lexicographic order of the image sequences (so element 0 is
// always the identity).
class SymmetryGroup {
public:
    // Breadth-first closure over the generators, deduplicated.
    static SymmetryGroup from_generators(std::vector<SitePermutation> generators,
                                         std::vector<std::string> labels = {});
    static SymmetryGroup trivial(int n_sites);

    size_t order() const { return elements_.size(); }
    int sites() const { return n_sites_; }
    const SitePermutation& element(size_t i) const { return elements_[i]; }
    const std::vector<SitePermutation>& elements() const { return elements_; }
    const std::vector<std::string>& generator_labels() const { return labels_; }

private:
    SymmetryGroup(std::vector<SitePermutation> elements, std::vector<std::string> labels, int n);

    std::vector<SitePermutation> elements_;
    std::vector<std::string> labels_;
    int n_sites_ = 0;
};

// Dihedral group of the periodic chain: closure of {translation, reflection}.
// On small rings distinct abstract elements can coincide as permutations;
// the stored order is the number of distinct permutations.
SymmetryGroup build_chain_group(int l);

// Translations plus the point group of the cluster: D4 when l1 == l2,
// {1, Rx, Ry, Omega^2} otherwise.
SymmetryGroup build_rectangle_group(int l1, int l2);

// Convenience dispatch on lattice kind.
SymmetryGroup lattice_group(const Lattice& lat);

// Exhaustive group-axiom check (identity, closure, inverses, duplicates).
GroupCheckReport verify_group(const SymmetryGroup& g);

}  // namespace lindsym
