#pragma once

#include "rackq/errors.hpp"
#include "rackq/perm.hpp"
#include "rackq/rack.hpp"
#include "rackq/rational.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace rackq {

inline constexpr size_t kDefaultGroupCap = 1'000'000;

// Finite permutation group enumerated by breadth-first closure over labeled
// generators. Every element carries a positive witness word (generator labels
// only): BFS multiplies by generators on the right, and since each generator
// has finite order the positive products already form the whole group.
class PermGroup {
public:
    static PermGroup generate(std::vector<Perm> gens, std::vector<int> labels,
                              size_t cap = kDefaultGroupCap);

    int degree() const { return degree_; }
    size_t order() const { return elements_.size(); }
    const std::vector<Perm>& elements() const { return elements_; }  // elements()[0] = id
    const std::vector<Perm>& generators() const { return gens_; }
    const std::vector<int>& labels() const { return labels_; }

    size_t index_of(const Perm& p) const;              // throws InternalError if absent
    std::optional<size_t> find(const Perm& p) const;
    bool contains(const Perm& p) const { return find(p).has_value(); }

    // positive word w = [l1..lm] of generator labels with gen(l1)∘...∘gen(lm) = element
    std::vector<int> witness(size_t idx) const;
    size_t inverse_index(size_t idx) const;

private:
    int degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<int> labels_;
    std::vector<Perm> elements_;
    std::unordered_map<Perm, size_t, PermHash> index_;
    std::vector<std::pair<size_t, size_t>> parent_; // (parent element, generator position); (npos,npos) for id
};

// Inn(r) = group generated by all row permutations, generator labels = rack elements.
PermGroup inner_group(const FiniteRack& r, size_t cap = kDefaultGroupCap);

// subgroup of G generated by gens, as sorted element indices into G
std::vector<size_t> subgroup_elements(const PermGroup& g, const std::vector<Perm>& gens);

bool conjugation_closed(const std::vector<Perm>& s, const PermGroup& g);
std::vector<Perm> conjugation_closure(const std::vector<Perm>& s, const PermGroup& g);

// stabilizer of a point / centralizer of an element, as sorted indices into G
std::vector<size_t> stabilizer(const PermGroup& g, int point);
std::vector<size_t> centralizer(const PermGroup& g, const Perm& p);

// Word norms |g|_S = min length of a word in S ∪ S⁻¹ equal to g, via BFS on
// the Cayley graph. With close_under_conjugation (the default) S is first
// replaced by its conjugation closure, making the norm conjugation-invariant.
struct NormTable {
    std::vector<unsigned> norm;  // indexed like g.elements()
    unsigned diameter = 0;
};
NormTable word_norm(const PermGroup& g, const std::vector<Perm>& s,
                    bool close_under_conjugation = true);

// uniform mean (1/|G|) Σ_g f(g): the bi-invariant mean on a finite group
Rat uniform_mean(const PermGroup& g, const std::function<Rat(const Perm&)>& f);

// left cosets xH of a subgroup (given by its sorted element indices),
// numbered by smallest-index representative, ascending
struct CosetDecomposition {
    std::vector<size_t> rep;      // coset id -> representative element index
    std::vector<int> coset_of;    // element index -> coset id
};
CosetDecomposition left_cosets(const PermGroup& g, const std::vector<size_t>& subgroup);

// Metric on the left cosets of H ≤ G induced by the conjugation-closed norm:
//   d(xH, yH) = min { |x⁻¹ y h|_S̄ : h ∈ H }.
// Requires the conjugation closure of S to generate G (NotNormallyGenerating).
// Cosets are numbered by their smallest-index representative, ascending.
struct QuotientMetric {
    std::vector<size_t> coset_rep;                 // coset id -> element index in G
    std::vector<int> coset_of;                     // element index -> coset id
    std::vector<std::vector<unsigned>> dist;       // coset x coset
    unsigned diameter = 0;
};
QuotientMetric quotient_metric(const PermGroup& g, const std::vector<Perm>& s,
                               const std::vector<Perm>& h_gens);

} // namespace rackq
