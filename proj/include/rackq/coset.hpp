#pragma once

#include "rackq/permgroup.hpp"
#include "rackq/rack.hpp"

#include <vector>

namespace rackq {

// Coset rack data (G, S, {H_s}): one pair per s ∈ S, X = ⊔_s G/H_s with
//   x H_s ▷ y H_t = (x s x⁻¹) y H_t.
// Requires H_s ≤ Z(s) (NotCentralizing otherwise); the result is a quandle
// iff s ∈ H_s for every pair.
struct CosetPair {
    Perm s;
    std::vector<Perm> subgroup_gens;  // generators of H_s
};

struct CosetRackSpec {
    int degree = 0;                 // points the permutations act on
    std::vector<Perm> group_gens;   // generators of G
    std::vector<CosetPair> pairs;
};

struct CosetRack {
    FiniteRack rack;
    PermGroup group;                     // the enumerated G
    std::vector<int> pair_of;            // rack element -> pair index
    std::vector<size_t> coset_rep;       // rack element -> representative element index in G
    std::vector<std::vector<int>> pair_elements;  // pair index -> rack elements, coset order
    std::vector<std::vector<size_t>> subgroups;   // pair index -> sorted H_s element indices
};

CosetRack build_coset_rack(const CosetRackSpec& spec, size_t cap = kDefaultGroupCap);

// Representation of a rack by cosets in its inner group: one pair
// (ψ_{x_s}, Stab(x_s)) per component representative x_s. The map
// g·Stab(x_s) ↦ g(x_s) is verified to be a rack isomorphism onto r.
struct JoyceRepresentation {
    CosetRackSpec spec;
    CosetRack realized;
    std::vector<int> to_rack;  // realized rack element -> element of r (the verified iso)
    bool verified = false;
};
JoyceRepresentation joyce_representation(const FiniteRack& r, size_t cap = kDefaultGroupCap);

// conjugation quandle of ⟨group_gens⟩ as a coset rack: one pair per conjugacy
// class (smallest-index representative, H = its centralizer)
CosetRackSpec conjugation_quandle_spec(const std::vector<Perm>& group_gens,
                                       size_t cap = kDefaultGroupCap);

} // namespace rackq
