#pragma once

#include "rackq/errors.hpp"
#include "rackq/matrix.hpp"
#include "rackq/permgroup.hpp"
#include "rackq/rack.hpp"
#include "rackq/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rackq {

enum class Theory { rack, quandle };

struct Caps {
    size_t group_cap = kDefaultGroupCap;
    uint64_t tuple_cap = 1ull << 22;  // maximum n^(k+1) a differential may touch
};

// row-major ranking of X^k, first coordinate most significant
uint64_t pow_u64(uint64_t base, unsigned exp);
uint64_t tuple_rank(const std::vector<int>& t, int n);
std::vector<int> tuple_unrank(uint64_t r, int k, int n);
bool tuple_nondegenerate(const std::vector<int>& t);  // no two adjacent entries equal

// Basis of C^k for a theory: every tuple (rack) or the non-degenerate ones
// (quandle), in ascending rank order.
struct TupleBasis {
    int k = 0;
    int n = 0;
    std::vector<uint64_t> tuples;        // basis position -> tuple rank
    std::vector<int64_t> position;       // tuple rank -> basis position, -1 if excluded
    size_t dim() const { return tuples.size(); }
};
TupleBasis tuple_basis(int n, int k, Theory theory, const Caps& caps = {});

// Rational cochain of degree k: a function X^k -> Q stored over full tuple
// ranks (quandle cochains carry zeros on degenerate tuples).
struct Cochain {
    int degree = 0;
    int n = 0;
    std::vector<Rat> values;  // length n^degree

    Rat& operator[](uint64_t t) { return values[t]; }
    const Rat& operator[](uint64_t t) const { return values[t]; }
    bool operator==(const Cochain&) const = default;
};
Cochain zero_cochain(const FiniteRack& r, int k);

// the rack differential, evaluated directly
//   (δf)(x_1..x_{k+1}) = Σ_{i=1..k} (-1)^{i-1} [ f(..x̂_i..) - f(.., x_i ▷ x_{i+1}, .., x_i ▷ x_{k+1}) ]
Cochain delta(const FiniteRack& r, const Cochain& f);

// Matrix of δ : C^k -> C^{k+1} over the theory bases (rows = degree-k+1 basis,
// columns = degree-k basis; at most 2k nonzeros per row). For the quandle
// theory the rack must be a quandle and closure of the subcomplex is asserted.
RationalMatrix differential_matrix(const FiniteRack& r, int k, Theory theory,
                                   const Caps& caps = {});

// Betti numbers b_k = dim ker δ^k - rank δ^{k-1} (δ^0 = 0), exact ranks
size_t betti(const FiniteRack& r, int k, Theory theory, const Caps& caps = {});
std::vector<size_t> betti_range(const FiniteRack& r, int max_degree, Theory theory,
                                const Caps& caps = {});

// right action (f·α)(x_1..x_k) = f(α(x_1)..α(x_k)); α must be an automorphism
Cochain act(const FiniteRack& r, const Cochain& f, const Perm& alpha);

// diagonal action of Inn(r) on X^k: orbit structure, canonical representative =
// smallest tuple rank; quandle theory keeps only non-degenerate orbits
struct TupleOrbits {
    int k = 0;
    std::vector<int64_t> orbit_of;        // tuple rank -> orbit id (-1 if excluded)
    std::vector<uint64_t> representative; // orbit id -> smallest tuple rank
    std::vector<std::vector<uint64_t>> orbits;
};
TupleOrbits tuple_orbits(const FiniteRack& r, const PermGroup& inn, int k, Theory theory,
                         const Caps& caps = {});

// Betti numbers of the two summands of C* = (invariant cochains) ⊕ (mean-zero
// cochains), computed from the restricted differentials on explicit bases
// (orbit indicators / e_t - e_rep).
std::vector<size_t> invariant_betti_range(const FiniteRack& r, int max_degree, Theory theory,
                                          const Caps& caps = {});
std::vector<size_t> complement_betti_range(const FiniteRack& r, int max_degree, Theory theory,
                                           const Caps& caps = {});

// averaging projection P(f)(x⃗) = (1/|Inn|) Σ_g f(g·x⃗): idempotent chain map
// onto the invariant cochains
Cochain averaging_projection(const FiniteRack& r, const PermGroup& inn, const Cochain& f);
bool is_invariant(const FiniteRack& r, const PermGroup& inn, const Cochain& f);

// For a cocycle f and g = ψ_{w_1} ∘ ... ∘ ψ_{w_m} (w = word of rack elements),
// returns α with f - f·g = δα via the telescoping slice construction
//   α = Σ_j (f · ψ_{w_1}..ψ_{w_{j-1}})_{w_j},  where f_z(x⃗) = f(z, x⃗).
// Throws NotACocycle if δf ≠ 0; degree of f must be >= 1.
Cochain primitive_for_translation(const FiniteRack& r, const Cochain& f,
                                  const std::vector<int>& word);

// pullback along X^k -> π0^k of h : π0^k -> Q (h indexed by component-tuple
// rank, components numbered as in geometry); always a cocycle (asserted).
// Quandle theory requires h to vanish on adjacent-equal component tuples
// (DegenerateValueNonzero).
Cochain pi0_pullback(const FiniteRack& r, int k, Theory theory, const std::vector<Rat>& h);

// dim of the bounded cohomology predicted by the amenability theorem:
// |π0|^k (rack theory) or |π0|·(|π0|-1)^(k-1), |π0| for k=1 (quandle theory)
size_t expected_betti(size_t pi0, int k, Theory theory);

struct BettiReport {
    std::string rack_name;
    Theory theory = Theory::rack;
    std::vector<size_t> betti;            // degree 1..max_degree
    std::vector<size_t> expected;
    std::vector<size_t> invariant_betti;
    std::vector<size_t> complement_betti;
    std::vector<bool> match_by_degree;    // betti == expected
    bool match = false;                   // all degrees
};
BettiReport verify_amenable_theorem(const FiniteRack& r, int max_degree, Theory theory,
                                    const std::string& rack_name, const Caps& caps = {});

} // namespace rackq
