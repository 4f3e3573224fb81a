#pragma once

#include "rackq/errors.hpp"
#include "rackq/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rackq {

// Reduced word in the free group F_k; letters are signed 1-based generator
// indices (+1 = first generator, -1 its inverse, ...).
struct FreeWord {
    std::vector<int8_t> letters;
    bool operator==(const FreeWord&) const = default;
    bool empty() const { return letters.empty(); }
    size_t length() const { return letters.size(); }
};
FreeWord reduce(const std::vector<int8_t>& letters);
FreeWord concat_reduce(const FreeWord& a, const FreeWord& b);
FreeWord inverse(const FreeWord& w);
std::vector<long> abelianization(const FreeWord& w, int k);  // exponent sums per generator

// Element w g_i w⁻¹ of the free quandle on k generators, in canonical form:
// w reduced and not ending in g_i^{±1}.
struct FQElement {
    FreeWord conjugator;
    int generator = 0;  // 0-based
    bool operator==(const FQElement&) const = default;
};
FQElement fq_canonical(FreeWord w, int generator);
FQElement fq_basepoint(int generator);

// a ▷ b = (w_a g_{i_a} w_a⁻¹) · b · (...)⁻¹, i.e. conjugator of the result is
// reduce(w_a g_{i_a} w_a⁻¹ w_b) canonicalized; the generator index is b's
FQElement fq_op(const FQElement& a, const FQElement& b);
FQElement fq_op_inv(const FQElement& a, const FQElement& b);  // ψ_a⁻¹(b)

// all canonical elements with conjugator length <= len_cap, k generators,
// deterministic order (generator, then conjugator by length/lexicographic)
std::vector<FQElement> fq_movers(int k, int len_cap);

inline constexpr size_t kDefaultBallElementCap = 2'000'000;

// Ball: everything reachable from the k generator basepoints by at most
// `radius` moves ψ_s^{±1}, s ranging over movers with conjugator length
// <= mover_len_cap. Throws CapExceeded past max_elements.
struct BallResult {
    std::vector<FQElement> elements;   // BFS order, deterministic
    std::vector<size_t> level_sizes;   // level_sizes[d] = number first reached at distance d
};
BallResult fq_ball(int k, int radius, int mover_len_cap,
                   size_t max_elements = kDefaultBallElementCap);

// Every move left-multiplies the conjugator by a conjugate of a generator^{±1},
// shifting its abelianization by a signed unit vector; minimizing over the
// unknown own-generator drift leaves Σ_{j≠i} |ab_j(w_a⁻¹ w_b)|.
// Both elements must carry the same generator (DifferentComponents).
long fq_abelian_lower_bound(const FQElement& a, const FQElement& b, int k);

struct FqDistanceCaps {
    int radius = 6;          // max total path length explored
    int mover_len_cap = 2;   // conjugator-length cap for the movers
    size_t max_nodes = kDefaultBallElementCap;
};

// Bidirectional BFS upper bound + abelianization lower bound; exact when the
// two meet. `upper` is empty when no path was found within the caps.
struct FqDistance {
    long lower = 0;
    std::optional<long> upper;
    bool exact() const { return upper && *upper == lower; }
};
FqDistance fq_distance(const FQElement& a, const FQElement& b, int k,
                       const FqDistanceCaps& caps = {});

// Quasimorphism lifted to the free quandle on x, y: decompose the conjugator
// as g'·(own generator)^t with g' empty or ending in the other generator, and
// apply the exponent-sum homomorphism of the own generator to g'. Canonical
// forms have t = 0, so this is the own-generator exponent sum of the conjugator.
long hat_phi(const FQElement& e);

// Brooks-style variant: signed count of occurrences of the pattern xy (minus
// occurrences of its inverse) in g', not a homomorphism; empirical defect only.
long hat_brooks(const FQElement& e);

// max |f(b) - f(ψ_s^{±1}(b))| over b in sample, s in movers; pairs where f is
// undefined (partial f, e.g. distance restricted to a ball) are skipped
struct DefectReport {
    Rat max_defect;
    size_t pairs_checked = 0;
    size_t pairs_skipped = 0;
    FQElement argmax_element;
    FQElement argmax_mover;
};
DefectReport quasimorphism_defect(const std::function<std::optional<Rat>(const FQElement&)>& f,
                                  const std::vector<FQElement>& sample,
                                  const std::vector<FQElement>& movers);

} // namespace rackq
