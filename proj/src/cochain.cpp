#include "rackq/cochain.hpp"

#include "rackq/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>

namespace rackq {

uint64_t pow_u64(uint64_t base, unsigned exp) {
    uint64_t out = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && out > UINT64_MAX / base)
            throw DegreeTooLarge("tuple space size overflows a 64-bit count");
        out *= base;
    }
    return out;
}

uint64_t tuple_rank(const std::vector<int>& t, int n) {
    uint64_t r = 0;
    for (int x : t) {
        RACKQ_ASSERT(x >= 0 && x < n, "tuple entry out of range");
        r = r * static_cast<uint64_t>(n) + static_cast<uint64_t>(x);
    }
    return r;
}

std::vector<int> tuple_unrank(uint64_t r, int k, int n) {
    std::vector<int> t(static_cast<size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        t[static_cast<size_t>(i)] = static_cast<int>(r % static_cast<uint64_t>(n));
        r /= static_cast<uint64_t>(n);
    }
    RACKQ_ASSERT(r == 0, "tuple rank out of range");
    return t;
}

bool tuple_nondegenerate(const std::vector<int>& t) {
    for (size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == t[i + 1]) return false;
    return true;
}

TupleBasis tuple_basis(int n, int k, Theory theory, const Caps& caps) {
    RACKQ_ASSERT(n >= 1 && k >= 0, "basis needs n >= 1 and k >= 0");
    uint64_t total = pow_u64(static_cast<uint64_t>(n), static_cast<unsigned>(k));
    if (total > caps.tuple_cap)
        throw DegreeTooLarge("degree " + std::to_string(k) + " needs " + std::to_string(total) +
                             " tuples, over the cap of " + std::to_string(caps.tuple_cap));
    TupleBasis b;
    b.k = k;
    b.n = n;
    b.position.assign(total, -1);
    for (uint64_t t = 0; t < total; ++t) {
        if (theory == Theory::quandle && !tuple_nondegenerate(tuple_unrank(t, k, n))) continue;
        b.position[t] = static_cast<int64_t>(b.tuples.size());
        b.tuples.push_back(t);
    }
    return b;
}

Cochain zero_cochain(const FiniteRack& r, int k) {
    RACKQ_ASSERT(k >= 0, "negative degree");
    uint64_t total = pow_u64(static_cast<uint64_t>(r.size()), static_cast<unsigned>(k));
    if (total > Caps{}.tuple_cap)
        throw DegreeTooLarge("degree " + std::to_string(k) + " cochains on " +
                             std::to_string(r.size()) + " elements are out of reach");
    Cochain f;
    f.degree = k;
    f.n = r.size();
    f.values.assign(total, Rat(0));
    return f;
}

namespace {

// The signed faces of a degree-(k+1) tuple t: for each of the first k
// positions, the deleted face (coefficient +s) and the face where the deleted
// entry acts on everything after it (coefficient -s), s alternating. The
// last position is skipped because its two faces coincide.
template <typename F>
void for_each_face(const FiniteRack& r, const std::vector<int>& t, F&& emit) {
    const int k = static_cast<int>(t.size()) - 1;
    std::vector<int> face(static_cast<size_t>(k));
    int sign = 1;
    for (int i = 0; i < k; ++i) {
        size_t w = 0;
        for (int j = 0; j <= k; ++j)
            if (j != i) face[w++] = t[static_cast<size_t>(j)];
        emit(tuple_rank(face, r.size()), sign);
        w = 0;
        for (int j = 0; j <= k; ++j) {
            if (j == i) continue;
            face[w++] = j < i ? t[static_cast<size_t>(j)]
                              : r.op(t[static_cast<size_t>(i)], t[static_cast<size_t>(j)]);
        }
        emit(tuple_rank(face, r.size()), -sign);
        sign = -sign;
    }
}

bool all_zero(const std::vector<Rat>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return is_zero(x); });
}

} // namespace

Cochain delta(const FiniteRack& r, const Cochain& f) {
    RACKQ_ASSERT(f.n == r.size(), "cochain lives on a different rack size");
    RACKQ_ASSERT(f.values.size() ==
                     pow_u64(static_cast<uint64_t>(f.n), static_cast<unsigned>(f.degree)),
                 "cochain value table has the wrong length");
    const int k = f.degree;
    Cochain out = zero_cochain(r, k + 1);
    for (uint64_t tr = 0; tr < out.values.size(); ++tr) {
        auto t = tuple_unrank(tr, k + 1, f.n);
        Rat acc(0);
        for_each_face(r, t, [&](uint64_t face, int coeff) {
            if (coeff > 0)
                acc += f.values[face];
            else
                acc -= f.values[face];
        });
        out.values[tr] = std::move(acc);
    }
    return out;
}

RationalMatrix differential_matrix(const FiniteRack& r, int k, Theory theory, const Caps& caps) {
    if (theory == Theory::quandle && !r.is_quandle())
        throw ValidationError("the quandle cochain theory needs a quandle");
    const int n = r.size();
    TupleBasis rows = tuple_basis(n, k + 1, theory, caps);
    TupleBasis cols = tuple_basis(n, k, theory, caps);

    std::vector<RationalMatrix::Triplet> trips;
    for (size_t rp = 0; rp < rows.dim(); ++rp) {
        auto t = tuple_unrank(rows.tuples[rp], k + 1, n);
        for_each_face(r, t, [&](uint64_t face, int coeff) {
            int64_t cp = cols.position[face];
            if (cp < 0) return; // basis cochains vanish on excluded tuples
            trips.emplace_back(rp, static_cast<size_t>(cp), Rat(coeff));
        });
    }

    if (theory == Theory::quandle) {
        // cochains vanishing on tuples with an adjacent repeat stay that way
        // under the differential (x ▷ x = x makes the two offending faces
        // cancel); verified tuple by tuple
        uint64_t total = pow_u64(static_cast<uint64_t>(n), static_cast<unsigned>(k + 1));
        for (uint64_t tr = 0; tr < total; ++tr) {
            if (rows.position[tr] >= 0) continue;
            auto t = tuple_unrank(tr, k + 1, n);
            std::map<uint64_t, int> acc;
            for_each_face(r, t, [&](uint64_t face, int coeff) {
                if (cols.position[face] >= 0) acc[face] += coeff;
            });
            for (const auto& [face, c] : acc) {
                (void)face;
                RACKQ_ASSERT(c == 0, "differential left the adjacent-repeat-free subcomplex");
            }
        }
    }

    return RationalMatrix::from_triplets(rows.dim(), cols.dim(), std::move(trips));
}

size_t betti(const FiniteRack& r, int k, Theory theory, const Caps& caps) {
    RACKQ_ASSERT(k >= 0, "negative degree");
    size_t dim = tuple_basis(r.size(), k, theory, caps).dim();
    size_t rank_out = rank(differential_matrix(r, k, theory, caps));
    size_t rank_in = k == 0 ? 0 : rank(differential_matrix(r, k - 1, theory, caps));
    return dim - rank_out - rank_in;
}

std::vector<size_t> betti_range(const FiniteRack& r, int max_degree, Theory theory,
                                const Caps& caps) {
    RACKQ_ASSERT(max_degree >= 1, "max_degree must be at least 1");
    std::vector<size_t> ranks; // ranks[k] = rank of the degree-k differential
    for (int k = 0; k <= max_degree; ++k)
        ranks.push_back(rank(differential_matrix(r, k, theory, caps)));
    std::vector<size_t> out;
    for (int k = 1; k <= max_degree; ++k) {
        size_t dim = tuple_basis(r.size(), k, theory, caps).dim();
        out.push_back(dim - ranks[static_cast<size_t>(k)] - ranks[static_cast<size_t>(k - 1)]);
    }
    return out;
}

Cochain act(const FiniteRack& r, const Cochain& f, const Perm& alpha) {
    if (!is_automorphism(r, alpha))
        throw NotAnAutomorphism("the cochain action needs an operation-preserving map");
    Cochain out = zero_cochain(r, f.degree);
    for (uint64_t t = 0; t < out.values.size(); ++t) {
        auto x = tuple_unrank(t, f.degree, f.n);
        for (int& xi : x) xi = alpha(xi);
        out.values[t] = f.values[tuple_rank(x, f.n)];
    }
    return out;
}

TupleOrbits tuple_orbits(const FiniteRack& r, const PermGroup& inn, int k, Theory theory,
                         const Caps& caps) {
    RACKQ_ASSERT(inn.degree() == r.size(), "group acts on the wrong set");
    const int n = r.size();
    TupleBasis basis = tuple_basis(n, k, theory, caps);
    TupleOrbits out;
    out.k = k;
    out.orbit_of.assign(basis.position.size(), -1);
    const auto& gens = inn.generators();
    std::vector<int> y(static_cast<size_t>(k));
    // ascending start ranks make each orbit's representative its smallest member
    for (uint64_t start : basis.tuples) {
        if (out.orbit_of[start] >= 0) continue;
        int64_t id = static_cast<int64_t>(out.orbits.size());
        out.representative.push_back(start);
        out.orbits.emplace_back();
        std::deque<uint64_t> queue{start};
        out.orbit_of[start] = id;
        while (!queue.empty()) {
            uint64_t cur = queue.front();
            queue.pop_front();
            out.orbits.back().push_back(cur);
            auto x = tuple_unrank(cur, k, n);
            for (const Perm& g : gens) {
                for (int i = 0; i < k; ++i)
                    y[static_cast<size_t>(i)] = g(x[static_cast<size_t>(i)]);
                uint64_t next = tuple_rank(y, n);
                if (out.orbit_of[next] < 0) {
                    out.orbit_of[next] = id;
                    queue.push_back(next);
                }
            }
        }
        std::sort(out.orbits.back().begin(), out.orbits.back().end());
    }
    return out;
}

namespace {

// Differential restricted to the invariant cochains, written in the
// orbit-indicator basis: entry (O', O) = (δ 1_O)(representative of O').
RationalMatrix invariant_differential(const FiniteRack& r, const TupleOrbits& dom,
                                      const TupleOrbits& codom, int k) {
    std::vector<RationalMatrix::Triplet> trips;
    for (size_t row = 0; row < codom.orbits.size(); ++row) {
        auto t = tuple_unrank(codom.representative[row], k + 1, r.size());
        for_each_face(r, t, [&](uint64_t face, int coeff) {
            int64_t o = dom.orbit_of[face];
            if (o >= 0) trips.emplace_back(row, static_cast<size_t>(o), Rat(coeff));
        });
    }
    return RationalMatrix::from_triplets(codom.orbits.size(), dom.orbits.size(),
                                         std::move(trips));
}

// compressed numbering of the non-canonical tuples (those that are not their
// orbit's representative); canonical positions get -1
std::pair<std::vector<int64_t>, size_t> noncanonical_index(const TupleBasis& b,
                                                           const TupleOrbits& o) {
    std::vector<int64_t> comp(b.dim(), -1);
    size_t count = 0;
    for (size_t p = 0; p < b.dim(); ++p) {
        uint64_t t = b.tuples[p];
        if (o.representative[static_cast<size_t>(o.orbit_of[t])] != t)
            comp[p] = static_cast<int64_t>(count++);
    }
    return {std::move(comp), count};
}

// Differential restricted to the complement, in the basis e_t - e_rep(t) over
// non-canonical t. Images have zero orbit sums, so their coordinates are the
// plain values at non-canonical tuples: take columns (e_t - e_rep) of the full
// matrix and drop the canonical rows.
RationalMatrix complement_differential(const FiniteRack& r, int k, Theory theory,
                                       const TupleBasis& bk, const TupleOrbits& ok,
                                       const TupleBasis& bk1, const TupleOrbits& ok1,
                                       const Caps& caps) {
    RationalMatrix dt = differential_matrix(r, k, theory, caps).transposed();
    auto [col_idx, ncols] = noncanonical_index(bk, ok);
    auto [row_idx, nrows] = noncanonical_index(bk1, ok1);

    std::vector<RationalMatrix::Triplet> trips;
    for (size_t p = 0; p < bk.dim(); ++p) {
        if (col_idx[p] < 0) continue;
        uint64_t rep = ok.representative[static_cast<size_t>(ok.orbit_of[bk.tuples[p]])];
        int64_t rep_pos = bk.position[rep];
        RACKQ_ASSERT(rep_pos >= 0, "orbit representative missing from the basis");
        size_t col = static_cast<size_t>(col_idx[p]);
        for (const auto& [q, v] : dt.row_entries(p))
            if (row_idx[q] >= 0) trips.emplace_back(static_cast<size_t>(row_idx[q]), col, v);
        for (const auto& [q, v] : dt.row_entries(static_cast<size_t>(rep_pos)))
            if (row_idx[q] >= 0) trips.emplace_back(static_cast<size_t>(row_idx[q]), col, -v);
    }
    return RationalMatrix::from_triplets(nrows, ncols, std::move(trips));
}

} // namespace

std::vector<size_t> invariant_betti_range(const FiniteRack& r, int max_degree, Theory theory,
                                          const Caps& caps) {
    RACKQ_ASSERT(max_degree >= 1, "max_degree must be at least 1");
    if (theory == Theory::quandle && !r.is_quandle())
        throw ValidationError("the quandle cochain theory needs a quandle");
    PermGroup inn = inner_group(r, caps.group_cap);
    std::vector<TupleOrbits> orbs;
    for (int k = 0; k <= max_degree + 1; ++k)
        orbs.push_back(tuple_orbits(r, inn, k, theory, caps));
    std::vector<size_t> ranks(static_cast<size_t>(max_degree) + 1);
    for (int k = 0; k <= max_degree; ++k)
        ranks[static_cast<size_t>(k)] = rank(invariant_differential(
            r, orbs[static_cast<size_t>(k)], orbs[static_cast<size_t>(k + 1)], k));
    std::vector<size_t> out;
    for (int k = 1; k <= max_degree; ++k)
        out.push_back(orbs[static_cast<size_t>(k)].orbits.size() -
                      ranks[static_cast<size_t>(k)] - ranks[static_cast<size_t>(k - 1)]);
    return out;
}

std::vector<size_t> complement_betti_range(const FiniteRack& r, int max_degree, Theory theory,
                                           const Caps& caps) {
    RACKQ_ASSERT(max_degree >= 1, "max_degree must be at least 1");
    if (theory == Theory::quandle && !r.is_quandle())
        throw ValidationError("the quandle cochain theory needs a quandle");
    PermGroup inn = inner_group(r, caps.group_cap);
    std::vector<TupleBasis> bases;
    std::vector<TupleOrbits> orbs;
    for (int k = 0; k <= max_degree + 1; ++k) {
        bases.push_back(tuple_basis(r.size(), k, theory, caps));
        orbs.push_back(tuple_orbits(r, inn, k, theory, caps));
    }
    std::vector<size_t> ranks(static_cast<size_t>(max_degree) + 1);
    for (int k = 0; k <= max_degree; ++k)
        ranks[static_cast<size_t>(k)] = rank(complement_differential(
            r, k, theory, bases[static_cast<size_t>(k)], orbs[static_cast<size_t>(k)],
            bases[static_cast<size_t>(k + 1)], orbs[static_cast<size_t>(k + 1)], caps));
    std::vector<size_t> out;
    for (int k = 1; k <= max_degree; ++k) {
        size_t dim = bases[static_cast<size_t>(k)].dim() - orbs[static_cast<size_t>(k)].orbits.size();
        out.push_back(dim - ranks[static_cast<size_t>(k)] - ranks[static_cast<size_t>(k - 1)]);
    }
    return out;
}

Cochain averaging_projection(const FiniteRack& r, const PermGroup& inn, const Cochain& f) {
    RACKQ_ASSERT(f.n == r.size() && inn.degree() == r.size(), "size mismatch");
    const int k = f.degree;
    Cochain out = zero_cochain(r, k);
    Rat order(static_cast<unsigned long>(inn.order()));
    std::vector<int> y(static_cast<size_t>(k));
    for (uint64_t t = 0; t < out.values.size(); ++t) {
        auto x = tuple_unrank(t, k, f.n);
        Rat acc(0);
        for (const Perm& g : inn.elements()) {
            for (int i = 0; i < k; ++i)
                y[static_cast<size_t>(i)] = g(x[static_cast<size_t>(i)]);
            acc += f.values[tuple_rank(y, f.n)];
        }
        out.values[t] = acc / order;
    }
    return out;
}

bool is_invariant(const FiniteRack& r, const PermGroup& inn, const Cochain& f) {
    for (const Perm& g : inn.generators())
        if (!(act(r, f, g) == f)) return false;
    return true;
}

Cochain primitive_for_translation(const FiniteRack& r, const Cochain& f,
                                  const std::vector<int>& word) {
    if (f.degree < 1)
        throw ValidationError("the primitive construction needs degree at least 1");
    RACKQ_ASSERT(f.n == r.size(), "cochain lives on a different rack size");
    if (!all_zero(delta(r, f).values))
        throw NotACocycle("the cochain has nonzero differential");
    const uint64_t slice_len =
        pow_u64(static_cast<uint64_t>(f.n), static_cast<unsigned>(f.degree - 1));
    Cochain alpha = zero_cochain(r, f.degree - 1);
    Cochain h = f;
    for (int z : word) {
        RACKQ_ASSERT(z >= 0 && z < r.size(), "word letter out of range");
        // slice h_z(x⃗) = h(z, x⃗) satisfies δ(h_z) = h - h·ψ_z when δh = 0
        for (uint64_t t = 0; t < slice_len; ++t)
            alpha.values[t] += h.values[static_cast<uint64_t>(z) * slice_len + t];
        h = act(r, h, r.psi(z));
    }
    return alpha;
}

Cochain pi0_pullback(const FiniteRack& r, int k, Theory theory, const std::vector<Rat>& h) {
    RACKQ_ASSERT(k >= 0, "negative degree");
    if (theory == Theory::quandle && !r.is_quandle())
        throw ValidationError("the quandle cochain theory needs a quandle");
    ComponentDecomposition comps = components(r);
    const int c = comps.count;
    uint64_t hlen = pow_u64(static_cast<uint64_t>(c), static_cast<unsigned>(k));
    if (h.size() != hlen)
        throw ValidationError("component cochain has length " + std::to_string(h.size()) +
                              ", expected " + std::to_string(hlen));
    if (theory == Theory::quandle) {
        for (uint64_t t = 0; t < hlen; ++t)
            if (!tuple_nondegenerate(tuple_unrank(t, k, c)) && !is_zero(h[t]))
                throw DegenerateValueNonzero(
                    "component cochain must vanish when adjacent components agree");
    }
    Cochain out = zero_cochain(r, k);
    for (uint64_t t = 0; t < out.values.size(); ++t) {
        auto x = tuple_unrank(t, k, r.size());
        for (int& xi : x) xi = comps.component_of[static_cast<size_t>(xi)];
        out.values[t] = h[tuple_rank(x, c)];
    }
    // moves never leave a component, so both faces of every pair agree on
    // components and the differential cancels termwise
    RACKQ_ASSERT(all_zero(delta(r, out).values), "component pullback failed to be a cocycle");
    return out;
}

size_t expected_betti(size_t pi0, int k, Theory theory) {
    RACKQ_ASSERT(k >= 0 && pi0 >= 1, "bad parameters");
    if (k == 0) return 1;
    if (theory == Theory::rack)
        return pow_u64(pi0, static_cast<unsigned>(k));
    if (k == 1) return pi0;
    return pi0 * pow_u64(pi0 - 1, static_cast<unsigned>(k - 1));
}

BettiReport verify_amenable_theorem(const FiniteRack& r, int max_degree, Theory theory,
                                    const std::string& rack_name, const Caps& caps) {
    if (theory == Theory::quandle && !r.is_quandle())
        throw ValidationError("the quandle cochain theory needs a quandle");
    BettiReport rep;
    rep.rack_name = rack_name;
    rep.theory = theory;
    rep.betti = betti_range(r, max_degree, theory, caps);
    size_t pi0 = static_cast<size_t>(components(r).count);
    for (int k = 1; k <= max_degree; ++k)
        rep.expected.push_back(expected_betti(pi0, k, theory));
    rep.invariant_betti = invariant_betti_range(r, max_degree, theory, caps);
    rep.complement_betti = complement_betti_range(r, max_degree, theory, caps);
    rep.match = true;
    for (size_t i = 0; i < rep.betti.size(); ++i) {
        bool ok = rep.betti[i] == rep.expected[i];
        rep.match_by_degree.push_back(ok);
        rep.match = rep.match && ok;
    }
    return rep;
}

} // namespace rackq
