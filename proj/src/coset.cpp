#include "rackq/coset.hpp"

#include "rackq/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace rackq {

CosetRack build_coset_rack(const CosetRackSpec& spec, size_t cap) {
    if (spec.pairs.empty()) throw ValidationError("coset rack needs at least one pair");
    std::vector<int> labels(spec.group_gens.size());
    std::iota(labels.begin(), labels.end(), 0);
    PermGroup g = PermGroup::generate(spec.group_gens, labels, cap);

    CosetRack out;
    out.group = std::move(g);
    const PermGroup& grp = out.group;

    std::vector<size_t> s_index;
    std::vector<CosetDecomposition> cosets;
    bool quandle_expected = true;
    for (const auto& pair : spec.pairs) {
        auto si = grp.find(pair.s);
        if (!si) throw ValidationError("pair element does not lie in the group");
        s_index.push_back(*si);
        std::vector<size_t> h = subgroup_elements(grp, pair.subgroup_gens);
        for (size_t hi : h) {
            const Perm& hp = grp.elements()[hi];
            if (!(hp.compose(pair.s) == pair.s.compose(hp)))
                throw NotCentralizing("subgroup element " + hp.cycle_string() +
                                      " does not centralize " + pair.s.cycle_string());
        }
        if (!std::binary_search(h.begin(), h.end(), *si)) quandle_expected = false;
        out.subgroups.push_back(h);
        cosets.push_back(left_cosets(grp, h));
    }

    // global element order: pairs in order, cosets by representative inside each
    std::vector<size_t> offset;
    size_t total = 0;
    for (const auto& c : cosets) {
        offset.push_back(total);
        total += c.rep.size();
    }
    out.pair_of.resize(total);
    out.coset_rep.resize(total);
    out.pair_elements.resize(spec.pairs.size());
    for (size_t p = 0; p < spec.pairs.size(); ++p) {
        for (size_t c = 0; c < cosets[p].rep.size(); ++c) {
            size_t e = offset[p] + c;
            out.pair_of[e] = static_cast<int>(p);
            out.coset_rep[e] = cosets[p].rep[c];
            out.pair_elements[p].push_back(static_cast<int>(e));
        }
    }

    // x H_s ▷ y H_t = (x s x⁻¹) y H_t, so the row of xH_s is left translation
    // by the conjugate x s x⁻¹
    const int n = static_cast<int>(total);
    std::vector<int> flat(total * total);
    for (size_t p = 0; p < spec.pairs.size(); ++p) {
        for (size_t cx = 0; cx < cosets[p].rep.size(); ++cx) {
            const Perm& gx = grp.elements()[cosets[p].rep[cx]];
            Perm conj = spec.pairs[p].s.conjugated_by(gx);
            size_t x = offset[p] + cx;
            for (size_t q = 0; q < spec.pairs.size(); ++q) {
                for (size_t cy = 0; cy < cosets[q].rep.size(); ++cy) {
                    size_t y = offset[q] + cy;
                    size_t img = grp.index_of(conj.compose(grp.elements()[cosets[q].rep[cy]]));
                    flat[x * total + y] =
                        static_cast<int>(offset[q]) + cosets[q].coset_of[img];
                }
            }
        }
    }
    out.rack = FiniteRack::from_flat(n, std::move(flat));
    RACKQ_ASSERT(out.rack.is_quandle() == quandle_expected,
                 "quandle-ness must match s ∈ H_s for all pairs");
    return out;
}

JoyceRepresentation joyce_representation(const FiniteRack& r, size_t cap) {
    PermGroup inn = inner_group(r, cap);
    ComponentDecomposition comps = components(r);

    JoyceRepresentation out;
    out.spec.degree = r.size();
    for (int x = 0; x < r.size(); ++x) out.spec.group_gens.push_back(r.psi(x));

    for (int rep : comps.representatives) {
        Perm s = r.psi(rep);
        std::vector<size_t> stab = stabilizer(inn, rep);
        std::vector<Perm> h_gens;
        for (size_t idx : stab) {
            const Perm& h = inn.elements()[idx];
            // g(x) = x forces g ψ_x g⁻¹ = ψ_{g(x)} = ψ_x, so stabilizers centralize
            RACKQ_ASSERT(h.compose(s) == s.compose(h), "stabilizer fails to centralize ψ");
            h_gens.push_back(h);
        }
        out.spec.pairs.push_back(CosetPair{s, std::move(h_gens)});
    }

    out.realized = build_coset_rack(out.spec, cap);
    const FiniteRack& c = out.realized.rack;
    RACKQ_ASSERT(c.size() == r.size(), "coset realization has the wrong size");

    // gStab(x_s) ↦ g(x_s), and check it is an isomorphism of racks
    out.to_rack.resize(static_cast<size_t>(c.size()));
    std::vector<bool> hit(static_cast<size_t>(r.size()), false);
    for (int e = 0; e < c.size(); ++e) {
        int p = out.realized.pair_of[static_cast<size_t>(e)];
        const Perm& gx = out.realized.group.elements()[out.realized.coset_rep[static_cast<size_t>(e)]];
        int image = gx(comps.representatives[static_cast<size_t>(p)]);
        out.to_rack[static_cast<size_t>(e)] = image;
        RACKQ_ASSERT(!hit[static_cast<size_t>(image)], "coset-to-element map is not injective");
        hit[static_cast<size_t>(image)] = true;
    }
    for (int a = 0; a < c.size(); ++a)
        for (int b = 0; b < c.size(); ++b)
            RACKQ_ASSERT(out.to_rack[static_cast<size_t>(c.op(a, b))] ==
                             r.op(out.to_rack[static_cast<size_t>(a)],
                                  out.to_rack[static_cast<size_t>(b)]),
                         "coset-to-element map is not a rack homomorphism");
    out.verified = true;
    return out;
}

CosetRackSpec conjugation_quandle_spec(const std::vector<Perm>& group_gens, size_t cap) {
    std::vector<int> labels(group_gens.size());
    std::iota(labels.begin(), labels.end(), 0);
    PermGroup g = PermGroup::generate(group_gens, labels, cap);

    CosetRackSpec spec;
    spec.degree = g.degree();
    spec.group_gens = group_gens;

    std::vector<bool> seen(g.order(), false);
    for (size_t i = 0; i < g.order(); ++i) {
        if (seen[i]) continue;
        // conjugacy class of elements()[i]; i is its smallest-index representative
        for (const auto& e : g.elements()) {
            seen[g.index_of(g.elements()[i].conjugated_by(e))] = true;
        }
        std::vector<Perm> cent;
        for (size_t ci : centralizer(g, g.elements()[i])) cent.push_back(g.elements()[ci]);
        spec.pairs.push_back(CosetPair{g.elements()[i], std::move(cent)});
    }
    return spec;
}

} // namespace rackq
