#include "rackq/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <string>

namespace rackq {

ComponentDecomposition components(const FiniteRack& r) {
    const int n = r.size();
    ComponentDecomposition out;
    out.component_of.assign(static_cast<size_t>(n), -1);
    for (int start = 0; start < n; ++start) {
        if (out.component_of[static_cast<size_t>(start)] >= 0) continue;
        int id = out.count++;
        out.representatives.push_back(start);
        out.members.emplace_back();
        std::deque<int> queue{start};
        out.component_of[static_cast<size_t>(start)] = id;
        while (!queue.empty()) {
            int cur = queue.front();
            queue.pop_front();
            out.members.back().push_back(cur);
            for (int w = 0; w < n; ++w) {
                for (int next : {r.op(w, cur), r.op_inv(w, cur)}) {
                    if (out.component_of[static_cast<size_t>(next)] < 0) {
                        out.component_of[static_cast<size_t>(next)] = id;
                        queue.push_back(next);
                    }
                }
            }
        }
        std::sort(out.members.back().begin(), out.members.back().end());
    }
    return out;
}

std::vector<int> distances_from(const FiniteRack& r, int x) {
    const int n = r.size();
    RACKQ_ASSERT(x >= 0 && x < n, "element out of range");
    std::vector<int> dist(static_cast<size_t>(n), -1);
    dist[static_cast<size_t>(x)] = 0;
    std::deque<int> queue{x};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int w = 0; w < n; ++w) {
            for (int next : {r.op(w, cur), r.op_inv(w, cur)}) {
                if (dist[static_cast<size_t>(next)] < 0) {
                    dist[static_cast<size_t>(next)] = dist[static_cast<size_t>(cur)] + 1;
                    queue.push_back(next);
                }
            }
        }
    }
    return dist;
}

int rack_distance(const FiniteRack& r, int x, int y) {
    RACKQ_ASSERT(y >= 0 && y < r.size(), "element out of range");
    int d = distances_from(r, x)[static_cast<size_t>(y)];
    if (d < 0)
        throw DifferentComponents("elements " + std::to_string(x) + " and " + std::to_string(y) +
                                  " lie in different components");
    return d;
}

DistanceTable distance_table(const FiniteRack& r) {
    DistanceTable out;
    out.comps = components(r);
    out.matrix.resize(static_cast<size_t>(out.comps.count));
    out.diameters.assign(static_cast<size_t>(out.comps.count), 0);
    for (int c = 0; c < out.comps.count; ++c) {
        const auto& mem = out.comps.members[static_cast<size_t>(c)];
        auto& mat = out.matrix[static_cast<size_t>(c)];
        mat.resize(mem.size());
        for (size_t i = 0; i < mem.size(); ++i) {
            auto dist = distances_from(r, mem[i]);
            mat[i].resize(mem.size());
            for (size_t j = 0; j < mem.size(); ++j) {
                int d = dist[static_cast<size_t>(mem[j])];
                RACKQ_ASSERT(d >= 0, "component member unreachable");
                mat[i][j] = d;
                out.diameters[static_cast<size_t>(c)] =
                    std::max(out.diameters[static_cast<size_t>(c)], d);
            }
        }
    }
    return out;
}

bool is_automorphism(const FiniteRack& r, const Perm& alpha) {
    if (alpha.degree() != r.size()) return false;
    for (int x = 0; x < r.size(); ++x)
        for (int y = 0; y < r.size(); ++y)
            if (alpha(r.op(x, y)) != r.op(alpha(x), alpha(y))) return false;
    return true;
}

bool check_isometry(const FiniteRack& r, const Perm& alpha) {
    if (!is_automorphism(r, alpha))
        throw NotAnAutomorphism("the permutation does not preserve the operation");
    for (int x = 0; x < r.size(); ++x) {
        auto from_x = distances_from(r, x);
        auto from_ax = distances_from(r, alpha(x));
        for (int y = 0; y < r.size(); ++y)
            RACKQ_ASSERT(from_x[static_cast<size_t>(y)] == from_ax[static_cast<size_t>(alpha(y))],
                         "automorphism failed to preserve a distance");
    }
    return true;
}

MetricQuotientCheck check_metric_quotient_equality(const CosetRackSpec& spec, size_t cap) {
    MetricQuotientCheck out;
    out.rack = build_coset_rack(spec, cap);
    const FiniteRack& r = out.rack.rack;
    const PermGroup& g = out.rack.group;

    // conjugation closure of S = {pair elements}; its subgroup N drives both
    // the components and the in-component word distances
    std::vector<Perm> s;
    for (const auto& p : spec.pairs) s.push_back(p.s);
    std::vector<Perm> sbar = conjugation_closure(s, g);
    std::vector<size_t> n_sub = subgroup_elements(g, sbar);

    // word norm of every element of N over S̄ ∪ S̄⁻¹ (BFS inside N)
    std::vector<size_t> moves;
    {
        std::set<size_t> move_set;
        for (const auto& p : sbar) {
            move_set.insert(g.index_of(p));
            move_set.insert(g.index_of(p.inverse()));
        }
        moves.assign(move_set.begin(), move_set.end());
    }
    std::vector<int> norm(g.order(), -1);
    norm[0] = 0;
    std::deque<size_t> queue{0};
    while (!queue.empty()) {
        size_t cur = queue.front();
        queue.pop_front();
        for (size_t mv : moves) {
            size_t next = g.index_of(g.elements()[cur].compose(g.elements()[mv]));
            if (norm[next] < 0) {
                norm[next] = norm[cur] + 1;
                queue.push_back(next);
            }
        }
    }
    for (size_t e : n_sub) RACKQ_ASSERT(norm[e] >= 0, "norm BFS missed a subgroup element");

    DistanceTable rack_metric = distance_table(r);
    out.equal = true;
    for (int c = 0; c < rack_metric.comps.count; ++c) {
        const auto& mem = rack_metric.comps.members[static_cast<size_t>(c)];
        out.members.push_back(mem);
        out.rack_matrix.push_back(rack_metric.matrix[static_cast<size_t>(c)]);

        // quotient distance inside the component:
        //   d(xH, yH) = min { |x⁻¹ y h| : h ∈ H, x⁻¹ y h ∈ N }
        std::vector<std::vector<int>> qmat(mem.size(), std::vector<int>(mem.size(), -1));
        for (size_t i = 0; i < mem.size(); ++i) {
            int p = out.rack.pair_of[static_cast<size_t>(mem[i])];
            const auto& h = out.rack.subgroups[static_cast<size_t>(p)];
            Perm xi_inv = g.elements()[out.rack.coset_rep[static_cast<size_t>(mem[i])]].inverse();
            for (size_t j = 0; j < mem.size(); ++j) {
                RACKQ_ASSERT(out.rack.pair_of[static_cast<size_t>(mem[j])] == p,
                             "component crosses coset spaces");
                Perm xy = xi_inv.compose(
                    g.elements()[out.rack.coset_rep[static_cast<size_t>(mem[j])]]);
                int best = -1;
                for (size_t hi : h) {
                    int v = norm[g.index_of(xy.compose(g.elements()[hi]))];
                    if (v >= 0 && (best < 0 || v < best)) best = v;
                }
                RACKQ_ASSERT(best >= 0, "same-component cosets with no connecting word");
                qmat[i][j] = best;
                if (best != rack_metric.matrix[static_cast<size_t>(c)][i][j]) out.equal = false;
            }
        }
        out.quotient_matrix.push_back(std::move(qmat));
    }
    return out;
}

LipschitzCheck check_extension_lipschitz(const FiniteRack& r) {
    QuandleQuotient q = canonical_quandle_quotient(r);
    LipschitzCheck out;
    out.ok = true;
    for (int x = 0; x < r.size(); ++x) {
        auto dist = distances_from(r, x);
        auto qdist = distances_from(q.quandle, q.projection[static_cast<size_t>(x)]);
        for (int y = 0; y < r.size(); ++y) {
            if (dist[static_cast<size_t>(y)] < 0) continue;
            int dq = qdist[static_cast<size_t>(q.projection[static_cast<size_t>(y)])];
            RACKQ_ASSERT(dq >= 0, "projection split a component");
            if (dq > dist[static_cast<size_t>(y)]) out.ok = false;
            out.max_slack = std::max(out.max_slack, dist[static_cast<size_t>(y)] - dq);
        }
    }
    return out;
}

Rat delta_f_defect(const FiniteRack& r, std::vector<int> basepoints) {
    ComponentDecomposition comps = components(r);
    if (basepoints.empty()) basepoints = comps.representatives;
    if (static_cast<int>(basepoints.size()) != comps.count)
        throw ValidationError("need exactly one basepoint per component");

    // f(x) = d(basepoint of x's component, x)
    std::vector<int> f(static_cast<size_t>(r.size()), -1);
    std::vector<bool> seen_comp(static_cast<size_t>(comps.count), false);
    for (int b : basepoints) {
        int c = comps.component_of[static_cast<size_t>(b)];
        if (seen_comp[static_cast<size_t>(c)])
            throw ValidationError("two basepoints in one component");
        seen_comp[static_cast<size_t>(c)] = true;
        auto dist = distances_from(r, b);
        for (int x = 0; x < r.size(); ++x)
            if (dist[static_cast<size_t>(x)] >= 0) f[static_cast<size_t>(x)] = dist[static_cast<size_t>(x)];
    }

    int defect = 0;
    for (int y = 0; y < r.size(); ++y)
        for (int x = 0; x < r.size(); ++x)
            defect = std::max(defect,
                              std::abs(f[static_cast<size_t>(x)] -
                                       f[static_cast<size_t>(r.op(y, x))]));
    return Rat(defect);
}

} // namespace rackq
