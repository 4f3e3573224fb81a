#include "rackq/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

namespace rackq {

PermGroup PermGroup::generate(std::vector<Perm> gens, std::vector<int> labels, size_t cap) {
    RACKQ_ASSERT(!gens.empty(), "need at least one generator");
    RACKQ_ASSERT(gens.size() == labels.size(), "one label per generator");
    const int degree = gens.front().degree();
    for (const auto& g : gens)
        RACKQ_ASSERT(g.degree() == degree, "generators act on the same points");

    PermGroup out;
    out.degree_ = degree;
    out.gens_ = std::move(gens);
    out.labels_ = std::move(labels);

    constexpr size_t npos = std::numeric_limits<size_t>::max();
    Perm id = Perm::identity(degree);
    out.elements_.push_back(id);
    out.index_.emplace(id, 0);
    out.parent_.emplace_back(npos, npos);

    // breadth-first closure, multiplying by generators on the right; since the
    // generators have finite order the positive products exhaust the group,
    // and parent links spell a positive witness word for every element
    for (size_t head = 0; head < out.elements_.size(); ++head) {
        for (size_t gi = 0; gi < out.gens_.size(); ++gi) {
            Perm next = out.elements_[head].compose(out.gens_[gi]);
            if (out.index_.contains(next)) continue;
            if (out.elements_.size() >= cap)
                throw GroupTooLarge("group enumeration exceeded cap of " + std::to_string(cap));
            out.index_.emplace(next, out.elements_.size());
            out.elements_.push_back(std::move(next));
            out.parent_.emplace_back(head, gi);
        }
    }
    return out;
}

size_t PermGroup::index_of(const Perm& p) const {
    auto it = index_.find(p);
    RACKQ_ASSERT(it != index_.end(), "permutation not in the enumerated group");
    return it->second;
}

std::optional<size_t> PermGroup::find(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> PermGroup::witness(size_t idx) const {
    constexpr size_t npos = std::numeric_limits<size_t>::max();
    std::vector<int> word;
    while (parent_[idx].first != npos) {
        word.push_back(labels_[parent_[idx].second]);
        idx = parent_[idx].first;
    }
    std::reverse(word.begin(), word.end());
    return word;
}

size_t PermGroup::inverse_index(size_t idx) const { return index_of(elements_[idx].inverse()); }

PermGroup inner_group(const FiniteRack& r, size_t cap) {
    std::vector<Perm> gens;
    std::vector<int> labels;
    gens.reserve(static_cast<size_t>(r.size()));
    for (int x = 0; x < r.size(); ++x) {
        gens.push_back(r.psi(x));
        labels.push_back(x);
    }
    return PermGroup::generate(std::move(gens), std::move(labels), cap);
}

std::vector<size_t> subgroup_elements(const PermGroup& g, const std::vector<Perm>& gens) {
    std::set<size_t> seen;
    seen.insert(0);  // identity
    std::vector<size_t> gen_idx;
    for (const auto& p : gens) {
        auto idx = g.find(p);
        if (!idx) throw ValidationError("subgroup generator lies outside the group");
        gen_idx.push_back(*idx);
        seen.insert(*idx);
    }
    std::deque<size_t> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
        size_t cur = queue.front();
        queue.pop_front();
        for (size_t gi : gen_idx) {
            Perm next = g.elements()[cur].compose(g.elements()[gi]);
            size_t ni = g.index_of(next);
            if (seen.insert(ni).second) queue.push_back(ni);
        }
    }
    return std::vector<size_t>(seen.begin(), seen.end());
}

bool conjugation_closed(const std::vector<Perm>& s, const PermGroup& g) {
    std::set<Perm> sset(s.begin(), s.end());
    for (const auto& elem : g.elements())
        for (const auto& p : s)
            if (!sset.contains(p.conjugated_by(elem))) return false;
    return true;
}

std::vector<Perm> conjugation_closure(const std::vector<Perm>& s, const PermGroup& g) {
    // closing under conjugation by the generators closes under the whole group
    std::set<Perm> closed(s.begin(), s.end());
    std::deque<Perm> queue(s.begin(), s.end());
    while (!queue.empty()) {
        Perm cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& gen : g.generators()) {
            for (const Perm& c : {cur.conjugated_by(gen), cur.conjugated_by(gen.inverse())}) {
                if (closed.insert(c).second) queue.push_back(c);
            }
        }
    }
    return std::vector<Perm>(closed.begin(), closed.end());
}

std::vector<size_t> stabilizer(const PermGroup& g, int point) {
    RACKQ_ASSERT(point >= 0 && point < g.degree(), "point out of range");
    std::vector<size_t> out;
    for (size_t i = 0; i < g.order(); ++i)
        if (g.elements()[i](point) == point) out.push_back(i);
    return out;
}

std::vector<size_t> centralizer(const PermGroup& g, const Perm& p) {
    std::vector<size_t> out;
    for (size_t i = 0; i < g.order(); ++i) {
        const Perm& e = g.elements()[i];
        if (e.compose(p) == p.compose(e)) out.push_back(i);
    }
    return out;
}

NormTable word_norm(const PermGroup& g, const std::vector<Perm>& s,
                    bool close_under_conjugation) {
    std::vector<Perm> gens = close_under_conjugation ? conjugation_closure(s, g) : s;
    // moves: right multiplication by S ∪ S⁻¹
    std::set<Perm> move_set;
    for (const auto& p : gens) {
        if (!g.contains(p)) throw ValidationError("norm generator lies outside the group");
        move_set.insert(p);
        move_set.insert(p.inverse());
    }
    std::vector<size_t> moves;
    for (const auto& p : move_set) moves.push_back(g.index_of(p));

    constexpr unsigned unseen = std::numeric_limits<unsigned>::max();
    NormTable table;
    table.norm.assign(g.order(), unseen);
    table.norm[0] = 0;
    std::deque<size_t> queue{0};
    while (!queue.empty()) {
        size_t cur = queue.front();
        queue.pop_front();
        for (size_t mv : moves) {
            size_t next = g.index_of(g.elements()[cur].compose(g.elements()[mv]));
            if (table.norm[next] == unseen) {
                table.norm[next] = table.norm[cur] + 1;
                queue.push_back(next);
            }
        }
    }
    for (unsigned v : table.norm) {
        if (v == unseen)
            throw NotGenerating("the given set together with inverses does not generate the group");
        table.diameter = std::max(table.diameter, v);
    }
    return table;
}

Rat uniform_mean(const PermGroup& g, const std::function<Rat(const Perm&)>& f) {
    Rat sum(0);
    for (const auto& e : g.elements()) sum += f(e);
    return sum / Rat(static_cast<unsigned long>(g.order()));
}

CosetDecomposition left_cosets(const PermGroup& g, const std::vector<size_t>& subgroup) {
    CosetDecomposition out;
    out.coset_of.assign(g.order(), -1);
    for (size_t x = 0; x < g.order(); ++x) {
        if (out.coset_of[x] >= 0) continue;
        int id = static_cast<int>(out.rep.size());
        out.rep.push_back(x);
        for (size_t hi : subgroup) {
            size_t m = g.index_of(g.elements()[x].compose(g.elements()[hi]));
            RACKQ_ASSERT(out.coset_of[m] < 0 || out.coset_of[m] == id, "coset overlap");
            out.coset_of[m] = id;
        }
    }
    return out;
}

QuotientMetric quotient_metric(const PermGroup& g, const std::vector<Perm>& s,
                               const std::vector<Perm>& h_gens) {
    auto sbar = conjugation_closure(s, g);
    for (const auto& p : sbar)
        if (!g.contains(p)) throw ValidationError("norm generator lies outside the group");
    if (subgroup_elements(g, sbar).size() != g.order())
        throw NotNormallyGenerating("the conjugation closure of S does not generate the group");
    NormTable norms = word_norm(g, sbar, /*close_under_conjugation=*/false);

    std::vector<size_t> h = subgroup_elements(g, h_gens);
    CosetDecomposition cosets = left_cosets(g, h);
    QuotientMetric out;
    out.coset_rep = std::move(cosets.rep);
    out.coset_of = std::move(cosets.coset_of);

    const size_t ncosets = out.coset_rep.size();
    out.dist.assign(ncosets, std::vector<unsigned>(ncosets, 0));
    for (size_t a = 0; a < ncosets; ++a) {
        Perm xa_inv = g.elements()[out.coset_rep[a]].inverse();
        for (size_t b = 0; b < ncosets; ++b) {
            Perm xab = xa_inv.compose(g.elements()[out.coset_rep[b]]);
            unsigned best = std::numeric_limits<unsigned>::max();
            for (size_t hi : h)
                best = std::min(best, norms.norm[g.index_of(xab.compose(g.elements()[hi]))]);
            out.dist[a][b] = best;
            out.diameter = std::max(out.diameter, best);
        }
    }
    return out;
}

} // namespace rackq
