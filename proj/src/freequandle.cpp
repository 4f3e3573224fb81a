#include "rackq/freequandle.hpp"

#include <cstdlib>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace rackq {

FreeWord reduce(const std::vector<int8_t>& letters) {
    FreeWord out;
    out.letters.reserve(letters.size());
    for (int8_t l : letters) {
        RACKQ_ASSERT(l != 0, "letter 0 is not a generator");
        if (!out.letters.empty() && out.letters.back() == -l)
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

FreeWord concat_reduce(const FreeWord& a, const FreeWord& b) {
    FreeWord out = a;
    for (int8_t l : b.letters) {
        if (!out.letters.empty() && out.letters.back() == -l)
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

FreeWord inverse(const FreeWord& w) {
    FreeWord out;
    out.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back(static_cast<int8_t>(-*it));
    return out;
}

std::vector<long> abelianization(const FreeWord& w, int k) {
    std::vector<long> out(static_cast<size_t>(k), 0);
    for (int8_t l : w.letters) {
        int idx = std::abs(static_cast<int>(l)) - 1;
        RACKQ_ASSERT(idx >= 0 && idx < k, "letter outside the generator range");
        out[static_cast<size_t>(idx)] += l > 0 ? 1 : -1;
    }
    return out;
}

FQElement fq_canonical(FreeWord w, int generator) {
    RACKQ_ASSERT(generator >= 0 && generator < 126, "generator index out of range");
    w = reduce(w.letters);
    int8_t g = static_cast<int8_t>(generator + 1);
    // w g w⁻¹ is unchanged by stripping trailing g^{±1} from w
    while (!w.letters.empty() && (w.letters.back() == g || w.letters.back() == -g))
        w.letters.pop_back();
    return FQElement{std::move(w), generator};
}

FQElement fq_basepoint(int generator) { return fq_canonical(FreeWord{}, generator); }

namespace {

// reduce(wa · mid · wa⁻¹ · wb), all factors already reduced
FreeWord conjugate_times(const FreeWord& wa, int8_t mid, const FreeWord& wb) {
    FreeWord out = wa;
    if (!out.letters.empty() && out.letters.back() == -mid)
        out.letters.pop_back();
    else
        out.letters.push_back(mid);
    out = concat_reduce(out, inverse(wa));
    return concat_reduce(out, wb);
}

std::string fq_key(const FQElement& e) {
    std::string s;
    s.reserve(e.conjugator.letters.size() + 1);
    s.push_back(static_cast<char>(e.generator));
    for (int8_t l : e.conjugator.letters) s.push_back(static_cast<char>(l));
    return s;
}

} // namespace

FQElement fq_op(const FQElement& a, const FQElement& b) {
    int8_t g = static_cast<int8_t>(a.generator + 1);
    return fq_canonical(conjugate_times(a.conjugator, g, b.conjugator), b.generator);
}

FQElement fq_op_inv(const FQElement& a, const FQElement& b) {
    int8_t g = static_cast<int8_t>(-(a.generator + 1));
    return fq_canonical(conjugate_times(a.conjugator, g, b.conjugator), b.generator);
}

std::vector<FQElement> fq_movers(int k, int len_cap) {
    RACKQ_ASSERT(k >= 1 && k <= 126 && len_cap >= 0, "bad mover parameters");
    std::vector<int8_t> alphabet;
    for (int i = 1; i <= k; ++i) {
        alphabet.push_back(static_cast<int8_t>(i));
        alphabet.push_back(static_cast<int8_t>(-i));
    }
    std::vector<FQElement> out;
    for (int gen = 0; gen < k; ++gen) {
        int8_t g = static_cast<int8_t>(gen + 1);
        out.push_back(fq_basepoint(gen));
        // reduced words by length, lexicographic in the g1 < g1⁻¹ < g2 < ... order
        std::vector<FreeWord> level{FreeWord{}};
        for (int len = 1; len <= len_cap; ++len) {
            std::vector<FreeWord> next;
            for (const FreeWord& w : level)
                for (int8_t l : alphabet) {
                    if (!w.letters.empty() && w.letters.back() == -l) continue;
                    FreeWord e = w;
                    e.letters.push_back(l);
                    next.push_back(std::move(e));
                }
            // canonical conjugators never end in the element's own generator,
            // but longer words still pass through such endings
            for (const FreeWord& w : next)
                if (w.letters.back() != g && w.letters.back() != -g)
                    out.push_back(FQElement{w, gen});
            level = std::move(next);
        }
    }
    return out;
}

BallResult fq_ball(int k, int radius, int mover_len_cap, size_t max_elements) {
    RACKQ_ASSERT(k >= 1 && radius >= 0, "bad ball parameters");
    std::vector<FQElement> movers = fq_movers(k, mover_len_cap);
    BallResult out;
    std::unordered_set<std::string> seen;
    std::vector<FQElement> frontier;
    for (int i = 0; i < k; ++i) {
        FQElement b = fq_basepoint(i);
        seen.insert(fq_key(b));
        out.elements.push_back(b);
        frontier.push_back(std::move(b));
    }
    out.level_sizes.push_back(frontier.size());
    for (int d = 1; d <= radius && !frontier.empty(); ++d) {
        std::vector<FQElement> next;
        for (const FQElement& e : frontier) {
            for (const FQElement& s : movers) {
                for (int dir = 0; dir < 2; ++dir) {
                    FQElement img = dir == 0 ? fq_op(s, e) : fq_op_inv(s, e);
                    std::string key = fq_key(img);
                    if (seen.contains(key)) continue;
                    if (out.elements.size() >= max_elements)
                        throw CapExceeded("ball exceeded " + std::to_string(max_elements) +
                                          " elements at radius " + std::to_string(d));
                    seen.insert(std::move(key));
                    out.elements.push_back(img);
                    next.push_back(std::move(img));
                }
            }
        }
        out.level_sizes.push_back(next.size());
        frontier = std::move(next);
    }
    return out;
}

long fq_abelian_lower_bound(const FQElement& a, const FQElement& b, int k) {
    if (a.generator != b.generator)
        throw DifferentComponents("free quandle elements over different generators");
    auto ab = abelianization(concat_reduce(inverse(a.conjugator), b.conjugator), k);
    long out = 0;
    for (int j = 0; j < k; ++j)
        if (j != a.generator) out += std::labs(ab[static_cast<size_t>(j)]);
    return out;
}

FqDistance fq_distance(const FQElement& a, const FQElement& b, int k,
                       const FqDistanceCaps& caps) {
    FqDistance out;
    out.lower = fq_abelian_lower_bound(a, b, k);
    FQElement ca = fq_canonical(a.conjugator, a.generator);
    FQElement cb = fq_canonical(b.conjugator, b.generator);
    if (ca == cb) {
        out.upper = 0;
        return out;
    }

    std::vector<FQElement> movers = fq_movers(k, caps.mover_len_cap);
    std::unordered_map<std::string, int> da{{fq_key(ca), 0}}, db{{fq_key(cb), 0}};
    std::vector<FQElement> fa{std::move(ca)}, fb{std::move(cb)};
    const int budget_a = (caps.radius + 1) / 2, budget_b = caps.radius / 2;
    int depth_a = 0, depth_b = 0;
    long best = -1;

    // grow both balls level by level (smaller frontier first); every cross
    // meeting updates the best total, so any path within the radius is found
    while ((depth_a < budget_a && !fa.empty()) || (depth_b < budget_b && !fb.empty())) {
        bool grow_a;
        if (depth_a >= budget_a || fa.empty()) grow_a = false;
        else if (depth_b >= budget_b || fb.empty()) grow_a = true;
        else grow_a = fa.size() <= fb.size();

        auto& frontier = grow_a ? fa : fb;
        auto& dist = grow_a ? da : db;
        auto& other = grow_a ? db : da;
        const int depth = grow_a ? ++depth_a : ++depth_b;

        std::vector<FQElement> next;
        for (const FQElement& e : frontier) {
            for (const FQElement& s : movers) {
                for (int dir = 0; dir < 2; ++dir) {
                    FQElement img = dir == 0 ? fq_op(s, e) : fq_op_inv(s, e);
                    std::string key = fq_key(img);
                    if (dist.contains(key)) continue;
                    if (da.size() + db.size() >= caps.max_nodes)
                        throw CapExceeded("distance search exceeded the node cap");
                    auto hit = other.find(key);
                    if (hit != other.end()) {
                        long total = depth + hit->second;
                        if (best < 0 || total < best) best = total;
                    }
                    dist.emplace(std::move(key), depth);
                    next.push_back(std::move(img));
                }
            }
        }
        frontier = std::move(next);
        if (best >= 0 && best <= out.lower) break; // nothing can beat the lower bound
    }
    if (best >= 0) out.upper = best;
    return out;
}

long hat_phi(const FQElement& e) {
    int8_t g = static_cast<int8_t>(e.generator + 1);
    long sum = 0;
    for (int8_t l : e.conjugator.letters) {
        if (l == g) ++sum;
        else if (l == -g) --sum;
    }
    return sum;
}

long hat_brooks(const FQElement& e) {
    const auto& w = e.conjugator.letters;
    long count = 0;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == 1 && w[i + 1] == 2) ++count;        // the pattern g1 g2
        else if (w[i] == -2 && w[i + 1] == -1) --count; // its inverse
    }
    return count;
}

DefectReport quasimorphism_defect(const std::function<std::optional<Rat>(const FQElement&)>& f,
                                  const std::vector<FQElement>& sample,
                                  const std::vector<FQElement>& movers) {
    DefectReport rep;
    rep.max_defect = Rat(0);
    for (const FQElement& b : sample) {
        std::optional<Rat> fb = f(b);
        if (!fb) {
            rep.pairs_skipped += 2 * movers.size();
            continue;
        }
        for (const FQElement& s : movers) {
            for (int dir = 0; dir < 2; ++dir) {
                FQElement img = dir == 0 ? fq_op(s, b) : fq_op_inv(s, b);
                std::optional<Rat> fi = f(img);
                if (!fi) {
                    ++rep.pairs_skipped;
                    continue;
                }
                Rat d = *fb - *fi;
                if (d < 0) d = -d;
                ++rep.pairs_checked;
                if (d > rep.max_defect) {
                    rep.max_defect = d;
                    rep.argmax_element = b;
                    rep.argmax_mover = s;
                }
            }
        }
    }
    return rep;
}

} // namespace rackq
