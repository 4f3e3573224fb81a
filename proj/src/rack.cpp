#include "rackq/rack.hpp"

#include <algorithm>
#include <numeric>

namespace rackq {

FiniteRack::FiniteRack(int n, std::vector<int> table) : n_(n), table_(std::move(table)) {
    inv_.assign(table_.size(), 0);
    for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y) inv_[static_cast<size_t>(x) * n_ + op(x, y)] = y;
    quandle_ = true;
    for (int x = 0; x < n_; ++x)
        if (op(x, x) != x) {
            quandle_ = false;
            break;
        }
}

FiniteRack FiniteRack::validate(const std::vector<std::vector<int>>& grid) {
    const int n = static_cast<int>(grid.size());
    if (n == 0) throw MalformedGrid("empty operation table");
    std::vector<int> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(grid[static_cast<size_t>(x)].size()) != n)
            throw MalformedGrid("row " + std::to_string(x) + " has " +
                                std::to_string(grid[static_cast<size_t>(x)].size()) +
                                " entries, expected " + std::to_string(n));
        for (int v : grid[static_cast<size_t>(x)]) {
            if (v < 0 || v >= n)
                throw MalformedGrid("entry " + std::to_string(v) + " out of range in row " +
                                    std::to_string(x));
            flat.push_back(v);
        }
    }
    return from_flat(n, std::move(flat));
}

FiniteRack FiniteRack::from_flat(int n, std::vector<int> flat) {
    if (n <= 0 || static_cast<size_t>(n) * n != flat.size())
        throw MalformedGrid("table size does not match");
    for (int v : flat)
        if (v < 0 || v >= n) throw MalformedGrid("entry " + std::to_string(v) + " out of range");
    // rows must be bijections
    for (int x = 0; x < n; ++x) {
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (int y = 0; y < n; ++y) {
            int v = flat[static_cast<size_t>(x) * n + y];
            if (seen[static_cast<size_t>(v)]) throw NotABijection(x);
            seen[static_cast<size_t>(v)] = true;
        }
    }
    FiniteRack r(n, std::move(flat));
    // left self-distributivity, exhaustively
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (r.op(x, r.op(y, z)) != r.op(r.op(x, y), r.op(x, z)))
                    throw SelfDistributivityFails(x, y, z);
    return r;
}

Perm FiniteRack::psi(int x) const {
    std::vector<int> images(static_cast<size_t>(n_));
    for (int y = 0; y < n_; ++y) images[static_cast<size_t>(y)] = op(x, y);
    return Perm(std::move(images));
}

std::vector<std::vector<int>> FiniteRack::grid() const {
    std::vector<std::vector<int>> g(static_cast<size_t>(n_));
    for (int x = 0; x < n_; ++x) {
        g[static_cast<size_t>(x)].assign(table_.begin() + static_cast<ptrdiff_t>(x) * n_,
                                         table_.begin() + static_cast<ptrdiff_t>(x + 1) * n_);
    }
    return g;
}

FiniteRack trivial_rack(int n) {
    if (n <= 0) throw MalformedGrid("size must be positive");
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) flat[static_cast<size_t>(x) * n + y] = y;
    return FiniteRack::from_flat(n, std::move(flat));
}

FiniteRack dihedral_quandle(int n) {
    if (n <= 0) throw MalformedGrid("size must be positive");
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            flat[static_cast<size_t>(x) * n + y] = ((2 * x - y) % n + n) % n;
    return FiniteRack::from_flat(n, std::move(flat));
}

FiniteRack cyclic_rack(int n) {
    if (n <= 0) throw MalformedGrid("size must be positive");
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) flat[static_cast<size_t>(x) * n + y] = (y + 1) % n;
    return FiniteRack::from_flat(n, std::move(flat));
}

FiniteRack product_rack(const FiniteRack& r1, const FiniteRack& r2) {
    const int n1 = r1.size(), n2 = r2.size(), n = n1 * n2;
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n2; ++b)
            for (int c = 0; c < n1; ++c)
                for (int d = 0; d < n2; ++d) {
                    int x = a * n2 + b, y = c * n2 + d;
                    flat[static_cast<size_t>(x) * n + y] = r1.op(a, c) * n2 + r2.op(b, d);
                }
    return FiniteRack::from_flat(n, std::move(flat));
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// class labels numbered by smallest member, ascending
std::vector<int> number_classes(UnionFind& uf, int n, int* count) {
    std::vector<int> label(static_cast<size_t>(n), -1);
    int next = 0;
    for (int x = 0; x < n; ++x) {
        int root = uf.find(x);
        if (label[static_cast<size_t>(root)] < 0) label[static_cast<size_t>(root)] = next++;
        label[static_cast<size_t>(x)] = label[static_cast<size_t>(root)];
    }
    *count = next;
    return label;
}

} // namespace

QuandleQuotient canonical_quandle_quotient(const FiniteRack& r) {
    const int n = r.size();
    // x ≈ ψ_x^m(x): merging each x with ψ_x(x) generates the whole relation,
    // because ψ is constant on the classes
    UnionFind uf(n);
    for (int x = 0; x < n; ++x) uf.merge(x, r.op(x, x));
    int classes = 0;
    std::vector<int> proj = number_classes(uf, n, &classes);

    std::vector<int> qtable(static_cast<size_t>(classes) * classes, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int cx = proj[static_cast<size_t>(x)], cy = proj[static_cast<size_t>(y)];
            int val = proj[static_cast<size_t>(r.op(x, y))];
            int& slot = qtable[static_cast<size_t>(cx) * classes + cy];
            RACKQ_ASSERT(slot == -1 || slot == val,
                         "quotient operation not well-defined on classes");
            slot = val;
        }
    FiniteRack q = FiniteRack::from_flat(classes, std::move(qtable));
    RACKQ_ASSERT(q.is_quandle(), "canonical quotient is not a quandle");
    return QuandleQuotient{std::move(q), std::move(proj)};
}

EnvelopingAbelianization enveloping_abelianization(const FiniteRack& r) {
    // In the abelianized enveloping group the defining relations collapse to
    // [x ▷ y] = [y], so generators are identified exactly along components.
    const int n = r.size();
    UnionFind uf(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) uf.merge(y, r.op(x, y));
    int count = 0;
    std::vector<int> comp = number_classes(uf, n, &count);
    (void)comp;
    EnvelopingAbelianization out;
    out.rank = count;
    out.component_to_basis.resize(static_cast<size_t>(count));
    std::iota(out.component_to_basis.begin(), out.component_to_basis.end(), 0);
    return out;
}

namespace {

bool extend_isomorphism(const FiniteRack& a, const FiniteRack& b, std::vector<int>& img,
                        std::vector<bool>& used, int x) {
    const int n = a.size();
    if (x == n) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (img[static_cast<size_t>(a.op(i, j))] !=
                    b.op(img[static_cast<size_t>(i)], img[static_cast<size_t>(j)]))
                    return false;
        return true;
    }
    for (int v = 0; v < n; ++v) {
        if (used[static_cast<size_t>(v)]) continue;
        img[static_cast<size_t>(x)] = v;
        used[static_cast<size_t>(v)] = true;
        // prune against the already-assigned prefix
        bool ok = true;
        for (int y = 0; y <= x && ok; ++y) {
            int xy = a.op(x, y), yx = a.op(y, x);
            if (xy <= x && img[static_cast<size_t>(xy)] != b.op(v, img[static_cast<size_t>(y)]))
                ok = false;
            if (ok && yx <= x && img[static_cast<size_t>(yx)] != b.op(img[static_cast<size_t>(y)], v))
                ok = false;
        }
        if (ok && extend_isomorphism(a, b, img, used, x + 1)) return true;
        used[static_cast<size_t>(v)] = false;
    }
    img[static_cast<size_t>(x)] = -1;
    return false;
}

} // namespace

std::optional<std::vector<int>> find_isomorphism(const FiniteRack& a, const FiniteRack& b) {
    if (a.size() != b.size()) return std::nullopt;
    if (a.size() > 12)
        throw CapExceeded("isomorphism search is gated to sizes <= 12, got " +
                          std::to_string(a.size()));
    if (a.is_quandle() != b.is_quandle()) return std::nullopt;
    std::vector<int> img(static_cast<size_t>(a.size()), -1);
    std::vector<bool> used(static_cast<size_t>(a.size()), false);
    if (extend_isomorphism(a, b, img, used, 0)) return img;
    return std::nullopt;
}

} // namespace rackq
