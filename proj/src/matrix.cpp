#include "rackq/matrix.hpp"

#include "rackq/errors.hpp"

#include <algorithm>
#include <map>

namespace rackq {

RationalMatrix::RationalMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), sparse_(false), dense_(rows * cols, Rat(0)) {}

RationalMatrix RationalMatrix::from_triplets(size_t rows, size_t cols,
                                             std::vector<Triplet> entries) {
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    // merge duplicates, drop zeros
    std::vector<std::vector<std::pair<size_t, Rat>>> sp(rows);
    size_t nnz = 0;
    for (size_t i = 0; i < entries.size();) {
        size_t r = std::get<0>(entries[i]), c = std::get<1>(entries[i]);
        RACKQ_ASSERT(r < rows && c < cols, "triplet out of range");
        Rat sum = std::get<2>(entries[i]);
        size_t j = i + 1;
        while (j < entries.size() && std::get<0>(entries[j]) == r && std::get<1>(entries[j]) == c) {
            sum += std::get<2>(entries[j]);
            ++j;
        }
        if (!rackq::is_zero(sum)) {
            sp[r].emplace_back(c, sum);
            ++nnz;
        }
        i = j;
    }
    RationalMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    // sparse below 10% density (and only when it actually saves space)
    bool use_sparse = rows * cols >= 64 && nnz * 10 < rows * cols;
    m.sparse_ = use_sparse;
    if (use_sparse) {
        m.rows_sp_ = std::move(sp);
    } else {
        m.dense_.assign(rows * cols, Rat(0));
        for (size_t r = 0; r < rows; ++r)
            for (auto& [c, v] : sp[r]) m.dense_[r * cols + c] = std::move(v);
    }
    return m;
}

size_t RationalMatrix::nonzeros() const {
    size_t nnz = 0;
    if (sparse_) {
        for (const auto& row : rows_sp_) nnz += row.size();
    } else {
        for (const auto& v : dense_)
            if (!rackq::is_zero(v)) ++nnz;
    }
    return nnz;
}

Rat RationalMatrix::at(size_t i, size_t j) const {
    RACKQ_ASSERT(i < rows_ && j < cols_, "index out of range");
    if (!sparse_) return dense_[i * cols_ + j];
    const auto& row = rows_sp_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& e, size_t col) { return e.first < col; });
    if (it != row.end() && it->first == j) return it->second;
    return Rat(0);
}

void RationalMatrix::set(size_t i, size_t j, const Rat& v) {
    RACKQ_ASSERT(!sparse_, "set() requires dense storage");
    RACKQ_ASSERT(i < rows_ && j < cols_, "index out of range");
    dense_[i * cols_ + j] = v;
}

std::vector<std::pair<size_t, Rat>> RationalMatrix::row_entries(size_t i) const {
    RACKQ_ASSERT(i < rows_, "row out of range");
    if (sparse_) return rows_sp_[i];
    std::vector<std::pair<size_t, Rat>> out;
    for (size_t j = 0; j < cols_; ++j)
        if (!rackq::is_zero(dense_[i * cols_ + j])) out.emplace_back(j, dense_[i * cols_ + j]);
    return out;
}

RationalMatrix RationalMatrix::multiply(const RationalMatrix& other) const {
    RACKQ_ASSERT(cols_ == other.rows_, "dimension mismatch in multiply");
    std::vector<Triplet> triplets;
    for (size_t i = 0; i < rows_; ++i) {
        std::map<size_t, Rat> acc;
        for (const auto& [k, a] : row_entries(i)) {
            for (const auto& [j, b] : other.row_entries(k)) acc[j] += a * b;
        }
        for (auto& [j, v] : acc)
            if (!rackq::is_zero(v)) triplets.emplace_back(i, j, std::move(v));
    }
    return from_triplets(rows_, other.cols_, std::move(triplets));
}

RationalMatrix RationalMatrix::transposed() const {
    std::vector<Triplet> triplets;
    for (size_t i = 0; i < rows_; ++i)
        for (const auto& [j, v] : row_entries(i)) triplets.emplace_back(j, i, v);
    return from_triplets(cols_, rows_, std::move(triplets));
}

bool RationalMatrix::is_zero() const { return nonzeros() == 0; }

namespace {

using IntRow = std::vector<std::pair<size_t, Int>>;  // sorted by column

void divexact_assign(Int& v, const Int& d) {
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
}

// rows of m scaled to integers (per-row lcm of denominators); optional extra
// column `rhs` appended at index m.cols()
std::vector<IntRow> integer_rows(const RationalMatrix& m, const std::vector<Rat>* rhs) {
    std::vector<IntRow> rows;
    rows.reserve(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) {
        auto entries = m.row_entries(i);
        if (rhs && !is_zero((*rhs)[i])) entries.emplace_back(m.cols(), (*rhs)[i]);
        Int l(1);
        for (const auto& [c, v] : entries) {
            (void)c;
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
        }
        IntRow row;
        row.reserve(entries.size());
        for (const auto& [c, v] : entries) {
            Int scaled = v.get_num() * (l / v.get_den());
            row.emplace_back(c, std::move(scaled));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// r <- (p*r - rc*prow) / d, merging sparse rows; entries at `col` cancel by construction
IntRow combine_rows(const IntRow& r, const Int& p, const Int& rc, const IntRow& prow,
                    const Int& d) {
    IntRow out;
    out.reserve(r.size() + prow.size());
    size_t i = 0, j = 0;
    bool trivial_d = (d == 1);
    while (i < r.size() || j < prow.size()) {
        size_t ci = i < r.size() ? r[i].first : SIZE_MAX;
        size_t cj = j < prow.size() ? prow[j].first : SIZE_MAX;
        size_t c = std::min(ci, cj);
        Int v(0);
        if (ci == c) v = p * r[i++].second;
        if (cj == c) v -= rc * prow[j++].second;
        if (v != 0) {
            if (!trivial_d) divexact_assign(v, d);
            out.emplace_back(c, std::move(v));
        }
    }
    return out;
}

void scale_row(IntRow& r, const Int& p, const Int& d) {
    bool trivial_d = (d == 1);
    for (auto& [c, v] : r) {
        (void)c;
        v *= p;
        if (!trivial_d) divexact_assign(v, d);
    }
}

struct EchelonResult {
    std::vector<IntRow> pivot_rows;   // leading entry of row i at pivot_cols[i], ascending
    std::vector<size_t> pivot_cols;
    std::vector<IntRow> residual;     // rows left active after all columns were processed
};

// Fraction-free (Bareiss) forward elimination over `ncols` columns. Pivot row
// chosen by smallest bit length of the pivot entry. Every active row is kept
// at the same minor order, so all divisions are exact. Columns >= ncols (the
// augmented right-hand side in solve) ride along but are never pivoted on.
EchelonResult bareiss_echelon(std::vector<IntRow> rows, size_t ncols) {
    EchelonResult res;
    std::vector<IntRow> active;
    active.reserve(rows.size());
    for (auto& r : rows)
        if (!r.empty()) active.push_back(std::move(r));

    Int prev(1);
    for (size_t col = 0; col < ncols && !active.empty(); ++col) {
        size_t best = SIZE_MAX;
        size_t best_bits = 0;
        for (size_t i = 0; i < active.size(); ++i) {
            // rows are in echelon-progress form: all entries in already
            // processed columns are zero, so a nonzero at `col` leads the row
            if (active[i].front().first != col) continue;
            size_t bits = bit_length(active[i].front().second);
            if (best == SIZE_MAX || bits < best_bits) {
                best = i;
                best_bits = bits;
            }
        }
        if (best == SIZE_MAX) continue;  // free column

        IntRow prow = std::move(active[best]);
        active.erase(active.begin() + static_cast<ptrdiff_t>(best));
        Int p = prow.front().second;

        std::vector<IntRow> next;
        next.reserve(active.size());
        for (auto& r : active) {
            IntRow updated;
            if (r.front().first == col) {
                updated = combine_rows(r, p, r.front().second, prow, prev);
            } else {
                updated = std::move(r);
                scale_row(updated, p, prev);
            }
            if (!updated.empty()) next.push_back(std::move(updated));
        }
        active = std::move(next);
        res.pivot_rows.push_back(std::move(prow));
        res.pivot_cols.push_back(col);
        prev = p;
    }
    res.residual = std::move(active);
    return res;
}

} // namespace

size_t rank(const RationalMatrix& m) {
    auto rows = integer_rows(m, nullptr);
    // duplicate and zero rows never affect the rank; dropping them keeps the
    // elimination small for the highly repetitive differential matrices
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    auto ech = bareiss_echelon(std::move(rows), m.cols());
    RACKQ_ASSERT(ech.residual.empty(), "rank elimination left unprocessed rows");
    return ech.pivot_cols.size();
}

std::vector<std::vector<Rat>> kernel_basis(const RationalMatrix& m) {
    auto rows = integer_rows(m, nullptr);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    auto ech = bareiss_echelon(std::move(rows), m.cols());

    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : ech.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        std::vector<Rat> v(m.cols(), Rat(0));
        v[j] = 1;
        for (size_t i = ech.pivot_rows.size(); i-- > 0;) {
            const IntRow& row = ech.pivot_rows[i];
            size_t pc = ech.pivot_cols[i];
            Rat acc(0);
            for (const auto& [c, coef] : row) {
                if (c <= pc || c > j) continue;  // v is zero past j
                if (!is_zero(v[c])) acc += Rat(coef) * v[c];
            }
            if (!is_zero(acc)) v[pc] = -acc / Rat(row.front().second);
        }
        basis.push_back(std::move(v));
    }
    // rank-nullity, checked on every call
    RACKQ_ASSERT(ech.pivot_cols.size() + basis.size() == m.cols(),
                 "rank + kernel dimension != column count");
    return basis;
}

std::optional<std::vector<Rat>> solve(const RationalMatrix& m, const std::vector<Rat>& b) {
    RACKQ_ASSERT(b.size() == m.rows(), "right-hand side length mismatch");
    auto rows = integer_rows(m, &b);
    auto ech = bareiss_echelon(std::move(rows), m.cols());

    const size_t bcol = m.cols();
    for (const auto& r : ech.residual) {
        // active rows after forward elimination have no entries in pivotable
        // columns; anything left is a 0 = nonzero contradiction
        if (!r.empty() && r.front().first == bcol) return std::nullopt;
        RACKQ_ASSERT(r.empty() || r.front().first == bcol,
                     "residual row has unprocessed matrix columns");
    }

    std::vector<Rat> x(m.cols(), Rat(0));
    for (size_t i = ech.pivot_rows.size(); i-- > 0;) {
        const IntRow& row = ech.pivot_rows[i];
        size_t pc = ech.pivot_cols[i];
        Rat rhs(0);
        Rat acc(0);
        for (const auto& [c, coef] : row) {
            if (c == bcol) {
                rhs = Rat(coef);
            } else if (c > pc && !is_zero(x[c])) {
                acc += Rat(coef) * x[c];
            }
        }
        x[pc] = (rhs - acc) / Rat(row.front().second);
    }
    return x;
}

} // namespace rackq
