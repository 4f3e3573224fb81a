#pragma once

#include "rackq/rational.hpp"

#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

namespace rackq {

// Exact rational matrix. Storage is dense by default; construction from
// triplets switches to sparse rows when fewer than 10% of entries are nonzero.
// Elimination (rank / kernel / solve) always runs fraction-free Bareiss on
// integer-scaled sparse rows, so both storages share one code path.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(size_t rows, size_t cols);  // dense zeros

    using Triplet = std::tuple<size_t, size_t, Rat>;
    static RationalMatrix from_triplets(size_t rows, size_t cols, std::vector<Triplet> entries);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool sparse() const { return sparse_; }
    size_t nonzeros() const;

    Rat at(size_t i, size_t j) const;
    void set(size_t i, size_t j, const Rat& v);  // dense storage only

    // row i as sorted (col, value) pairs, zeros skipped
    std::vector<std::pair<size_t, Rat>> row_entries(size_t i) const;

    RationalMatrix multiply(const RationalMatrix& other) const;
    RationalMatrix transposed() const;
    bool is_zero() const;

private:
    size_t rows_ = 0, cols_ = 0;
    bool sparse_ = false;
    std::vector<Rat> dense_;                                   // row-major, when !sparse_
    std::vector<std::vector<std::pair<size_t, Rat>>> rows_sp_; // sorted by col, when sparse_
};

// rank via fraction-free Bareiss elimination (pivot row chosen by smallest
// bit-length pivot entry); exact, no tolerances anywhere
size_t rank(const RationalMatrix& m);

// basis of { v : M v = 0 }, each vector of length cols(); deterministic order
// (one vector per free column, ascending)
std::vector<std::vector<Rat>> kernel_basis(const RationalMatrix& m);

// one exact solution of M x = b, or std::nullopt when the system is inconsistent
std::optional<std::vector<Rat>> solve(const RationalMatrix& m, const std::vector<Rat>& b);

} // namespace rackq
