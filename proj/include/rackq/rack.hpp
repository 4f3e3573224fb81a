#pragma once

#include "rackq/errors.hpp"
#include "rackq/perm.hpp"

#include <optional>
#include <vector>

namespace rackq {

// Finite rack: a set {0..n-1} with a binary operation x ▷ y whose rows
// y ↦ x ▷ y are bijections satisfying left self-distributivity
//   x ▷ (y ▷ z) = (x ▷ y) ▷ (x ▷ z).
// A quandle additionally has x ▷ x = x for every x.
class FiniteRack {
public:
    FiniteRack() = default;  // empty placeholder; every real instance is validated

    // checks squareness, entry range, row bijectivity and self-distributivity;
    // throws MalformedGrid / NotABijection / SelfDistributivityFails
    static FiniteRack validate(const std::vector<std::vector<int>>& grid);
    static FiniteRack from_flat(int n, std::vector<int> flat);

    int size() const { return n_; }
    int op(int x, int y) const { return table_[static_cast<size_t>(x) * n_ + y]; }  // x ▷ y
    int op_inv(int x, int y) const { return inv_[static_cast<size_t>(x) * n_ + y]; } // ψ_x⁻¹(y)
    bool is_quandle() const { return quandle_; }

    Perm psi(int x) const;  // the row permutation y ↦ x ▷ y
    const std::vector<int>& flat_table() const { return table_; }
    std::vector<std::vector<int>> grid() const;

    bool operator==(const FiniteRack& other) const {
        return n_ == other.n_ && table_ == other.table_;
    }

private:
    FiniteRack(int n, std::vector<int> table);
    int n_ = 0;
    std::vector<int> table_;  // row-major, table_[x*n + y] = x ▷ y
    std::vector<int> inv_;    // inv_[x*n + y] = ψ_x⁻¹(y)
    bool quandle_ = false;
};

// standard constructions
FiniteRack trivial_rack(int n);     // x ▷ y = y (quandle)
FiniteRack dihedral_quandle(int n); // x ▷ y = 2x - y mod n
FiniteRack cyclic_rack(int n);      // x ▷ y = y + 1 mod n (a rack, not a quandle, for n >= 2)

// componentwise operation on pairs, (a,b) ranked as a*size(s2)+b
FiniteRack product_rack(const FiniteRack& r1, const FiniteRack& r2);

// Largest quandle quotient: classes of the relation y ≈ ψ_x^n(x); the quotient
// table is well-defined (asserted) and `projection` maps each element to its
// class (classes numbered by smallest member, ascending).
struct QuandleQuotient {
    FiniteRack quandle;
    std::vector<int> projection;
};
QuandleQuotient canonical_quandle_quotient(const FiniteRack& r);

// The abelianized enveloping group is free abelian on the components.
struct EnvelopingAbelianization {
    int rank;                           // = number of components
    std::vector<int> component_to_basis; // component id -> basis index
};
EnvelopingAbelianization enveloping_abelianization(const FiniteRack& r);

// Backtracking isomorphism search, gated to sizes <= 12 (throws CapExceeded above).
std::optional<std::vector<int>> find_isomorphism(const FiniteRack& a, const FiniteRack& b);

} // namespace rackq
