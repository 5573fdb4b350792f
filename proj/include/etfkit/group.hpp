#pragma once

// Finite abelian groups Z_{n_1} x ... x Z_{n_k}.
//
// Elements are residue vectors; internally they are addressed by a
// mixed-radix index in which the first component is the most significant, so
// index order equals lexicographic order on residue vectors. The dual group
// is identified with the group itself: the exponent vector m gives the
// character g |-> zeta_L^{sum_i m_i r_i (L / n_i)}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etfkit/cyclotomic.hpp"

namespace etfkit {

using Index = std::int64_t;

struct GroupElement {
    std::vector<std::int64_t> residues;
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct Character {
    std::vector<std::int64_t> exponents;
    friend bool operator==(const Character&, const Character&) = default;
};

class AbelianGroup {
public:
    AbelianGroup() : AbelianGroup(std::vector<std::int64_t>{1}) {}
    explicit AbelianGroup(std::vector<std::int64_t> cyclic_orders);

    [[nodiscard]] const std::vector<std::int64_t>& cyclic_orders() const { return orders_; }
    [[nodiscard]] std::size_t rank() const { return orders_.size(); }
    [[nodiscard]] std::int64_t order() const { return order_; }
    [[nodiscard]] std::int64_t exponent() const { return exponent_; }

    [[nodiscard]] Index index(const GroupElement& g) const;
    [[nodiscard]] Index index(const Character& c) const { return index(GroupElement{c.exponents}); }
    [[nodiscard]] GroupElement element(Index i) const;
    [[nodiscard]] Character character(Index i) const { return {element(i).residues}; }
    [[nodiscard]] std::vector<std::int64_t> residues(Index i) const { return element(i).residues; }

    [[nodiscard]] Index zero() const { return 0; }
    [[nodiscard]] Index add(Index a, Index b) const;
    [[nodiscard]] Index sub(Index a, Index b) const;
    [[nodiscard]] Index neg(Index a) const;
    /// k * a.
    [[nodiscard]] Index scale(Index a, std::int64_t k) const;
    /// Additive order of an element.
    [[nodiscard]] std::int64_t element_order(Index a) const;

    /// Exponent e in [0, L) with gamma(g) = zeta_L^e; gamma and g both given by index.
    [[nodiscard]] std::int64_t char_exponent(Index gamma, Index g) const;
    [[nodiscard]] RootOfUnity char_value(const Character& gamma, const GroupElement& g) const;
    [[nodiscard]] RootOfUnity char_value(Index gamma, Index g) const { return {char_exponent(gamma, g), exponent_}; }

    /// "6" for a one-component group, "(1,0,0,1)" otherwise.
    [[nodiscard]] std::string label(Index i) const;

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.orders_ == b.orders_; }

private:
    void check_index(Index i) const;

    std::vector<std::int64_t> orders_;
    std::vector<std::int64_t> strides_;
    std::int64_t order_ = 1;
    std::int64_t exponent_ = 1;
};

/// A subgroup, stored as its sorted element indices.
class Subgroup {
public:
    Subgroup() = default;
    /// Validates closure; throws InvalidArgument otherwise.
    Subgroup(AbelianGroup parent, std::vector<Index> elements);
    static Subgroup generated_by(const AbelianGroup& parent, const std::vector<Index>& generators);
    static Subgroup trivial(const AbelianGroup& parent) { return generated_by(parent, {}); }
    static Subgroup whole(const AbelianGroup& parent);

    [[nodiscard]] const AbelianGroup& parent() const { return parent_; }
    [[nodiscard]] const std::vector<Index>& elements() const { return elements_; }
    [[nodiscard]] std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
    [[nodiscard]] bool contains(Index g) const;
    [[nodiscard]] bool is_subgroup_of(const Subgroup& other) const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.parent_ == b.parent_ && a.elements_ == b.elements_;
    }

private:
    AbelianGroup parent_;
    std::vector<Index> elements_;
    std::vector<bool> member_;
};

/// Integer-valued function on a group, dense by element index.
class IntVector {
public:
    IntVector() = default;
    explicit IntVector(AbelianGroup group);
    static IntVector indicator(const AbelianGroup& group, const std::vector<Index>& support);
    static IntVector delta(const AbelianGroup& group, Index at);

    [[nodiscard]] const AbelianGroup& group() const { return group_; }
    [[nodiscard]] std::int64_t operator[](Index g) const { return values_[static_cast<std::size_t>(g)]; }
    std::int64_t& operator[](Index g) { return values_[static_cast<std::size_t>(g)]; }
    [[nodiscard]] const std::vector<std::int64_t>& values() const { return values_; }

    friend bool operator==(const IntVector& a, const IntVector& b) {
        return a.group_ == b.group_ && a.values_ == b.values_;
    }

private:
    AbelianGroup group_;
    std::vector<std::int64_t> values_;
};

/// Fourier coefficients (F* x)(gamma) = sum_g conj(gamma(g)) x(g), one per character index.
std::vector<CyclotomicInt> dft_exact(const IntVector& x);
std::vector<cdouble> dft(const IntVector& x);
/// The same coefficient for a single character.
CyclotomicInt dft_coefficient(const IntVector& x, Index gamma);

/// (x * y)(g) = sum_{g'} x(g') y(g - g').
IntVector convolve(const IntVector& x, const IntVector& y);
/// x~(g) = x(-g) (integer vectors are real).
IntVector involution(const IntVector& x);

/// Characters trivial on H, as a subgroup of the (self-identified) dual.
Subgroup annihilator(const Subgroup& H);

struct Coset {
    Index representative;
    std::vector<Index> elements;
};

/// Cosets of H ordered by representative; each representative is the least index in its coset.
std::vector<Coset> cosets(const Subgroup& H);
/// Representative of g + H.
Index coset_representative(const Subgroup& H, Index g);

/// G/H written as a product of cyclic groups (Smith normal form), with the projection G -> G/H.
class QuotientGroup {
public:
    explicit QuotientGroup(const Subgroup& H);

    [[nodiscard]] const AbelianGroup& group() const { return quotient_; }
    [[nodiscard]] const Subgroup& kernel() const { return kernel_; }
    [[nodiscard]] Index project(Index g) const;
    /// Least-index element of G mapping to q.
    [[nodiscard]] Index lift(Index q) const { return lifts_[static_cast<std::size_t>(q)]; }

private:
    Subgroup kernel_;
    AbelianGroup quotient_;
    std::vector<std::vector<std::int64_t>> transform_;  // rows of P, restricted to nontrivial invariant factors
    std::vector<Index> lifts_;
};

/// Cap on group orders for which exhaustive subgroup enumeration is attempted (ETFKIT_CAP, default 10000).
std::int64_t subgroup_search_cap();

/// Every subgroup of the given order, in a deterministic order. Throws SearchNotExhaustive above the cap.
std::vector<Subgroup> subgroups_of_order(const AbelianGroup& G, std::int64_t h);
/// Every subgroup of G, sorted by order then by element list.
std::vector<Subgroup> all_subgroups(const AbelianGroup& G);

}  // namespace etfkit
