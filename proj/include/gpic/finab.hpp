#pragma once

#include "gpic/intmat.hpp"

#include <string>
#include <vector>

namespace gpic {

/// A finitely generated abelian group in canonical form: invariant factors
/// d1 | d2 | ... | dk (each >= 2) plus a free rank.  This is the universal
/// output type for cohomology and class-group computations.
class FinAbGroup {
public:
    FinAbGroup() = default;

    /// Builds the canonical form from any diagonal multiset (entries may be
    /// unordered, contain 1s or be negative; zeros are not allowed here).
    static FinAbGroup from_diagonal(std::vector<Int> diag, int free_rank = 0);

    /// Cyclic group of order n (n = 1 gives the trivial group).
    static FinAbGroup cyclic(const Int& n);

    static FinAbGroup trivial() { return FinAbGroup(); }

    const std::vector<Int>& factors() const { return factors_; }
    int free_rank() const { return free_rank_; }

    bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
    bool is_finite() const { return free_rank_ == 0; }

    /// Order of the torsion part (the full order when finite).
    Int order() const;

    /// Exponent of the torsion part: the largest invariant factor, 1 if none.
    Int exponent() const;

    /// Direct sum, renormalized to canonical form.
    FinAbGroup direct_sum(const FinAbGroup& o) const;

    /// Removes the p-primary component from every invariant factor.
    FinAbGroup prime_to_part(const Int& p) const;

    /// p-adic valuation of the torsion order.
    int order_valuation(const Int& p) const;

    bool operator==(const FinAbGroup& o) const {
        return factors_ == o.factors_ && free_rank_ == o.free_rank_;
    }
    bool operator!=(const FinAbGroup& o) const { return !(*this == o); }

    /// "0", "Z/2", "Z/2 + Z/4 + Z^3" style rendering.
    std::string str() const;

private:
    std::vector<Int> factors_; // ascending divisibility chain, all >= 2
    int free_rank_ = 0;
};

} // namespace gpic
