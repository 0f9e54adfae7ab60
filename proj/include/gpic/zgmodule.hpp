#pragma once

#include "gpic/finab.hpp"
#include "gpic/group.hpp"
#include "gpic/intmat.hpp"

#include <memory>
#include <vector>

namespace gpic {

/// A finitely generated free Z-module with an integer G-action.  Actions are
/// stored for the generators and composed on demand (cached) for the other
/// elements along the group's BFS parent chain.
class ZGModule {
public:
    /// `gen_action[k]` is the matrix of generators()[k]; each must be
    /// invertible over Z (determinant +-1).
    ZGModule(const FiniteGroup& g, int rank, std::vector<IntMat> gen_action);

    const FiniteGroup& group() const { return *group_; }
    int rank() const { return rank_; }

    /// Action matrix of an arbitrary element id.
    const IntMat& action(int g) const;

    /// Sparse view of action(g): list of (row, col, value).
    std::vector<std::tuple<int, int, Int>> action_sparse(int g) const;

    ZGModule direct_sum(const ZGModule& other) const;

private:
    const FiniteGroup* group_;
    int rank_;
    mutable std::vector<std::unique_ptr<IntMat>> cache_; // by element id
};

ZGModule trivial_module(const FiniteGroup& g, int rank = 1);

/// Permutation module on the right cosets of H: rank [G:H], the basis
/// indexed by the canonical coset order.
ZGModule induced_module(const FiniteGroup& g, const Subgroup& h);

/// Checks action(0) = I, invertibility of generator matrices, and the
/// homomorphism property: exhaustively on all pairs for |G| <= limit, on
/// `samples` random pairs otherwise.
bool check_module(const ZGModule& m, int exhaustive_limit = 24, int samples = 100,
                  unsigned seed = 1);

/// G-fixed vectors M^G: the integer kernel of the stacked (action(gen) - I)
/// matrices.  The result is a saturated sublattice and `basis` holds one
/// basis vector per column.
struct FixedPoints {
    int rank;
    IntMat basis; // module-rank x rank
};
FixedPoints fixed_points(const ZGModule& m);

} // namespace gpic
