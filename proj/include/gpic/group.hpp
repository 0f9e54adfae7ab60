#pragma once

#include <string>
#include <vector>

namespace gpic {

/// A permutation on {0..m-1}, stored as its image table.
using Perm = std::vector<int>;

Perm perm_identity(int m);
Perm perm_compose(const Perm& a, const Perm& b); // (a*b)(x) = a(b(x))
Perm perm_inverse(const Perm& a);

/// A finite group given by its complete multiplication table.  Element ids
/// are dense 0..n-1 with id 0 the identity.  Groups built from permutation
/// generators get a canonical element order: breadth-first search over
/// generator words with lexicographic tie-break, so identical generator
/// lists always produce byte-identical tables.
class FiniteGroup {
public:
    /// Closes a generator list (permutations on {1..m}, converted from the
    /// 1-based cycle notation upstream) into the full group.
    /// Throws ClosureExceedsCap past `cap` elements.
    static FiniteGroup from_permutations(std::vector<Perm> generators, std::size_t cap = 256);

    /// Wraps an explicit multiplication table (used for subgroup and
    /// quotient promotion).  The table is validated and relabeled so that
    /// the identity has id 0 and ids follow generator-word BFS order.
    /// `order_out`, when given, receives the relabeling (new id -> old id).
    static FiniteGroup from_table(const std::vector<std::vector<int>>& mul,
                                  std::vector<int>* order_out = nullptr);

    int order() const { return static_cast<int>(mul_.size()); }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    const std::vector<int>& generators() const { return gens_; }

    /// BFS predecessor of g: the pair (h, k) with g = h * generators()[k].
    /// Identity maps to (-1, -1).  Lets module code extend an action on
    /// generators to the whole group without refactorizing words.
    std::pair<int, int> bfs_parent(int g) const { return bfs_parent_[g]; }

    int element_order(int g) const;
    int exponent() const;
    bool is_abelian() const;

    /// Underlying permutations when built from them (empty otherwise).
    const std::vector<Perm>& permutations() const { return perms_; }
    int degree() const { return degree_; }

    bool operator==(const FiniteGroup& o) const { return mul_ == o.mul_; }

private:
    FiniteGroup() = default;
    void finish_tables(); // inverses, validation

    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::vector<int> gens_;
    std::vector<std::pair<int, int>> bfs_parent_;
    std::vector<Perm> perms_;
    int degree_ = 0;
};

/// A subgroup as a sorted member-id set inside a parent group.
struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<int> members; // sorted, always contains 0

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int g) const;
    int index() const { return parent->order() / order(); }
};

/// Identity/inverse laws, associativity (exhaustively up to the given
/// order), and generator closure.
bool check_group_axioms(const FiniteGroup& g, int exhaustive_limit = 128);

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup full_subgroup(const FiniteGroup& g);
Subgroup closure_subgroup(const FiniteGroup& g, std::vector<int> seed);
Subgroup cyclic_subgroup(const FiniteGroup& g, int elem);

bool is_subgroup(const Subgroup& h);
bool is_cyclic(const Subgroup& h);
bool is_normal(const Subgroup& h);

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);

/// One Sylow ell-subgroup (the trivial subgroup when ell does not divide
/// |G|).  Deterministic: the subgroup is grown through normalizers picking
/// the smallest eligible element id at each step.
Subgroup sylow_subgroup(const FiniteGroup& g, long long ell);

bool all_sylow_cyclic(const FiniteGroup& g);

std::vector<long long> prime_divisors(long long n);
bool is_prime(long long n);

/// Right cosets H\G in canonical order (sorted by least member id; members
/// sorted within each coset).  The coset of the identity comes first.
std::vector<std::vector<int>> cosets(const FiniteGroup& g, const Subgroup& h);

/// Promotes a subgroup to a standalone FiniteGroup.  Returns the group and
/// the member list in the id order of the new group (new id -> parent id).
std::pair<FiniteGroup, std::vector<int>> subgroup_as_group(const Subgroup& h);

/// Quotient G/N for a normal subgroup N, elements = right cosets in
/// canonical order (so the identity coset has id 0).
FiniteGroup quotient_group(const FiniteGroup& g, const Subgroup& n);

/// Distinct cyclic subgroups plus one Sylow subgroup per prime: the
/// on-demand subgroup family used by the verification sweeps.
std::vector<Subgroup> standard_subgroups(const FiniteGroup& g);

/// All subgroups of the given order found by closing element pairs (plus
/// cyclic ones); a deterministic budgeted search, not a full lattice.
std::vector<Subgroup> subgroups_of_order(const FiniteGroup& g, int order);

/// Invariant factors of an abelian group, computed from element-order
/// counts per prime (no quotient construction needed).
std::vector<long long> abelian_invariants(const FiniteGroup& g);

} // namespace gpic
