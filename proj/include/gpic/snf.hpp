#pragma once

#include "gpic/intmat.hpp"

#include <optional>
#include <vector>

namespace gpic {

/// Result of a Smith normal form computation.  `diag` is the full chain of
/// nonzero diagonal entries d1 | d2 | ... | dr (1s included, 0s dropped), so
/// diag.size() is the rank.  When certificates are requested, U and V are
/// unimodular with U*A*V equal to the diagonal matrix padded with zeros.
struct SNFResult {
    std::vector<Int> diag;
    std::optional<IntMat> U;
    std::optional<IntMat> V;

    int rank() const { return static_cast<int>(diag.size()); }
};

SNFResult smith_normal_form(const IntMat& a, bool want_u = false, bool want_v = false);

/// Verifies U*A*V == diag(d) exactly; both certificates must be present.
bool snf_certificate_ok(const IntMat& a, const SNFResult& r);

/// Normalizes a multiset of nonzero diagonal entries into a divisibility
/// chain by repeated gcd/lcm exchanges.  Entries 1 are kept.
std::vector<Int> canonical_chain(std::vector<Int> d);

/// Basis of the integer kernel of A, as columns of the returned matrix.
/// The kernel of an integer matrix is automatically a saturated sublattice,
/// and the basis returned here generates it exactly.
IntMat kernel_basis(const IntMat& a);

/// One integral solution of A*x = b, if any.
std::optional<std::vector<Int>> solve_integral(const IntMat& a, const std::vector<Int>& b);

/// Rational-infeasibility / integrality certificate for A*x = b: a rational
/// row vector lambda (num/den) with lambda*A integral but lambda*b not an
/// integer.  Produced by invariant_divisor_in_class when no solution exists.
struct InfeasibilityCertificate {
    std::vector<Int> numerator; // length = #rows of A
    Int denominator;
};

struct SolveOutcome {
    std::optional<std::vector<Int>> solution;
    std::optional<InfeasibilityCertificate> certificate;
};

/// Like solve_integral but returns a checked certificate on failure.
SolveOutcome solve_or_certify(const IntMat& a, const std::vector<Int>& b);

// ---------------------------------------------------------------------------
// Sparse integer matrices and elimination.

/// Sparse integer matrix in triplet-buildable, row-major form.  Entries are
/// 64-bit in the fast path; the eliminator transparently reruns with
/// arbitrary precision if intermediate values overflow.
struct SparseMat {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, long long>>> row; // sorted by column

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), row(r) {}

    void add(int i, int j, long long v); // accumulates duplicates
    void finalize();                     // sorts rows, combines, drops zeros
    long long nnz() const;
};

struct SparseSNFResult {
    std::vector<Int> diag; // canonical chain, 1s included
    int rank() const { return static_cast<int>(diag.size()); }
};

/// Diagonal (invariant-factor chain) of the Smith normal form of a sparse
/// matrix.  Markowitz-style pivoting on unit entries first, gcd pivoting
/// afterwards, dense fallback for small residual cores.
SparseSNFResult sparse_snf(const SparseMat& a);

/// Exact rank over Z (= number of nonzero invariant factors).
int sparse_rank(const SparseMat& a);

} // namespace gpic
