#pragma once

#include "gpic/snf.hpp"
#include "gpic/zgmodule.hpp"

namespace gpic {

/// Normalized bar complex of (G, M).  Degree-n cochains are M-valued
/// functions on n-tuples of non-identity elements; the degenerate tuples are
/// dropped, which shrinks degree n from |G|^n to (|G|-1)^n coordinates.
///
/// Coordinate layout: tuple-major, module-minor.  The tuple (g_1..g_n) with
/// ids g_i in 1..|G|-1 has index sum (g_i - 1) * (|G|-1)^(n-i).
struct BarComplex {
    const FiniteGroup* group;
    const ZGModule* module;

    long long cochain_rank(int n) const; // rank(M) * (|G|-1)^n

    /// d^n : C^n -> C^(n+1) as a sparse matrix (rows = C^(n+1) coordinates).
    SparseMat coboundary(int n, long long budget_rows) const;
};

/// Boundary map of the normalized bar chain complex with trivial Z
/// coefficients (used for integral homology / the Schur multiplier):
/// rows = (k-1)-tuples, columns = k-tuples.
SparseMat bar_boundary_trivial(const FiniteGroup& g, int k, long long budget_cols);

} // namespace gpic
