#include "gpic/cohomology.hpp"

#include "gpic/errors.hpp"

#include <cassert>

namespace gpic {

namespace {

// Torsion of ker(A)/im(B) for integer maps with A*B = 0 equals the torsion
// of Z^m/im(B): any class killed by an integer already lies in ker(A).  So
// the invariant factors of H are the nontrivial diagonal entries of SNF(B),
// and the free rank is nullity(A) - rank(B).
FinAbGroup subquotient(const SparseMat& a, const SparseMat& b) {
    SparseSNFResult sb = sparse_snf(b);
    int rank_a = sparse_rank(a);
    int free_rank = (b.rows - rank_a) - sb.rank();
    std::vector<Int> torsion;
    for (auto& d : sb.diag)
        if (d > 1)
            torsion.push_back(d);
    return FinAbGroup::from_diagonal(std::move(torsion), free_rank);
}

IntMat to_dense(const SparseMat& s) {
    IntMat m(s.rows, s.cols);
    for (int i = 0; i < s.rows; ++i)
        for (auto& [j, v] : s.row[i])
            m.at(i, j) = Int(static_cast<long>(v));
    return m;
}

// H^n of the complex reduced mod m:
//   { x : d_n x = 0 mod m }  /  ( im d_{n-1} + m Z^c )
// The numerator lattice is V * diag(m / gcd(d_i, m)) for U d_n V = D; the
// quotient is read off from the coordinates of the denominator generators.
FinAbGroup cohomology_mod_m(const SparseMat& dn, const SparseMat& dprev, long long m) {
    const int c = dn.cols;
    IntMat a = to_dense(dn);
    SNFResult sa = smith_normal_form(a, false, true);
    IntMat basis(c, c); // columns span the preimage lattice
    for (int j = 0; j < c; ++j) {
        Int dj = j < sa.rank() ? sa.diag[j] : Int(0);
        Int t = Int(m) / int_gcd(dj, Int(m));
        for (int i = 0; i < c; ++i)
            basis.at(i, j) = sa.V->at(i, j) * t;
    }
    // denominator generators: im(d_{n-1}) columns plus m*e_i
    const int gen_count = dprev.cols + c;
    IntMat gens(c, gen_count);
    for (int i = 0; i < dprev.rows; ++i)
        for (auto& [j, v] : dprev.row[i])
            gens.at(i, j) = Int(static_cast<long>(v));
    for (int i = 0; i < c; ++i)
        gens.at(i, dprev.cols + i) = m;

    // coordinates of the generators in the numerator basis (exact: the
    // denominator lattice is contained in the numerator lattice)
    SNFResult sp = smith_normal_form(basis, true, true);
    IntMat coords(c, gen_count);
    for (int col = 0; col < gen_count; ++col) {
        std::vector<Int> bcol(c);
        for (int i = 0; i < c; ++i)
            bcol[i] = gens.at(i, col);
        std::vector<Int> ub = sp.U->mul_vec(bcol);
        std::vector<Int> y(c);
        for (int i = 0; i < c; ++i) {
            assert(i < sp.rank()); // basis is invertible
            if (ub[i] % sp.diag[i] != 0)
                throw InvalidDatum("internal: coboundary not contained in cocycle lattice");
            y[i] = ub[i] / sp.diag[i];
        }
        std::vector<Int> x = sp.V->mul_vec(y);
        for (int i = 0; i < c; ++i)
            coords.at(i, col) = x[i];
    }
    SNFResult sq = smith_normal_form(coords);
    std::vector<Int> torsion;
    for (auto& d : sq.diag)
        if (d > 1)
            torsion.push_back(d);
    int free_rank = c - sq.rank(); // always 0: the denominator has full rank
    return FinAbGroup::from_diagonal(std::move(torsion), free_rank);
}

} // namespace

FinAbGroup cohomology_group(const FiniteGroup& g, const ZGModule& m, int n,
                            long long modulus, const CohomologyOptions& opt) {
    if (n < 0 || n > 2)
        throw InvalidDatum("cohomology degree must be 0, 1 or 2");
    BarComplex bar{&g, &m};

    if (modulus == 0) {
        if (n == 0) {
            FixedPoints fp = fixed_points(m);
            return FinAbGroup::from_diagonal({}, fp.rank);
        }
        SparseMat dn = bar.coboundary(n, opt.budget);
        SparseMat dprev = bar.coboundary(n - 1, opt.budget);
        return subquotient(dn, dprev);
    }

    if (modulus < 0)
        throw InvalidDatum("modulus must be nonnegative");
    if (bar.cochain_rank(n + 1) > opt.dense_budget)
        throw BudgetExceeded(bar.cochain_rank(n + 1), opt.dense_budget);
    SparseMat dn = bar.coboundary(n, opt.dense_budget);
    SparseMat dprev =
        n == 0 ? SparseMat(static_cast<int>(bar.cochain_rank(0)), 0)
               : bar.coboundary(n - 1, opt.dense_budget);
    return cohomology_mod_m(dn, dprev, modulus);
}

FinAbGroup schur_multiplier(const FiniteGroup& g, const CohomologyOptions& opt) {
    if (g.order() == 1)
        return FinAbGroup::trivial();
    SparseMat d2 = bar_boundary_trivial(g, 2, opt.budget);
    SparseMat d3 = bar_boundary_trivial(g, 3, opt.budget);
    SparseSNFResult s3 = sparse_snf(d3);
    int rank_d2 = sparse_rank(d2);
    int free_rank = (d3.rows - rank_d2) - s3.rank();
    if (free_rank != 0)
        throw InvalidDatum("internal: H_2 of a finite group came out infinite");
    std::vector<Int> torsion;
    for (auto& d : s3.diag)
        if (d > 1)
            torsion.push_back(d);
    return FinAbGroup::from_diagonal(std::move(torsion));
}

FinAbGroup h2_units(const FiniteGroup& g, long long characteristic,
                    const CohomologyOptions& opt) {
    if (characteristic != 0 && !is_prime(characteristic))
        throw InvalidDatum("characteristic must be 0 or prime");
    FinAbGroup mult = schur_multiplier(g, opt);
    if (characteristic == 0)
        return mult;
    return mult.prime_to_part(Int(characteristic));
}

FinAbGroup schur_multiplier_abelian(const std::vector<Int>& chain) {
    for (size_t i = 0; i < chain.size(); ++i) {
        if (chain[i] < 1)
            throw InvalidChain("invariant factors must be positive");
        if (i + 1 < chain.size() && chain[i + 1] % chain[i] != 0)
            throw InvalidChain("not a divisibility chain");
    }
    // wedge square of a chain: each pair i < j contributes Z/d_i
    std::vector<Int> diag;
    for (size_t i = 0; i < chain.size(); ++i)
        for (size_t j = i + 1; j < chain.size(); ++j)
            if (chain[i] > 1)
                diag.push_back(chain[i]);
    return FinAbGroup::from_diagonal(std::move(diag));
}

} // namespace gpic
