#include "gpic/cohomology.hpp"
#include "gpic/errors.hpp"

#include <vector>

// Independent oracle for H^2(G, Z/m) with trivial action.  Everything here
// is deliberately self-contained dense linear algebra over Z/p^k (p^k a
// prime power, CRT for composite m); it shares no elimination code with the
// bar-resolution path it cross-checks.

namespace gpic {

namespace {

using Mat = std::vector<std::vector<long long>>; // row-major, entries in [0, pk)

long long mod_pow_val(long long x, long long p, int k, long long pk, int& val_out) {
    // decomposes x = unit * p^val in Z/p^k; x assumed reduced, 0 -> val = k
    if (x == 0) {
        val_out = k;
        return 1;
    }
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    val_out = v;
    return x % pk;
}

long long inv_unit(long long u, long long pk) {
    // extended euclid; u is a unit mod pk
    long long a = u % pk, b = pk, x0 = 1, x1 = 0;
    while (b) {
        long long q = a / b;
        long long t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    long long r = x0 % pk;
    return r < 0 ? r + pk : r;
}

// Diagonalization over Z/p^k by unimodular row/column operations.  The
// minimal-valuation pivot divides every remaining entry, so clearing is
// exact.  Returns the diagonal; fills V (right transform) when requested.
std::vector<long long> smith_mod_pk(Mat a, long long p, int k, long long pk, Mat* v_out) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    Mat v;
    if (v_out) {
        v.assign(cols, std::vector<long long>(cols, 0));
        for (int i = 0; i < cols; ++i)
            v[i][i] = 1;
    }
    std::vector<long long> diag;
    const int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t) {
        int pi = -1, pj = -1, best_val = k + 1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (a[i][j] == 0)
                    continue;
                int val;
                mod_pow_val(a[i][j], p, k, pk, val);
                if (val < best_val) {
                    best_val = val;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0)
            break;
        std::swap(a[t], a[pi]);
        if (v_out)
            for (int i = 0; i < cols; ++i)
                std::swap(v[i][t], v[i][pj]);
        for (int i = 0; i < rows; ++i)
            std::swap(a[i][t], a[i][pj]);

        int pval;
        long long punit = mod_pow_val(a[t][t], p, k, pk, pval);
        long long pinv = inv_unit(punit, pk);
        // rows below
        for (int i = t + 1; i < rows; ++i) {
            if (a[i][t] == 0)
                continue;
            int val;
            long long unit = mod_pow_val(a[i][t], p, k, pk, val);
            long long mult = unit * pinv % pk;
            for (int s = val - pval; s > 0; --s)
                mult = mult * p % pk;
            for (int j = t; j < cols; ++j)
                a[i][j] = ((a[i][j] - mult * a[t][j]) % pk + pk) % pk;
        }
        // columns to the right
        for (int j = t + 1; j < cols; ++j) {
            if (a[t][j] == 0)
                continue;
            int val;
            long long unit = mod_pow_val(a[t][j], p, k, pk, val);
            long long mult = unit * pinv % pk;
            for (int s = val - pval; s > 0; --s)
                mult = mult * p % pk;
            for (int i = t; i < rows; ++i)
                a[i][j] = ((a[i][j] - mult * a[i][t]) % pk + pk) % pk;
            if (v_out)
                for (int i = 0; i < cols; ++i)
                    v[i][j] = ((v[i][j] - mult * v[i][t]) % pk + pk) % pk;
        }
        diag.push_back(a[t][t]);
    }
    if (v_out)
        *v_out = std::move(v);
    return diag;
}



FinAbGroup h2_mod_prime_power(const FiniteGroup& g, long long p, int k) {
    long long pk = 1;
    for (int i = 0; i < k; ++i)
        pk *= p;
    const int q = g.order() - 1;
    if (q == 0)
        return FinAbGroup::trivial();
    const int unknowns = q * q; // beta on non-identity pairs
    auto pair_idx = [&](int a, int b) { return (a - 1) * q + (b - 1); };

    // cocycle condition over all non-identity triples:
    //   beta(a,b) + beta(ab,c) - beta(b,c) - beta(a,bc) = 0
    Mat cocycle(static_cast<size_t>(q) * q * q, std::vector<long long>(unknowns, 0));
    int row = 0;
    for (int a = 1; a <= q; ++a)
        for (int b = 1; b <= q; ++b)
            for (int c = 1; c <= q; ++c, ++row) {
                auto& r = cocycle[row];
                auto bump = [&](int x, int y, long long s) {
                    if (x != 0 && y != 0)
                        r[pair_idx(x, y)] = ((r[pair_idx(x, y)] + s) % pk + pk) % pk;
                };
                bump(a, b, 1);
                bump(g.mul(a, b), c, 1);
                bump(b, c, -1);
                bump(a, g.mul(b, c), -1);
            }

    // coboundaries of normalized 1-cochains: (d gamma)(a,b) = gamma(b) -
    // gamma(ab) + gamma(a)
    Mat cobound(unknowns, std::vector<long long>(q, 0));
    for (int a = 1; a <= q; ++a)
        for (int b = 1; b <= q; ++b) {
            auto& r = cobound[pair_idx(a, b)];
            auto bump = [&](int x, long long s) {
                if (x != 0)
                    r[x - 1] = ((r[x - 1] + s) % pk + pk) % pk;
            };
            bump(b, 1);
            bump(g.mul(a, b), -1);
            bump(a, 1);
        }

    // kernel of the cocycle matrix: with U T V = D, the kernel is generated
    // by the V columns scaled by p^(k - val(d_j))
    Mat v;
    std::vector<long long> diag = smith_mod_pk(cocycle, p, k, pk, &v);
    Mat vs(unknowns, std::vector<long long>(unknowns, 0)); // V * diag(scales)
    for (int j = 0; j < unknowns; ++j) {
        int val = k;
        if (j < static_cast<int>(diag.size()))
            mod_pow_val(diag[j], p, k, pk, val);
        long long scale = 1;
        for (int s = 0; s < k - val; ++s)
            scale = scale * p % pk;
        for (int i = 0; i < unknowns; ++i)
            vs[i][j] = v[i][j] * scale % pk;
    }

    // cocycles modulo coboundaries: z-part generators of ker [VS | -Cob]
    Mat aug(unknowns, std::vector<long long>(unknowns + q, 0));
    for (int i = 0; i < unknowns; ++i) {
        for (int j = 0; j < unknowns; ++j)
            aug[i][j] = vs[i][j];
        for (int j = 0; j < q; ++j)
            aug[i][unknowns + j] = (pk - cobound[i][j]) % pk;
    }
    Mat v2;
    std::vector<long long> diag2 = smith_mod_pk(aug, p, k, pk, &v2);
    const int total = unknowns + q;
    Mat zgens(unknowns, std::vector<long long>(total, 0));
    for (int j = 0; j < total; ++j) {
        int val = k;
        if (j < static_cast<int>(diag2.size()))
            mod_pow_val(diag2[j], p, k, pk, val);
        long long scale = 1;
        for (int s = 0; s < k - val; ++s)
            scale = scale * p % pk;
        for (int i = 0; i < unknowns; ++i)
            zgens[i][j] = v2[i][j] * scale % pk;
    }

    // H^2 = R^unknowns / span(zgens): read the quotient off the diagonal
    std::vector<long long> diag3 = smith_mod_pk(zgens, p, k, pk, nullptr);
    std::vector<Int> factors;
    for (int i = 0; i < unknowns; ++i) {
        int val = k;
        if (i < static_cast<int>(diag3.size()))
            mod_pow_val(diag3[i], p, k, pk, val);
        long long f = 1;
        for (int s = 0; s < val; ++s)
            f *= p;
        if (f > 1)
            factors.push_back(f);
    }
    return FinAbGroup::from_diagonal(std::move(factors));
}

} // namespace

FinAbGroup brute_force_h2(const FiniteGroup& g, long long m) {
    if (g.order() > 12)
        throw GroupTooLarge("brute_force_h2 requires |G| <= 12, got " +
                            std::to_string(g.order()));
    if (m < 1)
        throw InvalidDatum("modulus must be positive");
    FinAbGroup out;
    long long rest = m;
    for (long long p = 2; p * p <= rest; ++p) {
        if (rest % p)
            continue;
        int k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        out = out.direct_sum(h2_mod_prime_power(g, p, k));
    }
    if (rest > 1)
        out = out.direct_sum(h2_mod_prime_power(g, rest, 1));
    return out;
}

} // namespace gpic
