#include "gpic/bar.hpp"

#include "gpic/errors.hpp"

#include <vector>

namespace gpic {

namespace {

long long ipow(long long base, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

// decodes a tuple index into ids 1..q (most significant position first)
void decode_tuple(long long idx, int n, long long q, std::vector<int>& out) {
    out.resize(n);
    for (int i = n - 1; i >= 0; --i) {
        out[i] = static_cast<int>(idx % q) + 1;
        idx /= q;
    }
}

long long encode_tuple(const std::vector<int>& t, long long q) {
    long long idx = 0;
    for (int g : t)
        idx = idx * q + (g - 1);
    return idx;
}

} // namespace

long long BarComplex::cochain_rank(int n) const {
    return module->rank() * ipow(group->order() - 1, n);
}

SparseMat BarComplex::coboundary(int n, long long budget_rows) const {
    const FiniteGroup& g = *group;
    const ZGModule& m = *module;
    const long long q = g.order() - 1;
    const int r = m.rank();
    const long long rows = cochain_rank(n + 1);
    const long long cols = cochain_rank(n);
    if (rows > budget_rows)
        throw BudgetExceeded(rows, budget_rows);
    if (q == 0)
        return SparseMat(0, n == 0 ? r : 0);

    SparseMat d(static_cast<int>(rows), static_cast<int>(cols));

    if (n == 0) {
        // (df)(g) = g.f - f
        for (int gid = 1; gid <= q; ++gid) {
            auto sparse = m.action_sparse(gid);
            long long row0 = (gid - 1) * static_cast<long long>(r);
            for (auto& [i, j, v] : sparse)
                d.add(static_cast<int>(row0 + i), j, to_ll(v));
            for (int i = 0; i < r; ++i)
                d.add(static_cast<int>(row0 + i), i, -1);
        }
        d.finalize();
        return d;
    }

    std::vector<int> t, u;
    std::vector<std::vector<std::tuple<int, int, Int>>> sparse_actions(q + 1);
    for (int gid = 1; gid <= q; ++gid)
        sparse_actions[gid] = m.action_sparse(gid);

    const long long tuple_count = ipow(q, n + 1);
    for (long long ti = 0; ti < tuple_count; ++ti) {
        decode_tuple(ti, n + 1, q, t);
        const long long row0 = ti * r;

        // leading term: g_1 . f(g_2..g_{n+1})
        u.assign(t.begin() + 1, t.end());
        long long cidx = encode_tuple(u, q) * r;
        for (auto& [i, j, v] : sparse_actions[t[0]])
            d.add(static_cast<int>(row0 + i), static_cast<int>(cidx + j), to_ll(v));

        // inner terms: (-1)^i f(.., g_i g_{i+1}, ..)
        int sign = -1;
        for (int i = 0; i + 1 <= n; ++i) {
            int prod = g.mul(t[i], t[i + 1]);
            if (prod != 0) {
                u.clear();
                for (int s = 0; s <= n; ++s) {
                    if (s == i)
                        u.push_back(prod);
                    else if (s != i + 1)
                        u.push_back(t[s]);
                }
                long long c = encode_tuple(u, q) * r;
                for (int mcoord = 0; mcoord < r; ++mcoord)
                    d.add(static_cast<int>(row0 + mcoord), static_cast<int>(c + mcoord), sign);
            }
            sign = -sign;
        }

        // trailing term: (-1)^{n+1} f(g_1..g_n)
        u.assign(t.begin(), t.end() - 1);
        long long c = encode_tuple(u, q) * r;
        for (int mcoord = 0; mcoord < r; ++mcoord)
            d.add(static_cast<int>(row0 + mcoord), static_cast<int>(c + mcoord), sign);
    }
    d.finalize();
    return d;
}

SparseMat bar_boundary_trivial(const FiniteGroup& g, int k, long long budget_cols) {
    const long long q = g.order() - 1;
    const long long cols = ipow(q, k);
    const long long rows = ipow(q, k - 1);
    if (cols > budget_cols)
        throw BudgetExceeded(cols, budget_cols);
    if (q == 0)
        return SparseMat(k == 1 ? 1 : 0, 0);

    SparseMat d(static_cast<int>(rows), static_cast<int>(cols));
    std::vector<int> t, u;
    for (long long ci = 0; ci < cols; ++ci) {
        decode_tuple(ci, k, q, t);

        // leading face (trivial coefficients): (g_2..g_k)
        u.assign(t.begin() + 1, t.end());
        d.add(static_cast<int>(encode_tuple(u, q)), static_cast<int>(ci), 1);

        int sign = -1;
        for (int i = 0; i + 1 < k; ++i) {
            int prod = g.mul(t[i], t[i + 1]);
            if (prod != 0) {
                u.clear();
                for (int s = 0; s < k; ++s) {
                    if (s == i)
                        u.push_back(prod);
                    else if (s != i + 1)
                        u.push_back(t[s]);
                }
                d.add(static_cast<int>(encode_tuple(u, q)), static_cast<int>(ci), sign);
            }
            sign = -sign;
        }

        u.assign(t.begin(), t.end() - 1);
        d.add(static_cast<int>(encode_tuple(u, q)), static_cast<int>(ci), sign);
    }
    d.finalize();
    return d;
}

} // namespace gpic
