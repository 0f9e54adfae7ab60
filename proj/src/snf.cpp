#include "gpic/snf.hpp"

#include "gpic/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <limits>
#include <queue>

namespace gpic {

Int determinant(const IntMat& m) {
    assert(m.rows() == m.cols());
    int n = m.rows();
    if (n == 0)
        return 1;
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

namespace {

void swap_rows(IntMat& m, int a, int b) {
    if (a == b)
        return;
    for (int j = 0; j < m.cols(); ++j)
        std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMat& m, int a, int b) {
    if (a == b)
        return;
    for (int i = 0; i < m.rows(); ++i)
        std::swap(m.at(i, a), m.at(i, b));
}

// row[a] += q * row[b]
void add_row(IntMat& m, int a, int b, const Int& q) {
    if (q == 0)
        return;
    for (int j = 0; j < m.cols(); ++j)
        if (m.at(b, j) != 0)
            m.at(a, j) += q * m.at(b, j);
}

void add_col(IntMat& m, int a, int b, const Int& q) {
    if (q == 0)
        return;
    for (int i = 0; i < m.rows(); ++i)
        if (m.at(i, b) != 0)
            m.at(i, a) += q * m.at(i, b);
}

void negate_row(IntMat& m, int a) {
    for (int j = 0; j < m.cols(); ++j)
        m.at(a, j) = -m.at(a, j);
}

} // namespace

SNFResult smith_normal_form(const IntMat& input, bool want_u, bool want_v) {
    IntMat a = input;
    const int rows = a.rows(), cols = a.cols();
    SNFResult res;
    if (want_u)
        res.U = IntMat::identity(rows);
    if (want_v)
        res.V = IntMat::identity(cols);

    auto row_op = [&](int r1, int r2, const Int& q) {
        add_row(a, r1, r2, q);
        if (res.U)
            add_row(*res.U, r1, r2, q);
    };
    auto col_op = [&](int c1, int c2, const Int& q) {
        add_col(a, c1, c2, q);
        if (res.V)
            add_col(*res.V, c1, c2, q);
    };

    const int t_max = std::min(rows, cols);
    int t = 0;
    for (; t < t_max; ++t) {
        // locate a pivot: nonzero entry of minimal absolute value
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                const Int& v = a.at(i, j);
                if (v == 0)
                    continue;
                Int av = int_abs(v);
                if (pi < 0 || av < best) {
                    pi = i;
                    pj = j;
                    best = av;
                    if (best == 1)
                        goto found;
                }
            }
        if (pi < 0)
            break;
    found:
        swap_rows(a, t, pi);
        if (res.U)
            swap_rows(*res.U, t, pi);
        swap_cols(a, t, pj);
        if (res.V)
            swap_cols(*res.V, t, pj);

        for (;;) {
            // clear column t with row operations; a smaller remainder becomes
            // the new pivot
            bool again = true;
            while (again) {
                again = false;
                for (int i = t + 1; i < rows; ++i) {
                    if (a.at(i, t) == 0)
                        continue;
                    Int q = round_div(a.at(i, t), a.at(t, t));
                    row_op(i, t, -q);
                    if (a.at(i, t) != 0) {
                        swap_rows(a, t, i);
                        if (res.U)
                            swap_rows(*res.U, t, i);
                        again = true;
                    }
                }
            }
            // clear row t with column operations
            bool row_clear = true;
            for (int j = t + 1; j < cols; ++j) {
                if (a.at(t, j) == 0)
                    continue;
                Int q = round_div(a.at(t, j), a.at(t, t));
                col_op(j, t, -q);
                if (a.at(t, j) != 0) {
                    swap_cols(a, t, j);
                    if (res.V)
                        swap_cols(*res.V, t, j);
                    row_clear = false;
                    break; // column t dirtied again
                }
            }
            if (!row_clear)
                continue;

            // force divisibility of the remaining block by the pivot
            bool divides_all = true;
            for (int i = t + 1; i < rows && divides_all; ++i)
                for (int j = t + 1; j < cols; ++j) {
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        row_op(t, i, 1);
                        divides_all = false;
                        break;
                    }
                }
            if (divides_all)
                break;
        }
        if (a.at(t, t) < 0) {
            negate_row(a, t);
            if (res.U)
                negate_row(*res.U, t);
        }
    }

    res.diag.reserve(t);
    for (int i = 0; i < t; ++i)
        res.diag.push_back(a.at(i, i));
    return res;
}

bool snf_certificate_ok(const IntMat& a, const SNFResult& r) {
    if (!r.U || !r.V)
        return false;
    IntMat d = (*r.U) * a * (*r.V);
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j) {
            Int expect = 0;
            if (i == j && i < static_cast<int>(r.diag.size()))
                expect = r.diag[i];
            if (d.at(i, j) != expect)
                return false;
        }
    return true;
}

std::vector<Int> canonical_chain(std::vector<Int> d) {
    for (auto& v : d)
        v = int_abs(v);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < d.size(); ++i)
            for (size_t j = i + 1; j < d.size(); ++j) {
                if (d[j] % d[i] == 0)
                    continue;
                Int g = int_gcd(d[i], d[j]);
                Int l = d[i] / g * d[j];
                d[i] = g;
                d[j] = l;
                changed = true;
            }
    }
    std::sort(d.begin(), d.end());
    return d;
}

IntMat kernel_basis(const IntMat& a) {
    SNFResult r = smith_normal_form(a, false, true);
    int n = a.cols();
    int k = n - r.rank();
    IntMat basis(n, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i)
            basis.at(i, j) = r.V->at(i, r.rank() + j);
    return basis;
}

SolveOutcome solve_or_certify(const IntMat& a, const std::vector<Int>& b) {
    SNFResult r = smith_normal_form(a, true, true);
    std::vector<Int> ub = r.U->mul_vec(b);
    SolveOutcome out;
    auto certify = [&](int i, const Int& den) {
        InfeasibilityCertificate c;
        c.numerator.resize(a.rows());
        for (int j = 0; j < a.rows(); ++j)
            c.numerator[j] = r.U->at(i, j);
        c.denominator = den;
        out.certificate = c;
    };
    std::vector<Int> y(a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        if (i < r.rank()) {
            if (ub[i] % r.diag[i] != 0) {
                certify(i, r.diag[i]);
                return out;
            }
            if (i < a.cols())
                y[i] = ub[i] / r.diag[i];
        } else if (ub[i] != 0) {
            certify(i, Int(1));
            return out;
        }
    }
    out.solution = r.V->mul_vec(y);
    return out;
}

std::optional<std::vector<Int>> solve_integral(const IntMat& a, const std::vector<Int>& b) {
    return solve_or_certify(a, b).solution;
}

// ---------------------------------------------------------------------------
// Sparse elimination.

void SparseMat::add(int i, int j, long long v) {
    if (v != 0)
        row[i].emplace_back(j, v);
}

void SparseMat::finalize() {
    for (auto& r : row) {
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        size_t out = 0;
        for (size_t k = 0; k < r.size();) {
            int col = r[k].first;
            long long sum = 0;
            while (k < r.size() && r[k].first == col) {
                sum += r[k].second;
                ++k;
            }
            if (sum != 0)
                r[out++] = {col, sum};
        }
        r.resize(out);
    }
}

long long SparseMat::nnz() const {
    long long n = 0;
    for (auto& r : row)
        n += static_cast<long long>(r.size());
    return n;
}

namespace {

struct EliminationOverflow {};

inline long long chk_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw EliminationOverflow{};
    return r;
}

inline long long chk_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw EliminationOverflow{};
    return r;
}

template <class T> struct Ops;

template <> struct Ops<long long> {
    static constexpr long long kMin = std::numeric_limits<long long>::min();
    static long long add(long long a, long long b) { return chk_add(a, b); }
    static long long mul(long long a, long long b) { return chk_mul(a, b); }
    static long long neg(long long a) { return chk_mul(a, -1); }
    static bool is_unit(long long a) { return a == 1 || a == -1; }
    static long long round_div(long long a, long long b) {
        if (a == kMin || b == kMin)
            throw EliminationOverflow{};
        long long q = a / b, r = a % b;
        if (std::llabs(r) * 2 > std::llabs(b))
            q += (a < 0) == (b < 0) ? 1 : -1;
        return q;
    }
    static long long from_entry(long long v) { return v; }
    static Int to_int(long long v) { return Int(static_cast<long>(v)); }
};

template <> struct Ops<Int> {
    static Int add(const Int& a, const Int& b) { return a + b; }
    static Int mul(const Int& a, const Int& b) { return a * b; }
    static Int neg(const Int& a) { return -a; }
    static bool is_unit(const Int& a) { return a == 1 || a == -1; }
    static Int round_div(const Int& a, const Int& b) { return gpic::round_div(a, b); }
    static Int from_entry(long long v) { return Int(static_cast<long>(v)); }
    static Int to_int(const Int& v) { return v; }
};

/// Two-sided sparse elimination producing a diagonal multiset.  Pivots are
/// chosen column-first by a Markowitz-style score; each step clears the
/// pivot column with row operations and the pivot row with column
/// operations, then removes both.  The diagonal multiset determines the
/// cokernel, so no global divisibility pass is needed here.
template <class T> class SparseEliminator {
public:
    SparseEliminator(const SparseMat& a, int dense_fallback_dim)
        : rows_(a.rows), cols_(a.cols), dense_dim_(dense_fallback_dim) {
        row_.resize(rows_);
        for (int i = 0; i < rows_; ++i) {
            row_[i].reserve(a.row[i].size());
            for (auto& [j, v] : a.row[i])
                row_[i].emplace_back(j, Ops<T>::from_entry(v));
        }
        row_alive_.assign(rows_, true);
        col_alive_.assign(cols_, true);
        col_rows_.resize(cols_);
        col_count_.assign(cols_, 0);
        for (int i = 0; i < rows_; ++i)
            for (auto& [j, v] : row_[i]) {
                col_rows_[j].push_back(i);
                ++col_count_[j];
            }
        for (int j = 0; j < cols_; ++j)
            if (col_count_[j] > 0)
                queue_.push({col_count_[j], j});
    }

    std::vector<Int> run() {
        std::vector<Int> diag;
        for (;;) {
            auto piv = pick_pivot();
            if (!piv)
                break;
            auto [pi, pj] = *piv;
            if (!has_unit_ && !any_unit_left() && alive_rows() <= dense_dim_ &&
                alive_cols() <= dense_dim_) {
                densify(diag);
                return diag;
            }
            eliminate(pi, pj, diag);
        }
        return diag;
    }

private:
    using Row = std::vector<std::pair<int, T>>;

    int rows_, cols_, dense_dim_;
    std::vector<Row> row_;
    std::vector<bool> row_alive_, col_alive_;
    std::vector<std::vector<int>> col_rows_; // may contain stale row ids
    std::vector<int> col_count_;             // exact live counts
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                        std::greater<>>
        queue_; // (count, col), lazily invalidated
    bool has_unit_ = true;

    int alive_rows() const {
        int n = 0;
        for (bool b : row_alive_)
            n += b;
        return n;
    }
    int alive_cols() const {
        int n = 0;
        for (bool b : col_alive_)
            n += b;
        return n;
    }
    bool any_unit_left() const {
        for (int i = 0; i < rows_; ++i) {
            if (!row_alive_[i])
                continue;
            for (auto& [j, v] : row_[i])
                if (Ops<T>::is_unit(v))
                    return true;
        }
        return false;
    }

    const T* find_in_row(int i, int j) const {
        auto& r = row_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, int col) {
            return e.first < col;
        });
        if (it != r.end() && it->first == j)
            return &it->second;
        return nullptr;
    }

    T value_at(int i, int j) const {
        const T* p = find_in_row(i, j);
        return p ? *p : T{};
    }

    void clean_col(int j) {
        auto& cr = col_rows_[j];
        size_t out = 0;
        for (int i : cr)
            if (row_alive_[i] && find_in_row(i, j))
                cr[out++] = i;
        cr.resize(out);
        std::sort(cr.begin(), cr.end());
        cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
        col_count_[j] = static_cast<int>(cr.size());
    }

    // Chooses a pivot position.  Scans a handful of low-count columns and
    // takes the entry minimizing (row_len - 1) * (col_count - 1), units
    // strongly preferred.
    std::optional<std::pair<int, int>> pick_pivot() {
        constexpr int kCandidates = 8;
        std::vector<std::pair<int, int>> examined;
        std::optional<std::pair<int, int>> best;
        long long best_score = -1;
        bool best_unit = false;
        has_unit_ = false;

        while (!queue_.empty() && static_cast<int>(examined.size()) < kCandidates) {
            auto [cnt, j] = queue_.top();
            queue_.pop();
            if (!col_alive_[j])
                continue;
            clean_col(j);
            if (col_count_[j] == 0) {
                col_alive_[j] = false;
                continue;
            }
            if (col_count_[j] != cnt) {
                queue_.push({col_count_[j], j}); // stale, retry later
                continue;
            }
            examined.push_back({cnt, j});
            for (int i : col_rows_[j]) {
                const T* v = find_in_row(i, j);
                bool unit = Ops<T>::is_unit(*v);
                if (unit)
                    has_unit_ = true;
                long long score = static_cast<long long>(row_[i].size() - 1) *
                                  (col_count_[j] - 1);
                if (!best || (unit && !best_unit) ||
                    (unit == best_unit && score < best_score)) {
                    best = {{i, j}};
                    best_score = score;
                    best_unit = unit;
                }
            }
            if (best_unit && best_score == 0)
                break;
        }
        for (auto& [cnt, j] : examined)
            if (col_alive_[j])
                queue_.push({cnt, j});

        if (best)
            return best;
        // queue exhausted: any entry left?  (can happen after stale pops)
        for (int j = 0; j < cols_; ++j)
            if (col_alive_[j]) {
                clean_col(j);
                if (col_count_[j] > 0) {
                    queue_.push({col_count_[j], j});
                    return pick_pivot();
                }
                col_alive_[j] = false;
            }
        return std::nullopt;
    }

    // row[dst] += q * row[src]; updates column index incrementally
    void row_axpy(int dst, int src, const T& q) {
        Row out;
        out.reserve(row_[dst].size() + row_[src].size());
        auto a = row_[dst].begin(), ae = row_[dst].end();
        auto b = row_[src].begin(), be = row_[src].end();
        while (a != ae || b != be) {
            if (b == be || (a != ae && a->first < b->first)) {
                out.push_back(*a++);
            } else if (a == ae || b->first < a->first) {
                T nv = Ops<T>::mul(q, b->second);
                if (!(nv == T{})) {
                    out.emplace_back(b->first, nv);
                    col_rows_[b->first].push_back(dst);
                    ++col_count_[b->first];
                    queue_.push({col_count_[b->first], b->first});
                }
                ++b;
            } else {
                T nv = Ops<T>::add(a->second, Ops<T>::mul(q, b->second));
                if (nv == T{}) {
                    --col_count_[a->first];
                } else {
                    out.emplace_back(a->first, nv);
                }
                ++a;
                ++b;
            }
        }
        row_[dst] = std::move(out);
    }

    void remove_row(int i) {
        for (auto& [j, v] : row_[i])
            --col_count_[j];
        row_[i].clear();
        row_alive_[i] = false;
    }

    void eliminate(int pi, int pj, std::vector<Int>& diag) {
        for (;;) {
            // clear pivot column with row operations
            bool col_clear = true;
            clean_col(pj);
            T pv = value_at(pi, pj);
            for (int i : std::vector<int>(col_rows_[pj])) {
                if (i == pi || !row_alive_[i])
                    continue;
                const T* e = find_in_row(i, pj);
                if (!e)
                    continue;
                T q = Ops<T>::round_div(*e, pv);
                row_axpy(i, pi, Ops<T>::neg(q));
                if (find_in_row(i, pj)) {
                    // remainder left: it is strictly smaller, make it the pivot
                    std::swap(row_[pi], row_[i]);
                    // the column index must list both rows for their new entries
                    for (auto& [jj, vv] : row_[pi])
                        col_rows_[jj].push_back(pi);
                    for (auto& [jj, vv] : row_[i])
                        col_rows_[jj].push_back(i);
                    col_clear = false;
                    break;
                }
            }
            if (!col_clear)
                continue;

            // pivot column now holds only the pivot; clearing the pivot row
            // with column operations touches row pi alone.
            pv = value_at(pi, pj);
            bool row_exact = true;
            for (auto& [j, v] : row_[pi]) {
                if (j == pj)
                    continue;
                T r = Ops<T>::add(v, Ops<T>::mul(Ops<T>::neg(Ops<T>::round_div(v, pv)), pv));
                if (!(r == T{})) {
                    row_exact = false;
                    break;
                }
            }
            if (row_exact)
                break;
            // some entry is not divisible by the pivot: reduce it in place and
            // swap it into the pivot position (strictly smaller), iterate.
            Row reduced;
            T new_pivot{};
            int new_pj = -1;
            for (auto& [j, v] : row_[pi]) {
                if (j == pj) {
                    reduced.emplace_back(j, v);
                    continue;
                }
                T q = Ops<T>::round_div(v, pv);
                T r = Ops<T>::add(v, Ops<T>::mul(Ops<T>::neg(q), pv));
                if (r == T{}) {
                    --col_count_[j];
                    continue; // entry cleared by the column operation
                }
                reduced.emplace_back(j, r);
                if (new_pj < 0) {
                    new_pj = j;
                    new_pivot = r;
                }
            }
            row_[pi] = std::move(reduced);
            pj = new_pj;
            (void)new_pivot;
        }
        diag.push_back(int_abs(Ops<T>::to_int(value_at(pi, pj))));
        remove_row(pi);
        col_alive_[pj] = false;
        col_count_[pj] = 0;
    }

    void densify(std::vector<Int>& diag) {
        std::vector<int> rmap, cmap(cols_, -1);
        for (int i = 0; i < rows_; ++i)
            if (row_alive_[i] && !row_[i].empty())
                rmap.push_back(i);
        int nc = 0;
        for (int j = 0; j < cols_; ++j)
            if (col_alive_[j]) {
                clean_col(j);
                if (col_count_[j] > 0)
                    cmap[j] = nc++;
            }
        IntMat d(static_cast<int>(rmap.size()), nc);
        for (size_t i = 0; i < rmap.size(); ++i)
            for (auto& [j, v] : row_[rmap[i]])
                if (cmap[j] >= 0)
                    d.at(static_cast<int>(i), cmap[j]) = Ops<T>::to_int(v);
        SNFResult r = smith_normal_form(d);
        diag.insert(diag.end(), r.diag.begin(), r.diag.end());
    }
};

} // namespace

SparseSNFResult sparse_snf(const SparseMat& a) {
    constexpr int kDenseFallback = 2000;
    std::vector<Int> diag;
    try {
        SparseEliminator<long long> e(a, kDenseFallback);
        diag = e.run();
    } catch (const EliminationOverflow&) {
        SparseEliminator<Int> e(a, kDenseFallback);
        diag = e.run();
    }
    SparseSNFResult r;
    r.diag = canonical_chain(std::move(diag));
    return r;
}

int sparse_rank(const SparseMat& a) {
    return sparse_snf(a).rank();
}

} // namespace gpic
