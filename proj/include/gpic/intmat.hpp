#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace gpic {

/// Exact arbitrary-precision integer.  All lattice and normal-form code uses
/// this type; fixed-width integers appear only in fast paths with overflow
/// checks.
using Int = mpz_class;

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int int_abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

/// Quotient rounded to nearest (ties toward zero); |a - q*b| <= |b|/2.
inline Int round_div(const Int& a, const Int& b) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * int_abs(r) > int_abs(b))
        q += (mpz_sgn(a.get_mpz_t()) == mpz_sgn(b.get_mpz_t())) ? 1 : -1;
    return q;
}

inline long long to_ll(const Int& a) {
    if (!a.fits_slong_p())
        throw std::overflow_error("integer too large for 64-bit conversion");
    return static_cast<long long>(a.get_si());
}

/// Dense row-major integer matrix.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    IntMat(std::initializer_list<std::initializer_list<long long>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        a_.reserve(static_cast<size_t>(rows_) * cols_);
        for (auto& row : init) {
            for (long long v : row)
                a_.emplace_back(v);
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    IntMat operator*(const IntMat& o) const {
        IntMat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& v = at(i, k);
                if (v == 0)
                    continue;
                for (int j = 0; j < o.cols_; ++j)
                    if (o.at(k, j) != 0)
                        r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    std::vector<Int> mul_vec(const std::vector<Int>& v) const {
        std::vector<Int> r(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0)
                    r[i] += at(i, j) * v[j];
        return r;
    }

    IntMat transposed() const {
        IntMat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                t.at(j, i) = at(i, j);
        return t;
    }

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(const IntMat& m);

} // namespace gpic
