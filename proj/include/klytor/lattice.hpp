#pragma once

// Integer lattice helpers: saturated kernels, Hermite normal form, coset
// representatives and dual vectors.

#include "klytor/rational.hpp"

#include <algorithm>
#include <vector>

namespace klytor {

using ZVec = std::vector<Int>;

inline ZVec to_zvec(std::span<const long> v) {
    ZVec out;
    for (long x : v)
        out.emplace_back(x);
    return out;
}

inline ZVec to_zvec(std::span<const Rat> v) {
    ZVec out;
    for (const Rat& x : v) {
        if (!is_integral(x))
            throw std::domain_error("expected an integral vector");
        out.push_back(x.get_num());
    }
    return out;
}

inline IVec to_ivec(const ZVec& v) {
    IVec out;
    for (const Int& x : v) {
        if (!x.fits_slong_p())
            throw std::overflow_error("integer out of range");
        out.push_back(x.get_si());
    }
    return out;
}

inline QVec to_qvec(const ZVec& v) {
    QVec out;
    for (const Int& x : v)
        out.emplace_back(x);
    return out;
}

namespace detail {

inline void row_axpy(ZVec& dst, const ZVec& src, const Int& f) {
    for (std::size_t j = 0; j < dst.size(); ++j)
        dst[j] -= f * src[j];
}

// Integer row echelon form on the first `cols` columns using unimodular row
// operations; returns the number of pivot rows (placed first).
inline std::size_t integer_echelon(std::vector<ZVec>& m, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        // Euclid on column c among rows r..end
        while (true) {
            std::size_t best = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c] != 0 && (best == m.size() || abs(m[i][c]) < abs(m[best][c])))
                    best = i;
            if (best == m.size())
                break;
            std::swap(m[r], m[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0)
                    continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
                row_axpy(m[i], m[r], q);
                if (m[i][c] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (r < m.size() && m[r][c] != 0) {
            if (m[r][c] < 0)
                for (auto& x : m[r])
                    x = -x;
            ++r;
        }
    }
    return r;
}

}  // namespace detail

/// Hermite normal form (row style) of the lattice spanned by the rows.
/// Pivots are positive and entries above each pivot lie in [0, pivot).
inline std::vector<ZVec> hnf(std::vector<ZVec> rows) {
    if (rows.empty())
        return rows;
    std::size_t n = rows[0].size();
    std::size_t r = detail::integer_echelon(rows, n);
    rows.resize(r);
    std::size_t c = 0;
    for (std::size_t i = 0; i < r; ++i) {
        while (rows[i][c] == 0)
            ++c;
        for (std::size_t k = 0; k < i; ++k) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[k][c].get_mpz_t(), rows[i][c].get_mpz_t());
            detail::row_axpy(rows[k], rows[i], q);
        }
    }
    return rows;
}

/// Basis of the saturated lattice {x in Z^n : <row, x> = 0 for all rows}.
inline std::vector<ZVec> integer_kernel(const std::vector<ZVec>& rows, std::size_t n) {
    std::size_t k = rows.size();
    std::vector<ZVec> m(n, ZVec(k + n, Int(0)));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i)
            m[j][i] = rows[i][j];
        m[j][k + j] = 1;
    }
    std::size_t piv = detail::integer_echelon(m, k);
    std::vector<ZVec> basis;
    for (std::size_t j = piv; j < n; ++j)
        basis.emplace_back(m[j].begin() + static_cast<std::ptrdiff_t>(k), m[j].end());
    return hnf(basis);
}

/// Canonical representative of u modulo the lattice with the given HNF basis.
inline ZVec reduce_mod_hnf(ZVec u, const std::vector<ZVec>& h) {
    std::size_t c = 0;
    for (const auto& row : h) {
        while (row[c] == 0)
            ++c;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), u[c].get_mpz_t(), row[c].get_mpz_t());
        detail::row_axpy(u, row, q);
    }
    return u;
}

/// An integral v with <w, v> = 1 for a primitive integral w.
inline ZVec dual_unit_vector(const ZVec& w) {
    std::size_t n = w.size();
    // column operations on w tracked in U, realised as row operations on the transpose
    std::vector<ZVec> m(n, ZVec(1 + n, Int(0)));
    for (std::size_t j = 0; j < n; ++j) {
        m[j][0] = w[j];
        m[j][1 + j] = 1;
    }
    detail::integer_echelon(m, 1);
    if (m[0][0] != 1)
        throw std::invalid_argument("dual_unit_vector: vector is not primitive");
    return ZVec(m[0].begin() + 1, m[0].end());
}

inline Int zdot(const ZVec& a, const ZVec& b) {
    require_same_size(a.size(), b.size(), "zdot");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

}  // namespace klytor
