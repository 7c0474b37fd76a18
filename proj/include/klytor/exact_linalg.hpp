#pragma once

// Dense exact linear algebra over Q: row reduction, kernels, solves and
// canonical subspaces of Q^r.

#include "klytor/rational.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace klytor {

using QMat = std::vector<QVec>;  // row-major, each row one vector

struct Echelon {
    QMat rows;                        // nonzero rows of the reduced echelon form
    std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form of the given rows (all of length n).
inline Echelon rref(QMat a, std::size_t n) {
    for (const auto& row : a)
        require_same_size(row.size(), n, "rref");
    Echelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[r]);
        Rat inv = 1 / a[r][c];
        for (std::size_t j = c; j < n; ++j)
            a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j < n; ++j)
                a[i][j] -= f * a[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    out.rows = std::move(a);
    return out;
}

inline std::size_t rank(const QMat& a, std::size_t n) { return rref(a, n).pivots.size(); }

/// Basis of {x in Q^n : row . x = 0 for every row}.
inline QMat kernel(const QMat& a, std::size_t n) {
    Echelon e = rref(a, n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    QMat basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        QVec x = zeros(n);
        x[f] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            x[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

/// One solution x of sum_j x_j * cols[j] = b, if any.
inline std::optional<QVec> solve_combination(const QMat& cols, const QVec& b) {
    std::size_t n = b.size();
    std::size_t k = cols.size();
    // augmented system: rows indexed by coordinates
    QMat aug(n, zeros(k + 1));
    for (std::size_t j = 0; j < k; ++j) {
        require_same_size(cols[j].size(), n, "solve_combination");
        for (std::size_t i = 0; i < n; ++i)
            aug[i][j] = cols[j][i];
    }
    for (std::size_t i = 0; i < n; ++i)
        aug[i][k] = b[i];
    Echelon e = rref(std::move(aug), k + 1);
    QVec x = zeros(k);
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == k)
            return std::nullopt;
        x[e.pivots[i]] = e.rows[i][k];
    }
    return x;
}

/// One solution x of A x = b where A is given by rows, if any.
inline std::optional<QVec> solve_rows(const QMat& a, const QVec& b, std::size_t n) {
    require_same_size(a.size(), b.size(), "solve_rows");
    QMat aug;
    for (std::size_t i = 0; i < a.size(); ++i) {
        require_same_size(a[i].size(), n, "solve_rows");
        QVec row = a[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    Echelon e = rref(std::move(aug), n + 1);
    QVec x = zeros(n);
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == n)
            return std::nullopt;
        x[e.pivots[i]] = e.rows[i][n];
    }
    return x;
}

/// Subspace of Q^n stored as the unique reduced echelon basis of its row space.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : n_(ambient) {}

    static Subspace zero(std::size_t n) { return Subspace(n); }
    static Subspace full(std::size_t n) {
        Subspace s(n);
        for (std::size_t i = 0; i < n; ++i)
            s.rows_.push_back(unit(n, i));
        return s;
    }
    static Subspace span(const QMat& rows, std::size_t n) {
        Subspace s(n);
        s.rows_ = rref(rows, n).rows;
        return s;
    }
    static Subspace line(const QVec& v) {
        if (is_zero(v))
            throw std::invalid_argument("line: zero vector");
        return span({v}, v.size());
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    const QMat& basis() const { return rows_; }
    bool is_zero_space() const { return rows_.empty(); }
    bool is_full() const { return rows_.size() == n_; }

    bool contains(const QVec& e) const {
        require_same_size(e.size(), n_, "contains");
        // reduce e against the echelon rows
        QVec r = e;
        std::size_t c = 0;
        for (const auto& row : rows_) {
            while (row[c] == 0)
                ++c;
            if (r[c] != 0) {
                Rat f = r[c];
                for (std::size_t j = c; j < n_; ++j)
                    r[j] -= f * row[j];
            }
        }
        return is_zero(r);
    }

    bool contains(const Subspace& other) const {
        require_same_size(other.n_, n_, "contains");
        for (const auto& row : other.rows_)
            if (!contains(row))
                return false;
        return true;
    }

    /// Annihilator basis: rows of the orthogonal complement under the dot product.
    QMat annihilator() const { return kernel(rows_, n_); }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_;
    }
    /// Canonical order: by dimension, then lexicographically by echelon rows.
    friend bool operator<(const Subspace& a, const Subspace& b) {
        if (a.n_ != b.n_)
            return a.n_ < b.n_;
        if (a.rows_.size() != b.rows_.size())
            return a.rows_.size() < b.rows_.size();
        return a.rows_ < b.rows_;
    }

private:
    std::size_t n_ = 0;
    QMat rows_;
};

inline Subspace canonicalize(const QMat& rows, std::size_t n) { return Subspace::span(rows, n); }

inline Subspace sum(const Subspace& a, const Subspace& b) {
    require_same_size(a.ambient_dim(), b.ambient_dim(), "sum");
    QMat rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return Subspace::span(rows, a.ambient_dim());
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    require_same_size(a.ambient_dim(), b.ambient_dim(), "intersect");
    std::size_t n = a.ambient_dim();
    if (a.is_full())
        return b;
    if (b.is_full())
        return a;
    QMat cons = a.annihilator();
    QMat more = b.annihilator();
    cons.insert(cons.end(), more.begin(), more.end());
    return Subspace::span(kernel(cons, n), n);
}

inline bool contains(const Subspace& a, const QVec& e) { return a.contains(e); }

/// Vectors from `candidates` extending a basis of `base` greedily; returns those added.
inline QMat extend_basis(const Subspace& base, const QMat& candidates) {
    QMat added;
    Subspace cur = base;
    for (const auto& c : candidates) {
        if (!cur.contains(c)) {
            added.push_back(c);
            cur = sum(cur, Subspace::line(c));
        }
    }
    return added;
}

/// A complement of `base` inside `target` (base need not be contained in target):
/// vectors of target independent modulo base, spanning target + base over base.
inline QMat complement_in(const Subspace& target, const Subspace& base) {
    return extend_basis(base, target.basis());
}

/// Decomposes e = sum of components, one in each line of the frame.
inline std::vector<QVec> coords_in_frame(const std::vector<Subspace>& frame, const QVec& e) {
    std::size_t n = e.size();
    if (frame.size() != n)
        throw std::invalid_argument("coords_in_frame: frame must have one line per dimension");
    QMat gens;
    for (const auto& l : frame) {
        require_same_size(l.ambient_dim(), n, "coords_in_frame");
        if (l.dim() != 1)
            throw std::invalid_argument("coords_in_frame: frame member is not a line");
        gens.push_back(l.basis()[0]);
    }
    if (rank(gens, n) != n)
        throw std::invalid_argument("coords_in_frame: lines do not form a direct sum decomposition");
    auto c = solve_combination(gens, e);
    std::vector<QVec> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(scale(gens[i], (*c)[i]));
    return out;
}

/// Strictly increasing chain of subspaces ending in the ambient space.
struct Flag {
    std::vector<Subspace> subspaces;

    static Flag make(std::vector<Subspace> subs) {
        if (subs.empty())
            throw std::invalid_argument("flag: empty");
        for (std::size_t i = 0; i + 1 < subs.size(); ++i)
            if (subs[i].dim() >= subs[i + 1].dim() || !subs[i + 1].contains(subs[i]))
                throw std::invalid_argument("flag: inclusions must be proper");
        if (subs.front().is_zero_space())
            throw std::invalid_argument("flag: members must be nonzero");
        if (!subs.back().is_full())
            throw std::invalid_argument("flag: last member must be the ambient space");
        return Flag{std::move(subs)};
    }
    friend bool operator==(const Flag&, const Flag&) = default;
};

}  // namespace klytor
