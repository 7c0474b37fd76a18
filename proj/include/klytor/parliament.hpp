#pragma once

// Klyachko arrangements, generic realizations of their matroids, parliaments
// of polytopes and the weight decomposition of global sections.

#include "klytor/klyachko.hpp"
#include "klytor/parallel.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>

namespace klytor {

/// Intersection-closed family of subspaces containing {0} and E, sorted by (dim, RREF).
struct Arrangement {
    std::size_t ambient = 0;
    std::vector<Subspace> subspaces;

    static Arrangement closure(std::size_t r, const std::vector<Subspace>& gens) {
        std::set<Subspace> s(gens.begin(), gens.end());
        s.insert(Subspace::zero(r));
        s.insert(Subspace::full(r));
        std::vector<Subspace> frontier(s.begin(), s.end());
        while (!frontier.empty()) {
            std::vector<Subspace> next;
            std::vector<Subspace> all(s.begin(), s.end());
            for (const auto& a : frontier)
                for (const auto& b : all) {
                    auto c = intersect(a, b);
                    if (s.insert(c).second)
                        next.push_back(c);
                }
            frontier = std::move(next);
        }
        return Arrangement{r, std::vector<Subspace>(s.begin(), s.end())};
    }

    bool contains(const Subspace& s) const {
        return std::binary_search(subspaces.begin(), subspaces.end(), s);
    }
};

inline Arrangement klyachko_arrangement(const KlyachkoBundle& b) {
    std::vector<Subspace> gens;
    for (const auto& f : b.filtrations())
        for (const auto& bp : f.breakpoints())
            gens.push_back(bp.space);
    return Arrangement::closure(b.rank(), gens);
}

/// E_{v >= u} = intersection over rays of E^rho_{<u, v_rho>}.
inline Subspace section_space(const KlyachkoBundle& b, const IVec& u) {
    require_same_size(u.size(), b.fan().rank(), "section_space");
    Subspace s = Subspace::full(b.rank());
    for (std::size_t r = 0; r < b.fan().num_rays(); ++r) {
        long level = 0;
        for (std::size_t i = 0; i < u.size(); ++i)
            level += u[i] * b.fan().ray(r)[i];
        s = intersect(s, b.filtration(r).at(Rat(level)));
    }
    return s;
}

inline Arrangement character_arrangement(const KlyachkoBundle& b, const std::vector<IVec>& weights) {
    std::vector<Subspace> gens;
    for (const auto& u : weights)
        gens.push_back(section_space(b, u));
    return Arrangement::closure(b.rank(), gens);
}

struct GroundElement {
    QVec vector;
    std::size_t source;  // index of the arrangement member it was drawn from
};

struct MatroidRealization {
    std::vector<GroundElement> ground;
    std::uint64_t seed = 0;

    std::size_t rank_of(const std::vector<std::size_t>& subset) const {
        QMat m;
        for (auto i : subset)
            m.push_back(ground.at(i).vector);
        return m.empty() ? 0 : rank(m, ground.at(0).vector.size());
    }
};

class GenericityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Members that are not the sum of the other members they contain.
inline std::vector<std::size_t> irreducible_members(const Arrangement& arr) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arr.subspaces.size(); ++i) {
        const auto& u = arr.subspaces[i];
        Subspace below = Subspace::zero(arr.ambient);
        for (std::size_t j = 0; j < arr.subspaces.size(); ++j)
            if (j != i && u.contains(arr.subspaces[j]))
                below = sum(below, arr.subspaces[j]);
        if (!(below == u))
            out.push_back(i);
    }
    return out;
}

/// For every subset B0 and element e from U_i outside B0: e in span(B0) iff U_i in span(B0).
inline bool is_generic(const Arrangement& arr, const std::vector<GroundElement>& ground) {
    std::size_t m = ground.size();
    std::size_t r = arr.ambient;
    if (m > 20)
        throw GenericityError("genericity check limited to 20 ground vectors");
    bool ok = true;
    for_each_mask(m, [&](unsigned long mask) {
        if (!ok)
            return;
        QMat rows;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1U)
                rows.push_back(ground[i].vector);
        Subspace span = Subspace::span(rows, r);
        for (std::size_t i = 0; i < m && ok; ++i) {
            if (mask >> i & 1U)
                continue;
            ok = span.contains(ground[i].vector) == span.contains(arr.subspaces[ground[i].source]);
        }
    });
    return ok;
}

inline MatroidRealization generic_ground_set(const Arrangement& arr, std::uint64_t seed = 0, int retries = 32) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> d(-(1L << 16), 1L << 16);
    auto members = irreducible_members(arr);
    for (int attempt = 0; attempt < retries; ++attempt) {
        std::vector<GroundElement> ground;
        for (auto i : members) {
            const auto& u = arr.subspaces[i];
            for (std::size_t k = 0; k < u.dim(); ++k) {
                QVec v = zeros(arr.ambient);
                for (const auto& row : u.basis())
                    v = add(v, scale(row, make_rat(d(rng))));
                ground.push_back(GroundElement{v, i});
            }
        }
        if (is_generic(arr, ground))
            return MatroidRealization{ground, seed};
    }
    throw GenericityError("no generic ground set found within the retry budget; try another seed");
}

struct ParliamentEntry {
    std::size_t ground_index = 0;
    QVec vector;
    PLFunction pl;
    Polytope polytope;
};

inline std::vector<ParliamentEntry> parliament(const KlyachkoBundle& b, const MatroidRealization& m) {
    if (!b.is_integral())
        throw std::invalid_argument("parliament requires integral filtration data");
    std::vector<ParliamentEntry> out;
    for (std::size_t i = 0; i < m.ground.size(); ++i) {
        auto pl = pl_valuation(b, m.ground[i].vector);
        auto poly = polytope_of(pl);
        out.push_back(ParliamentEntry{i, m.ground[i].vector, std::move(pl), std::move(poly)});
    }
    return out;
}

inline long h0_weight_dim_direct(const KlyachkoBundle& b, const IVec& u) {
    return static_cast<long>(section_space(b, u).dim());
}

/// Matroid rank of the ground vectors whose polytopes contain u.
inline long h0_weight_dim_matroid(const std::vector<ParliamentEntry>& parl, const IVec& u) {
    QMat rows;
    for (const auto& e : parl)
        if (e.polytope.contains(to_qvec(u)))
            rows.push_back(e.vector);
    return rows.empty() ? 0 : static_cast<long>(rank(rows, rows[0].size()));
}

inline long h0_weight_dim_matroid(const KlyachkoBundle& b, const IVec& u, const MatroidRealization& m) {
    return h0_weight_dim_matroid(parliament(b, m), u);
}

/// Bounding box of the parliament polytopes, padded by 1; empty when all are empty.
inline std::vector<IVec> weight_box(const std::vector<ParliamentEntry>& parl, std::size_t n) {
    IVec lo(n), hi(n);
    bool any = false;
    for (const auto& e : parl) {
        if (e.polytope.is_empty())
            continue;
        for (const auto& v : e.polytope.vertices()) {
            for (std::size_t i = 0; i < n; ++i) {
                long a = to_ll(floor_rat(v[i])), c = to_ll(ceil_rat(v[i]));
                lo[i] = any ? std::min(lo[i], a) : a;
                hi[i] = any ? std::max(hi[i], c) : c;
            }
            any = true;
        }
    }
    std::vector<IVec> out;
    if (!any)
        return out;
    IVec cur(n);
    for (std::size_t i = 0; i < n; ++i) {
        --lo[i];
        ++hi[i];
        cur[i] = lo[i];
    }
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < n && cur[i] == hi[i]) {
            cur[i] = lo[i];
            ++i;
        }
        if (i == n)
            break;
        ++cur[i];
    }
    return out;
}

/// Nonzero weight-space dimensions of H^0, by the direct formula, each checked
/// against the matroid formula over the same weight box.
inline std::map<IVec, long> h0_all(const KlyachkoBundle& b, std::uint64_t seed = 0) {
    if (!b.fan().is_complete())
        throw std::invalid_argument("h0_all requires a complete fan");
    auto m = generic_ground_set(klyachko_arrangement(b), seed);
    auto parl = parliament(b, m);
    auto box = weight_box(parl, b.fan().rank());
    std::vector<long> dims(box.size());
    parallel_for(box.size(), [&](std::size_t i) {
        long direct = h0_weight_dim_direct(b, box[i]);
        long matroid = h0_weight_dim_matroid(parl, box[i]);
        if (direct != matroid)
            throw std::logic_error("h0_all: direct and matroid formulas disagree at " + format_vec(box[i]));
        dims[i] = direct;
    });
    std::map<IVec, long> out;
    for (std::size_t i = 0; i < box.size(); ++i)
        if (dims[i] != 0)
            out.emplace(box[i], dims[i]);
    return out;
}

}  // namespace klytor
