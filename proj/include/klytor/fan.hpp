#pragma once

// Rational polyhedral cones and fans in N = Z^n with exact V- and
// H-representations, refinements, walls and lattice quotients.

#include "klytor/combinatorics.hpp"
#include "klytor/exact_linalg.hpp"
#include "klytor/lattice.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace klytor {

class FanError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SupportMismatch : public FanError {
public:
    using FanError::FanError;
};

inline std::string format_vec(const IVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

struct Cone {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<IVec> rays;       // extreme rays, primitive, sorted
    std::vector<IVec> facets;     // inward primitive normals lying in the span
    std::vector<IVec> equations;  // integral basis of the orthogonal complement of the span

    static Cone from_generators(std::size_t n, const std::vector<IVec>& gens);
    static Cone from_generators(std::size_t n, const QMat& gens) {
        std::vector<IVec> g;
        for (const auto& x : gens)
            if (!is_zero(x))
                g.push_back(primitive(x));
        return from_generators(n, g);
    }
    /// Cone {x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in eqs}; must be pointed.
    static Cone from_constraints(std::size_t n, const QMat& ineqs, const QMat& eqs);

    bool contains(const QVec& x) const {
        require_same_size(x.size(), n, "cone_contains");
        for (const auto& e : equations)
            if (dot(x, e) != 0)
                return false;
        for (const auto& f : facets)
            if (dot(x, f) < 0)
                return false;
        return true;
    }
    bool contains(const IVec& x) const { return contains(to_qvec(x)); }
    bool contains_in_relint(const QVec& x) const {
        for (const auto& e : equations)
            if (dot(x, e) != 0)
                return false;
        for (const auto& f : facets)
            if (dot(x, f) <= 0)
                return false;
        return true;
    }
    QVec interior_point() const {
        QVec p = zeros(n);
        for (const auto& r : rays)
            for (std::size_t i = 0; i < n; ++i)
                p[i] += r[i];
        return p;
    }
    QMat inequality_rows() const {
        QMat m;
        for (const auto& f : facets)
            m.push_back(to_qvec(f));
        return m;
    }
    QMat equation_rows() const {
        QMat m;
        for (const auto& e : equations)
            m.push_back(to_qvec(e));
        return m;
    }
    friend bool operator==(const Cone& a, const Cone& b) { return a.n == b.n && a.rays == b.rays; }
};

inline Cone Cone::from_generators(std::size_t n, const std::vector<IVec>& gens) {
    std::vector<IVec> g;
    for (const auto& x : gens) {
        require_same_size(x.size(), n, "cone generator");
        bool zero = std::all_of(x.begin(), x.end(), [](long t) { return t == 0; });
        if (zero)
            continue;
        IVec p = primitive(x);
        if (std::find(g.begin(), g.end(), p) == g.end())
            g.push_back(p);
    }
    Cone c;
    c.n = n;
    QMat gq;
    std::vector<ZVec> gz;
    for (const auto& x : g) {
        gq.push_back(to_qvec(x));
        gz.push_back(to_zvec(x));
    }
    c.dim = rank(gq, n);
    for (const auto& e : integer_kernel(gz, n))
        c.equations.push_back(to_ivec(e));
    if (c.dim == 0)
        return c;
    QMat eqq = c.equation_rows();
    std::set<IVec> facetset;
    for_each_subset(g.size(), c.dim - 1, [&](const std::vector<std::size_t>& idx) {
        QMat s;
        for (auto i : idx)
            s.push_back(gq[i]);
        if (rank(s, n) != c.dim - 1)
            return true;
        s.insert(s.end(), eqq.begin(), eqq.end());
        QMat k = kernel(s, n);
        if (k.size() != 1)
            return true;
        bool pos = false, neg = false;
        for (const auto& x : gq) {
            Rat d = dot(k[0], x);
            pos = pos || d > 0;
            neg = neg || d < 0;
        }
        if (pos && neg)
            return true;
        IVec f = primitive(k[0]);
        if (neg)
            for (auto& t : f)
                t = -t;
        facetset.insert(f);
        return true;
    });
    c.facets.assign(facetset.begin(), facetset.end());
    QMat all = c.inequality_rows();
    all.insert(all.end(), eqq.begin(), eqq.end());
    if (rank(all, n) != n)
        throw FanError("cone is not strictly convex");
    for (std::size_t i = 0; i < g.size(); ++i) {
        QMat tight = eqq;
        for (const auto& f : c.facets)
            if (dot(gq[i], f) == 0)
                tight.push_back(to_qvec(f));
        if (rank(tight, n) == n - 1)
            c.rays.push_back(g[i]);
    }
    std::sort(c.rays.begin(), c.rays.end());
    return c;
}

inline Cone Cone::from_constraints(std::size_t n, const QMat& ineqs, const QMat& eqs) {
    QMat e = rref(eqs, n).rows;
    if (e.size() >= n)
        return from_generators(n, std::vector<IVec>{});
    std::size_t need = n - 1 - e.size();
    std::set<IVec> rays;
    auto feasible = [&](const QVec& d) {
        for (const auto& a : ineqs)
            if (dot(a, d) < 0)
                return false;
        return true;
    };
    for_each_subset(ineqs.size(), need, [&](const std::vector<std::size_t>& idx) {
        QMat s = e;
        for (auto i : idx)
            s.push_back(ineqs[i]);
        if (rank(s, n) != n - 1)
            return true;
        QVec d = kernel(s, n)[0];
        if (feasible(d))
            rays.insert(primitive(d));
        QVec m = scale(d, Rat(-1));
        if (feasible(m))
            rays.insert(primitive(m));
        return true;
    });
    return from_generators(n, std::vector<IVec>(rays.begin(), rays.end()));
}

inline bool cone_contains(const Cone& c, const QVec& x) { return c.contains(x); }

inline Cone intersect(const Cone& a, const Cone& b) {
    require_same_size(a.n, b.n, "cone intersection");
    QMat ineq = a.inequality_rows();
    QMat more = b.inequality_rows();
    ineq.insert(ineq.end(), more.begin(), more.end());
    QMat eq = a.equation_rows();
    more = b.equation_rows();
    eq.insert(eq.end(), more.begin(), more.end());
    return Cone::from_constraints(a.n, ineq, eq);
}

/// Piece of a cone where every given form is >= 0.
inline Cone restrict_cone(const Cone& c, const QMat& extra_ineqs) {
    QMat ineq = c.inequality_rows();
    ineq.insert(ineq.end(), extra_ineqs.begin(), extra_ineqs.end());
    return Cone::from_constraints(c.n, ineq, c.equation_rows());
}

struct Wall {
    std::vector<std::size_t> rays;   // global ray indices of tau
    std::vector<std::size_t> cones;  // maximal cones having tau as a facet
};

class Fan {
public:
    Fan() = default;

    Fan(std::size_t n, std::vector<IVec> rays, std::vector<std::vector<std::size_t>> max_cones)
        : n_(n), rays_(std::move(rays)), max_(std::move(max_cones)) {
        if (n_ == 0)
            throw FanError("fan rank must be positive");
        std::set<IVec> seen;
        for (const auto& r : rays_) {
            if (r.size() != n_)
                throw FanError("ray " + format_vec(r) + " has wrong length");
            bool zero = std::all_of(r.begin(), r.end(), [](long t) { return t == 0; });
            if (zero)
                throw FanError("zero ray");
            if (primitive(r) != r)
                throw FanError("ray " + format_vec(r) + " is not primitive");
            if (!seen.insert(r).second)
                throw FanError("duplicate ray " + format_vec(r));
        }
        std::vector<bool> used(rays_.size(), false);
        for (std::size_t k = 0; k < max_.size(); ++k) {
            auto& idx = max_[k];
            std::sort(idx.begin(), idx.end());
            if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
                throw FanError("cone " + std::to_string(k) + " repeats a ray");
            std::vector<IVec> gens;
            for (auto i : idx) {
                if (i >= rays_.size())
                    throw FanError("cone " + std::to_string(k) + " uses unknown ray index");
                gens.push_back(rays_[i]);
                used[i] = true;
            }
            Cone c = Cone::from_generators(n_, gens);
            if (c.rays.size() != gens.size())
                throw FanError("cone " + std::to_string(k) + " has a generator that is not an extreme ray");
            cones_.push_back(std::move(c));
        }
        for (std::size_t i = 0; i < used.size(); ++i)
            if (!used[i])
                throw FanError("ray " + std::to_string(i) + " lies in no maximal cone");
    }

    /// Builds a fan from explicit cones; rays are numbered in order of first appearance.
    static Fan from_cones(std::size_t n, const std::vector<Cone>& cones) {
        std::vector<IVec> rays;
        std::map<IVec, std::size_t> index;
        std::vector<std::vector<std::size_t>> maxc;
        for (const auto& c : cones) {
            std::vector<std::size_t> idx;
            for (const auto& r : c.rays) {
                auto [it, fresh] = index.emplace(r, rays.size());
                if (fresh)
                    rays.push_back(r);
                idx.push_back(it->second);
            }
            maxc.push_back(std::move(idx));
        }
        Fan f;
        f.n_ = n;
        f.rays_ = std::move(rays);
        f.max_ = std::move(maxc);
        for (auto& idx : f.max_)
            std::sort(idx.begin(), idx.end());
        f.cones_ = cones;
        return f;
    }

    std::size_t rank() const { return n_; }
    const std::vector<IVec>& rays() const { return rays_; }
    const IVec& ray(std::size_t i) const { return rays_.at(i); }
    std::size_t num_rays() const { return rays_.size(); }
    const std::vector<std::vector<std::size_t>>& maximal_cones() const { return max_; }
    std::size_t num_cones() const { return max_.size(); }
    const Cone& cone(std::size_t i) const { return cones_.at(i); }
    const std::vector<Cone>& cones() const { return cones_; }

    std::optional<std::size_t> ray_index(const IVec& r) const {
        for (std::size_t i = 0; i < rays_.size(); ++i)
            if (rays_[i] == r)
                return i;
        return std::nullopt;
    }

    std::optional<std::size_t> find_cone(const QVec& x) const {
        for (std::size_t i = 0; i < cones_.size(); ++i)
            if (cones_[i].contains(x))
                return i;
        return std::nullopt;
    }

    std::string describe_cone(std::size_t i) const {
        std::string s = "cone " + std::to_string(i) + " [";
        for (std::size_t k = 0; k < max_[i].size(); ++k)
            s += (k ? " " : "") + format_vec(rays_[max_[i][k]]);
        return s + "]";
    }

    /// Facets of maximal cone i as sorted global ray index sets.
    std::vector<std::vector<std::size_t>> facets_of(std::size_t i) const {
        std::vector<std::vector<std::size_t>> out;
        const Cone& c = cones_[i];
        for (const auto& f : c.facets) {
            std::vector<std::size_t> tight;
            for (auto r : max_[i])
                if (dot(to_qvec(rays_[r]), f) == 0)
                    tight.push_back(r);
            out.push_back(tight);
        }
        return out;
    }

    std::vector<Wall> walls() const {
        std::vector<Wall> out;
        std::map<std::vector<std::size_t>, std::size_t> pos;
        for (std::size_t i = 0; i < cones_.size(); ++i) {
            for (auto& f : facets_of(i)) {
                auto [it, fresh] = pos.emplace(f, out.size());
                if (fresh)
                    out.push_back(Wall{f, {}});
                out[it->second].cones.push_back(i);
            }
        }
        return out;
    }

    bool is_complete() const {
        if (cones_.empty())
            return false;
        for (const auto& c : cones_)
            if (c.dim != n_)
                return false;
        auto ws = walls();
        std::vector<std::size_t> parent(cones_.size());
        for (std::size_t i = 0; i < parent.size(); ++i)
            parent[i] = i;
        auto find = [&](std::size_t x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& w : ws) {
            if (w.cones.size() != 2)
                return false;
            parent[find(w.cones[0])] = find(w.cones[1]);
        }
        for (std::size_t i = 0; i < parent.size(); ++i)
            if (find(i) != find(0))
                return false;
        return true;
    }

    /// Reports the first pair of maximal cones that do not meet in a common face.
    std::optional<std::string> face_to_face_error() const {
        for (std::size_t i = 0; i < cones_.size(); ++i) {
            for (std::size_t j = i + 1; j < cones_.size(); ++j) {
                Cone m = intersect(cones_[i], cones_[j]);
                std::vector<IVec> common;
                std::set_intersection(cones_[i].rays.begin(), cones_[i].rays.end(), cones_[j].rays.begin(),
                                      cones_[j].rays.end(), std::back_inserter(common));
                if (m.rays != common)
                    return describe_cone(i) + " and " + describe_cone(j) + " do not meet in a common face";
                // the common rays must span a face of each cone
                for (std::size_t k : {i, j}) {
                    const Cone& c = cones_[k];
                    std::vector<IVec> tight = c.rays;
                    for (const auto& f : c.facets) {
                        bool all_zero = true;
                        for (const auto& r : common)
                            all_zero = all_zero && dot(to_qvec(r), f) == 0;
                        if (!all_zero)
                            continue;
                        std::vector<IVec> keep;
                        for (const auto& r : tight)
                            if (dot(to_qvec(r), f) == 0)
                                keep.push_back(r);
                        tight = keep;
                    }
                    if (tight != common)
                        return describe_cone(i) + " and " + describe_cone(j) +
                               " intersect in a set that is not a face";
                }
            }
        }
        return std::nullopt;
    }

    /// Same cones as sets of ray vectors (ignores numbering).
    bool same_cones(const Fan& other) const {
        if (n_ != other.n_)
            return false;
        std::set<std::vector<IVec>> a, b;
        for (const auto& c : cones_)
            a.insert(c.rays);
        for (const auto& c : other.cones_)
            b.insert(c.rays);
        return a == b;
    }

private:
    std::size_t n_ = 0;
    std::vector<IVec> rays_;
    std::vector<std::vector<std::size_t>> max_;
    std::vector<Cone> cones_;
};

inline bool is_complete(const Fan& f) { return f.is_complete(); }

/// Fan refinement together with the parent cone of each new maximal cone.
struct Refinement {
    Fan fan;
    std::vector<std::size_t> parent1;
    std::vector<std::size_t> parent2;
};

inline Refinement common_refinement_with_parents(const Fan& f1, const Fan& f2) {
    if (f1.rank() != f2.rank())
        throw SupportMismatch("common_refinement: fans live in lattices of different rank");
    bool c1 = f1.is_complete(), c2 = f2.is_complete();
    if (c1 != c2)
        throw SupportMismatch("common_refinement: supports differ (only one fan is complete)");
    std::size_t n = f1.rank();
    std::vector<Cone> pieces;
    Refinement out;
    for (std::size_t i = 0; i < f1.num_cones(); ++i) {
        const Cone& a = f1.cone(i);
        for (std::size_t j = 0; j < f2.num_cones(); ++j) {
            const Cone& b = f2.cone(j);
            // quick rejection: some facet of a is nonpositive on all of b
            bool separated = false;
            for (const auto& f : a.facets) {
                bool all_nonpos = true;
                for (const auto& r : b.rays)
                    all_nonpos = all_nonpos && dot(to_qvec(r), f) <= 0;
                if (all_nonpos) {
                    separated = true;
                    break;
                }
            }
            if (separated && a.dim == n)
                continue;
            Cone m = intersect(a, b);
            if (m.dim != std::max(a.dim, b.dim) || m.dim == 0)
                continue;
            pieces.push_back(std::move(m));
            out.parent1.push_back(i);
            out.parent2.push_back(j);
        }
    }
    if (!c1) {
        // both incomplete: every cone must be covered by pieces of full dimension
        for (std::size_t i = 0; i < f1.num_cones(); ++i)
            if (!f2.find_cone(f1.cone(i).interior_point()))
                throw SupportMismatch("common_refinement: supports differ");
        for (std::size_t j = 0; j < f2.num_cones(); ++j)
            if (!f1.find_cone(f2.cone(j).interior_point()))
                throw SupportMismatch("common_refinement: supports differ");
    }
    out.fan = Fan::from_cones(n, pieces);
    return out;
}

inline Fan common_refinement(const Fan& f1, const Fan& f2) { return common_refinement_with_parents(f1, f2).fan; }

/// Splits every maximal cone along {<c, x> = 0} for each cut c.
inline Fan subdivide_by_hyperplanes(const Fan& f, const std::vector<QVec>& cuts) {
    std::vector<Cone> cones = f.cones();
    for (const auto& c : cuts) {
        require_same_size(c.size(), f.rank(), "subdivide_by_hyperplanes");
        if (is_zero(c))
            continue;
        std::vector<Cone> next;
        for (const auto& cone : cones) {
            bool pos = false, neg = false;
            for (const auto& r : cone.rays) {
                Rat d = dot(c, r);
                pos = pos || d > 0;
                neg = neg || d < 0;
            }
            if (!(pos && neg)) {
                next.push_back(cone);
                continue;
            }
            next.push_back(restrict_cone(cone, {c}));
            next.push_back(restrict_cone(cone, {scale(c, Rat(-1))}));
        }
        cones = std::move(next);
    }
    return Fan::from_cones(f.rank(), cones);
}

inline Fan subdivide_by_hyperplanes(const Fan& f, const std::vector<IVec>& cuts) {
    std::vector<QVec> q;
    for (const auto& c : cuts)
        q.push_back(to_qvec(c));
    return subdivide_by_hyperplanes(f, q);
}

/// Regions of a cone on which a given form attains the minimum of `forms`.
/// Identical forms are grouped; `form` is the first index of the minimal group.
struct Region {
    Cone cone;
    std::size_t form;
};

inline std::vector<Region> argmin_regions(const Cone& c, const std::vector<QVec>& forms) {
    std::vector<std::size_t> distinct;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        bool dup = false;
        for (auto j : distinct)
            dup = dup || forms[j] == forms[i];
        if (!dup)
            distinct.push_back(i);
    }
    if (distinct.size() == 1)
        return {Region{c, distinct[0]}};
    std::vector<Region> out;
    for (auto j : distinct) {
        // skip forms that are strictly larger somewhere on every ray (cheap filter)
        QMat extra;
        for (auto k : distinct)
            if (k != j)
                extra.push_back(sub(forms[k], forms[j]));
        Cone piece = restrict_cone(c, extra);
        if (piece.dim == c.dim && piece.dim > 0)
            out.push_back(Region{std::move(piece), j});
    }
    return out;
}

/// Refines a fan by splitting each maximal cone into the argmin regions of its
/// forms. Consistent across walls whenever the per-cone minima glue to a
/// continuous function.
struct RegionRefinement {
    Fan fan;
    std::vector<std::size_t> parent;
    std::vector<std::size_t> form;
};

template <class FormsOf>
RegionRefinement refine_by_argmin(const Fan& f, FormsOf&& forms_of) {
    RegionRefinement out;
    std::vector<Cone> pieces;
    for (std::size_t i = 0; i < f.num_cones(); ++i) {
        std::vector<QVec> forms = forms_of(i);
        for (auto& reg : argmin_regions(f.cone(i), forms)) {
            pieces.push_back(std::move(reg.cone));
            out.parent.push_back(i);
            out.form.push_back(reg.form);
        }
    }
    out.fan = Fan::from_cones(f.rank(), pieces);
    return out;
}

/// True iff every maximal cone of `fine` lies in a maximal cone of `coarse`
/// and both fans have the same support type.
inline bool refines(const Fan& fine, const Fan& coarse) {
    if (fine.rank() != coarse.rank() || fine.is_complete() != coarse.is_complete())
        return false;
    for (const auto& c : fine.cones()) {
        bool inside = false;
        for (const auto& d : coarse.cones()) {
            bool all = true;
            for (const auto& r : c.rays)
                all = all && d.contains(r);
            if (all) {
                inside = true;
                break;
            }
        }
        if (!inside)
            return false;
    }
    return true;
}

struct WallData {
    std::vector<std::size_t> tau;
    std::size_t sigma;
    std::size_t sigma_prime;
    IVec w_tau;
    IVec v_tau;
};

/// Wall data for a codimension-one cone tau given by global ray indices.
/// w_tau is nonnegative on sigma; sigma is the side where the primitive
/// generator of tau-perp with positive leading coordinate is nonnegative.
inline WallData wall_data(const Fan& f, std::vector<std::size_t> tau) {
    std::sort(tau.begin(), tau.end());
    std::vector<std::size_t> adj;
    for (std::size_t i = 0; i < f.num_cones(); ++i)
        for (const auto& fac : f.facets_of(i))
            if (fac == tau)
                adj.push_back(i);
    if (adj.size() != 2 || f.cone(adj[0]).dim != f.rank())
        throw FanError("wall_data: cone is not a wall between two maximal cones");
    std::size_t n = f.rank();
    std::vector<ZVec> rows;
    for (auto r : tau)
        rows.push_back(to_zvec(f.ray(r)));
    auto ker = integer_kernel(rows, n);
    if (ker.size() != 1)
        throw FanError("wall_data: cone is not of codimension one");
    ZVec w = ker[0];
    for (const auto& x : w) {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : w)
                y = -y;
        break;
    }
    WallData d;
    d.tau = tau;
    const Cone& c0 = f.cone(adj[0]);
    bool first_positive = dot(c0.interior_point(), to_qvec(w)) > 0;
    d.sigma = first_positive ? adj[0] : adj[1];
    d.sigma_prime = first_positive ? adj[1] : adj[0];
    d.w_tau = to_ivec(w);
    ZVec v0 = dual_unit_vector(w);
    ZVec s(n, Int(0));
    for (auto r : tau)
        for (std::size_t i = 0; i < n; ++i)
            s[i] += f.ray(r)[i];
    // smallest k with v0 + k s in sigma
    const Cone& sig = f.cone(d.sigma);
    bool have = false;
    Int k = 0;
    for (const auto& fac : sig.facets) {
        ZVec fz = to_zvec(fac);
        Int a = zdot(fz, v0), b = zdot(fz, s);
        if (b == 0) {
            if (a < 0)
                throw FanError("wall_data: no integral point of sigma pairs to 1 with w_tau");
            continue;
        }
        Int q;
        Int na = -a;
        mpz_cdiv_q(q.get_mpz_t(), na.get_mpz_t(), b.get_mpz_t());
        if (!have || q > k)
            k = q;
        have = true;
    }
    ZVec v = v0;
    for (std::size_t i = 0; i < n; ++i)
        v[i] += k * s[i];
    d.v_tau = to_ivec(v);
    return d;
}

/// Canonical representative of [u] in M_sigma = M / (sigma-perp cap M).
inline IVec class_in_M_sigma(const IVec& u, const Cone& sigma) {
    std::vector<ZVec> rows;
    for (const auto& r : sigma.rays)
        rows.push_back(to_zvec(r));
    auto lat = integer_kernel(rows, sigma.n);
    return to_ivec(reduce_mod_hnf(to_zvec(u), lat));
}

// Standard fans.

inline Fan projective_space_fan(std::size_t n) {
    std::vector<IVec> rays;
    for (std::size_t i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        rays.push_back(e);
    }
    rays.push_back(IVec(n, -1));
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t skip = 0; skip <= n; ++skip) {
        std::vector<std::size_t> c;
        for (std::size_t j = 0; j <= n; ++j)
            if (j != skip)
                c.push_back(j);
        cones.push_back(c);
    }
    return Fan(n, rays, cones);
}

/// Fan of (P^1)^n: rays +-e_i, one cone per orthant.
inline Fan product_p1_fan(std::size_t n) {
    std::vector<IVec> rays;
    for (std::size_t i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        rays.push_back(e);
        e[i] = -1;
        rays.push_back(e);
    }
    std::vector<std::vector<std::size_t>> cones;
    for (unsigned long mask = 0; mask < (1ULL << n); ++mask) {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i < n; ++i)
            c.push_back(2 * i + ((mask >> i) & 1ULL));
        cones.push_back(c);
    }
    return Fan(n, rays, cones);
}

}  // namespace klytor
