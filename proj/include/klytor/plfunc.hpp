#pragma once

// Piecewise linear functions on fans and H/V-represented polytopes, with the
// two dualities: P_phi = {<x,y> <= phi(x)} and Delta_phi = {<x,y> >= phi(x)}.

#include "klytor/fan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace klytor {

class PLFunction {
public:
    PLFunction() = default;

    /// One linear functional per maximal cone; adjacent parts must agree on shared rays.
    PLFunction(Fan fan, std::vector<QVec> linear_parts) : fan_(std::move(fan)), parts_(std::move(linear_parts)) {
        if (parts_.size() != fan_.num_cones())
            throw std::invalid_argument("PLFunction: need one linear part per maximal cone");
        std::vector<std::optional<Rat>> seen(fan_.num_rays());
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            require_same_size(parts_[i].size(), fan_.rank(), "PLFunction linear part");
            for (auto r : fan_.maximal_cones()[i]) {
                Rat v = dot(parts_[i], fan_.ray(r));
                if (seen[r] && *seen[r] != v)
                    throw std::invalid_argument("PLFunction: linear parts disagree at ray " +
                                                format_vec(fan_.ray(r)));
                seen[r] = v;
            }
        }
    }

    static PLFunction linear(const Fan& fan, const QVec& u) {
        return PLFunction(fan, std::vector<QVec>(fan.num_cones(), u));
    }

    static PLFunction zero(const Fan& fan) { return linear(fan, zeros(fan.rank())); }

    /// The function that is linear on each cone and takes the given values at the rays.
    static PLFunction from_ray_values(const Fan& fan, const QVec& values) {
        require_same_size(values.size(), fan.num_rays(), "from_ray_values");
        std::vector<QVec> parts;
        for (std::size_t i = 0; i < fan.num_cones(); ++i) {
            QMat rows;
            QVec rhs;
            for (auto r : fan.maximal_cones()[i]) {
                rows.push_back(to_qvec(fan.ray(r)));
                rhs.push_back(values[r]);
            }
            auto u = solve_rows(rows, rhs, fan.rank());
            if (!u)
                throw std::invalid_argument("from_ray_values: values are not linear on " + fan.describe_cone(i));
            parts.push_back(*u);
        }
        return PLFunction(fan, parts);
    }

    const Fan& fan() const { return fan_; }
    const std::vector<QVec>& linear_parts() const { return parts_; }
    const QVec& linear_part(std::size_t cone) const { return parts_.at(cone); }

    Rat eval(const QVec& x) const {
        auto c = fan_.find_cone(x);
        if (!c)
            throw std::domain_error("eval: point outside the support of the fan");
        return dot(parts_[*c], x);
    }
    Rat eval(const IVec& x) const { return eval(to_qvec(x)); }

    Rat value_at_ray(std::size_t r) const { return eval(fan_.ray(r)); }

    QVec values_on_rays() const {
        QVec out(fan_.num_rays());
        for (std::size_t i = 0; i < parts_.size(); ++i)
            for (auto r : fan_.maximal_cones()[i])
                out[r] = dot(parts_[i], fan_.ray(r));
        return out;
    }

    /// Integer values on N. For full-dimensional cones this means u_sigma is integral,
    /// since the lattice points of sigma generate Z^n.
    bool is_integral() const {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (fan_.cone(i).dim == fan_.rank()) {
                for (const auto& x : parts_[i])
                    if (!klytor::is_integral(x))
                        return false;
            } else {
                for (auto r : fan_.maximal_cones()[i])
                    if (!klytor::is_integral(dot(parts_[i], fan_.ray(r))))
                        return false;
            }
        }
        return true;
    }

    /// Same function on a refinement of its fan.
    PLFunction restrict_to(const Fan& finer) const {
        std::vector<QVec> parts;
        for (const auto& c : finer.cones()) {
            auto p = fan_.find_cone(c.interior_point());
            if (!p)
                throw FanError("restrict_to: target fan is not a refinement");
            for (const auto& r : c.rays)
                if (!fan_.cone(*p).contains(r))
                    throw FanError("restrict_to: target fan is not a refinement");
            parts.push_back(parts_[*p]);
        }
        return PLFunction(finer, parts);
    }

    PLFunction negated() const {
        std::vector<QVec> parts;
        for (const auto& u : parts_)
            parts.push_back(scale(u, Rat(-1)));
        return PLFunction(fan_, parts);
    }

private:
    Fan fan_;
    std::vector<QVec> parts_;
};

inline Rat eval(const PLFunction& f, const QVec& x) { return f.eval(x); }

inline PLFunction add_pl(const PLFunction& a, const PLFunction& b) {
    auto r = common_refinement_with_parents(a.fan(), b.fan());
    std::vector<QVec> parts;
    for (std::size_t i = 0; i < r.fan.num_cones(); ++i)
        parts.push_back(add(a.linear_part(r.parent1[i]), b.linear_part(r.parent2[i])));
    return PLFunction(r.fan, parts);
}

inline PLFunction min_pl(const PLFunction& a, const PLFunction& b) {
    auto r = common_refinement_with_parents(a.fan(), b.fan());
    auto split = refine_by_argmin(r.fan, [&](std::size_t i) {
        return std::vector<QVec>{a.linear_part(r.parent1[i]), b.linear_part(r.parent2[i])};
    });
    std::vector<QVec> parts;
    for (std::size_t k = 0; k < split.fan.num_cones(); ++k) {
        std::size_t i = split.parent[k];
        parts.push_back(split.form[k] == 0 ? a.linear_part(r.parent1[i]) : b.linear_part(r.parent2[i]));
    }
    return PLFunction(split.fan, parts);
}

/// phi1 <= phi2 everywhere; decided on the rays of the common refinement.
inline bool leq_pl(const PLFunction& a, const PLFunction& b) {
    auto r = common_refinement_with_parents(a.fan(), b.fan());
    for (std::size_t i = 0; i < r.fan.num_cones(); ++i) {
        QVec d = sub(a.linear_part(r.parent1[i]), b.linear_part(r.parent2[i]));
        for (auto ray : r.fan.maximal_cones()[i])
            if (dot(d, r.fan.ray(ray)) > 0)
                return false;
    }
    return true;
}

inline bool equal_pl(const PLFunction& a, const PLFunction& b) { return leq_pl(a, b) && leq_pl(b, a); }

/// Constraint <a, y> <= b.
struct Halfspace {
    QVec a;
    Rat b;
    friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

class Polytope {
public:
    Polytope() = default;

    static Polytope from_hrep(std::size_t n, std::vector<Halfspace> hs) {
        Polytope p;
        p.n_ = n;
        QMat normals;
        for (auto& h : hs) {
            require_same_size(h.a.size(), n, "polytope constraint");
            if (is_zero(h.a)) {
                if (h.b < 0)
                    p.infeasible_ = true;
                continue;
            }
            normals.push_back(h.a);
            p.hrep_.push_back(h);
        }
        p.pointed_ = rank(normals, n) == n;
        if (p.infeasible_) {
            p.hrep_ = {Halfspace{zeros(n), Rat(-1)}};
            return p;
        }
        if (!p.pointed_)
            return p;
        p.vertices_ = enumerate_vertices(n, p.hrep_);
        if (p.vertices_.empty()) {
            p.infeasible_ = true;
            p.hrep_ = {Halfspace{zeros(n), Rat(-1)}};
            return p;
        }
        // bounded iff the recession cone {y : <a, y> <= 0} is {0}
        QMat rec;
        for (const auto& h : p.hrep_)
            rec.push_back(scale(h.a, Rat(-1)));
        p.bounded_ = Cone::from_constraints(n, rec, {}).rays.empty();
        if (p.bounded_)
            p.hrep_ = facets_of_hull(n, p.vertices_);
        return p;
    }

    static Polytope from_vertices(std::size_t n, QMat verts) {
        if (verts.empty())
            return from_hrep(n, {Halfspace{zeros(n), Rat(-1)}});
        for (const auto& v : verts)
            require_same_size(v.size(), n, "polytope vertex");
        return from_hrep(n, facets_of_hull(n, verts));
    }

    std::size_t ambient_dim() const { return n_; }
    bool is_empty() const { return infeasible_; }
    bool is_bounded() const { return infeasible_ || bounded_; }
    const std::vector<Halfspace>& hrep() const { return hrep_; }

    /// Vertices in lexicographic order; requires a pointed polyhedron.
    const QMat& vertices() const {
        if (!pointed_ && !infeasible_)
            throw std::domain_error("polytope has no vertices (not pointed)");
        return vertices_;
    }

    bool contains(const QVec& y) const {
        require_same_size(y.size(), n_, "polytope contains");
        if (infeasible_)
            return false;
        for (const auto& h : hrep_)
            if (dot(h.a, y) > h.b)
                return false;
        return true;
    }

    friend bool operator==(const Polytope& p, const Polytope& q) {
        if (p.n_ != q.n_ || p.infeasible_ != q.infeasible_)
            return false;
        if (p.infeasible_)
            return true;
        if (p.pointed_ && q.pointed_ && p.bounded_ && q.bounded_)
            return p.vertices_ == q.vertices_;
        return p.hrep_ == q.hrep_;
    }

private:
    static QMat enumerate_vertices(std::size_t n, const std::vector<Halfspace>& hs) {
        std::set<QVec> found;
        for_each_subset(hs.size(), n, [&](const std::vector<std::size_t>& idx) {
            QMat a;
            QVec b;
            for (auto i : idx) {
                a.push_back(hs[i].a);
                b.push_back(hs[i].b);
            }
            if (rank(a, n) != n)
                return true;
            auto y = solve_rows(a, b, n);
            bool ok = true;
            for (const auto& h : hs)
                ok = ok && dot(h.a, *y) <= h.b;
            if (ok)
                found.insert(*y);
            return true;
        });
        return QMat(found.begin(), found.end());
    }

    // Irredundant inequalities of conv(verts), via the cone over (v, 1).
    static std::vector<Halfspace> facets_of_hull(std::size_t n, const QMat& verts) {
        QMat gens;
        for (const auto& v : verts) {
            QVec g = v;
            g.emplace_back(1);
            gens.push_back(g);
        }
        Cone c = Cone::from_generators(n + 1, gens);
        std::vector<Halfspace> out;
        auto push = [&](const IVec& f) {
            // <f', y> + f_n >= 0  <=>  <-f', y> <= f_n
            QVec a;
            for (std::size_t i = 0; i < n; ++i)
                a.emplace_back(-f[i]);
            out.push_back(Halfspace{a, Rat(f[n])});
        };
        for (const auto& f : c.facets)
            push(f);
        for (const auto& e : c.equations) {
            push(e);
            IVec m = e;
            for (auto& t : m)
                t = -t;
            push(m);
        }
        return out;
    }

    std::size_t n_ = 0;
    std::vector<Halfspace> hrep_;
    QMat vertices_;
    bool infeasible_ = false;
    bool pointed_ = false;
    bool bounded_ = false;
};

/// P_phi = {y : <v_rho, y> <= phi(v_rho) for every ray}.
inline Polytope polytope_of(const PLFunction& f) {
    std::vector<Halfspace> hs;
    QVec vals = f.values_on_rays();
    for (std::size_t r = 0; r < f.fan().num_rays(); ++r)
        hs.push_back(Halfspace{to_qvec(f.fan().ray(r)), vals[r]});
    return Polytope::from_hrep(f.fan().rank(), hs);
}

/// Delta_phi = {y : <v_rho, y> >= phi(v_rho) for every ray}.
inline Polytope polytope_of_concave(const PLFunction& f) {
    std::vector<Halfspace> hs;
    QVec vals = f.values_on_rays();
    for (std::size_t r = 0; r < f.fan().num_rays(); ++r) {
        QVec a = to_qvec(f.fan().ray(r));
        hs.push_back(Halfspace{scale(a, Rat(-1)), -vals[r]});
    }
    return Polytope::from_hrep(f.fan().rank(), hs);
}

/// phi_Delta(x) = min over vertices y of <x, y>, on the orthant fan split into argmin regions.
inline PLFunction support_function(const Polytope& p) {
    if (p.is_empty())
        throw std::invalid_argument("support_function: empty polytope");
    if (!p.is_bounded())
        throw std::invalid_argument("support_function: unbounded polytope");
    const QMat& verts = p.vertices();
    Fan base = product_p1_fan(p.ambient_dim());
    auto split = refine_by_argmin(base, [&](std::size_t) { return verts; });
    std::vector<QVec> parts;
    for (auto f : split.form)
        parts.push_back(verts[f]);
    return PLFunction(split.fan, parts);
}

inline bool is_concave(const PLFunction& f) {
    Polytope d = polytope_of_concave(f);
    if (d.is_empty())
        return false;
    return leq_pl(support_function(d), f);
}

/// Convex in the sense that phi is the maximum of its linear pieces: phi = max over P_phi.
inline bool is_convex(const PLFunction& f) {
    Polytope p = polytope_of(f);
    if (p.is_empty())
        return false;
    QMat neg;
    for (const auto& v : p.vertices())
        neg.push_back(scale(v, Rat(-1)));
    PLFunction upper = support_function(Polytope::from_vertices(f.fan().rank(), neg)).negated();
    return leq_pl(f, upper);
}

inline std::vector<IVec> lattice_points(const Polytope& p) {
    if (p.is_empty())
        return {};
    if (!p.is_bounded())
        throw std::invalid_argument("lattice_points: unbounded polytope");
    std::size_t n = p.ambient_dim();
    const QMat& verts = p.vertices();
    IVec lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat mn = verts[0][i], mx = verts[0][i];
        for (const auto& v : verts) {
            mn = std::min(mn, v[i]);
            mx = std::max(mx, v[i]);
        }
        lo[i] = to_ll(ceil_rat(mn));
        hi[i] = to_ll(floor_rat(mx));
        if (lo[i] > hi[i])
            return {};
    }
    std::vector<IVec> out;
    IVec cur = lo;
    while (true) {
        if (p.contains(to_qvec(cur)))
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
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace klytor
