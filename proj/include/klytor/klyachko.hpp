#pragma once

// Klyachko data of toric vector bundles: decreasing filtrations on each ray,
// compatible frames on maximal cones, the piecewise linear map Phi and the
// piecewise linear valuation v(e).

#include "klytor/plfunc.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace klytor {

struct Breakpoint {
    Rat level;
    Subspace space;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Decreasing filtration E_i of Q^r stored at its jumps: levels strictly
/// decreasing, subspaces strictly increasing, the last one the whole space.
/// E_i = E below the lowest level and {0} above the highest.
class Filtration {
public:
    Filtration() = default;

    static Filtration make(std::size_t r, std::vector<Breakpoint> bps) {
        std::sort(bps.begin(), bps.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.level > b.level; });
        Filtration f;
        f.r_ = r;
        for (auto& bp : bps) {
            require_same_size(bp.space.ambient_dim(), r, "filtration");
            if (!f.bps_.empty() && f.bps_.back().level == bp.level)
                throw std::invalid_argument("filtration: repeated level " + to_string(bp.level));
            if (bp.space.is_zero_space())
                continue;
            if (!f.bps_.empty()) {
                if (!bp.space.contains(f.bps_.back().space))
                    throw std::invalid_argument("filtration: subspaces must increase as the level decreases");
                if (bp.space == f.bps_.back().space)
                    continue;  // no jump here; the higher level already covers it
            }
            f.bps_.push_back(std::move(bp));
        }
        if (f.bps_.empty() || !f.bps_.back().space.is_full())
            throw std::invalid_argument("filtration: union must be the whole space");
        return f;
    }

    /// Trivial filtration jumping from E to {0} above `level`.
    static Filtration trivial(std::size_t r, Rat level = 0) {
        return make(r, {Breakpoint{level, Subspace::full(r)}});
    }

    /// E_i = span of frame vectors with value >= i.
    static Filtration from_frame(const QMat& frame, const QVec& values) {
        if (frame.empty())
            throw std::invalid_argument("filtration: empty frame");
        std::size_t r = frame[0].size();
        if (frame.size() != r || rank(frame, r) != r)
            throw std::invalid_argument("filtration: frame is not a basis");
        require_same_size(values.size(), r, "from_frame values");
        std::set<Rat, std::greater<>> levels(values.begin(), values.end());
        std::vector<Breakpoint> bps;
        for (const auto& a : levels) {
            QMat gens;
            for (std::size_t j = 0; j < r; ++j)
                if (values[j] >= a)
                    gens.push_back(frame[j]);
            bps.push_back(Breakpoint{a, Subspace::span(gens, r)});
        }
        return make(r, bps);
    }

    std::size_t ambient_dim() const { return r_; }
    const std::vector<Breakpoint>& breakpoints() const { return bps_; }
    std::size_t size() const { return bps_.size(); }

    /// E_i for any rational threshold i.
    Subspace at(const Rat& i) const {
        const Subspace* best = nullptr;
        for (const auto& bp : bps_)
            if (bp.level >= i)
                best = &bp.space;
        return best ? *best : Subspace::zero(r_);
    }

    /// max{i : e in E_i}; nullopt for e = 0.
    std::optional<Rat> value(const QVec& e) const {
        require_same_size(e.size(), r_, "filtration value");
        if (is_zero(e))
            return std::nullopt;
        for (const auto& bp : bps_)
            if (bp.space.contains(e))
                return bp.level;
        return bps_.back().level;
    }

    bool is_integral() const {
        for (const auto& bp : bps_)
            if (!klytor::is_integral(bp.level))
                return false;
        return true;
    }

    friend bool operator==(const Filtration&, const Filtration&) = default;

private:
    std::size_t r_ = 0;
    std::vector<Breakpoint> bps_;
};

/// Valuation v(e) = a_j for the smallest flag member S_j containing e.
struct VSValuation {
    Flag flag;
    std::vector<Rat> values;

    static VSValuation make(Flag flag, std::vector<Rat> values) {
        if (flag.subspaces.size() != values.size())
            throw std::invalid_argument("valuation: one value per flag member");
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            if (values[i] <= values[i + 1])
                throw std::invalid_argument("valuation: values must strictly decrease");
        return VSValuation{std::move(flag), std::move(values)};
    }

    std::size_t ambient_dim() const { return flag.subspaces.back().ambient_dim(); }
    friend bool operator==(const VSValuation&, const VSValuation&) = default;
};

inline VSValuation filtration_to_valuation(const Filtration& f) {
    Flag flag;
    std::vector<Rat> vals;
    for (const auto& bp : f.breakpoints()) {
        flag.subspaces.push_back(bp.space);
        vals.push_back(bp.level);
    }
    return VSValuation{flag, vals};
}

inline Filtration valuation_to_filtration(const VSValuation& v) {
    std::vector<Breakpoint> bps;
    for (std::size_t i = 0; i < v.values.size(); ++i)
        bps.push_back(Breakpoint{v.values[i], v.flag.subspaces[i]});
    return Filtration::make(v.ambient_dim(), bps);
}

inline VSValuation valuation_from_frame(const QMat& frame, const QVec& values) {
    return filtration_to_valuation(Filtration::from_frame(frame, values));
}

inline std::optional<Rat> valuation_apply(const VSValuation& v, const QVec& e) {
    require_same_size(e.size(), v.ambient_dim(), "valuation_apply");
    if (is_zero(e))
        return std::nullopt;
    for (std::size_t j = 0; j < v.values.size(); ++j)
        if (v.flag.subspaces[j].contains(e))
            return v.values[j];
    return v.values.back();
}

inline std::optional<Rat> valuation_apply(const Filtration& f, const QVec& e) { return f.value(e); }

/// v <= w pointwise: each {v >= a_j} lies in {w >= a_j}.
inline bool leq_valuation(const VSValuation& v, const VSValuation& w) {
    require_same_size(v.ambient_dim(), w.ambient_dim(), "leq_valuation");
    Filtration fw = valuation_to_filtration(w);
    for (std::size_t j = 0; j < v.values.size(); ++j)
        if (!fw.at(v.values[j]).contains(v.flag.subspaces[j]))
            return false;
    return true;
}

/// A frame adapted to several filtrations, one representative vector per line,
/// with each vector's value under every input filtration.
struct CommonFrame {
    QMat vectors;
    std::vector<QVec> profile;  // profile[j][k] = value of vectors[j] in filtration k
};

/// Checks E^k_a = span{frame vectors with value >= a} for every filtration k and level a.
inline bool is_adapted(const QMat& frame, const Filtration& f) {
    std::size_t r = f.ambient_dim();
    if (frame.size() != r || rank(frame, r) != r)
        return false;
    for (const auto& bp : f.breakpoints()) {
        QMat gens;
        for (const auto& v : frame)
            if (*f.value(v) >= bp.level)
                gens.push_back(v);
        if (!(Subspace::span(gens, r) == bp.space))
            return false;
    }
    return true;
}

/// Frame adapted to all inputs, or nullopt. For each multi-index a of jump levels,
/// I_a = intersection of the members E^k_{a_k} and I_{>a} = sum of the I_{a+e_k};
/// frame vectors of profile a form a complement of I_{>a} in I_a.
inline std::optional<CommonFrame> common_frame(const std::vector<Filtration>& fs) {
    if (fs.empty())
        throw std::invalid_argument("common_frame: no filtrations");
    std::size_t r = fs[0].ambient_dim();
    for (const auto& f : fs)
        require_same_size(f.ambient_dim(), r, "common_frame");
    std::size_t m = fs.size();

    // nonzero I_a, keyed by breakpoint indices (0 = highest level)
    std::map<std::vector<std::size_t>, Subspace> inter;
    std::vector<std::size_t> idx(m);
    std::function<void(std::size_t, const Subspace&)> dfs = [&](std::size_t k, const Subspace& cur) {
        if (cur.is_zero_space())
            return;
        if (k == m) {
            inter.emplace(idx, cur);
            return;
        }
        for (std::size_t j = 0; j < fs[k].size(); ++j) {
            idx[k] = j;
            dfs(k + 1, intersect(cur, fs[k].breakpoints()[j].space));
        }
    };
    dfs(0, Subspace::full(r));

    CommonFrame out;
    for (const auto& [a, ia] : inter) {
        Subspace higher = Subspace::zero(r);
        for (std::size_t k = 0; k < m; ++k) {
            if (a[k] == 0)
                continue;
            auto b = a;
            --b[k];
            auto it = inter.find(b);
            if (it != inter.end())
                higher = sum(higher, it->second);
        }
        for (auto& v : complement_in(ia, higher)) {
            QVec prof;
            for (std::size_t k = 0; k < m; ++k)
                prof.push_back(fs[k].breakpoints()[a[k]].level);
            out.vectors.push_back(v);
            out.profile.push_back(prof);
            if (out.vectors.size() > r)
                return std::nullopt;
        }
    }
    if (out.vectors.size() != r || rank(out.vectors, r) != r)
        return std::nullopt;
    for (std::size_t k = 0; k < m; ++k) {
        if (!is_adapted(out.vectors, fs[k]))
            return std::nullopt;
        for (std::size_t j = 0; j < r; ++j)
            if (*fs[k].value(out.vectors[j]) != out.profile[j][k])
                return std::nullopt;
    }
    return out;
}

class IncompatibleFiltrations : public std::runtime_error {
public:
    IncompatibleFiltrations(std::size_t cone, const std::string& what) : std::runtime_error(what), cone_(cone) {}
    std::size_t cone() const { return cone_; }

private:
    std::size_t cone_;
};

/// Frame L_sigma with one character u per line: <u, v_rho> is the line's value at rho.
struct CompatibleStructure {
    std::size_t cone = 0;
    QMat frame;
    std::vector<QVec> characters;
};

class KlyachkoBundle {
public:
    KlyachkoBundle() = default;

    const Fan& fan() const { return fan_; }
    std::size_t rank() const { return r_; }
    const std::vector<Filtration>& filtrations() const { return filts_; }
    const Filtration& filtration(std::size_t ray) const { return filts_.at(ray); }
    const std::vector<CompatibleStructure>& compat() const { return compat_; }
    const CompatibleStructure& compat(std::size_t cone) const { return compat_.at(cone); }

    /// All jump levels integral and every character in M.
    bool is_integral() const { return integral_; }

    /// Canonical representatives of u(sigma) in M_sigma (requires integral characters).
    std::vector<IVec> character_classes(std::size_t cone) const {
        std::vector<IVec> out;
        for (const auto& u : compat_.at(cone).characters)
            out.push_back(class_in_M_sigma(to_ivec(u), fan_.cone(cone)));
        std::sort(out.begin(), out.end());
        return out;
    }

    friend KlyachkoBundle build_bundle(const Fan& fan, std::vector<Filtration> filtrations);

private:
    Fan fan_;
    std::size_t r_ = 0;
    std::vector<Filtration> filts_;
    std::vector<CompatibleStructure> compat_;
    bool integral_ = true;
};

inline KlyachkoBundle build_bundle(const Fan& fan, std::vector<Filtration> filtrations) {
    if (filtrations.size() != fan.num_rays())
        throw std::invalid_argument("build_bundle: need one filtration per ray (" + std::to_string(fan.num_rays()) +
                                    "), got " + std::to_string(filtrations.size()));
    if (filtrations.empty())
        throw std::invalid_argument("build_bundle: fan without rays");
    KlyachkoBundle b;
    b.fan_ = fan;
    b.r_ = filtrations[0].ambient_dim();
    for (const auto& f : filtrations) {
        require_same_size(f.ambient_dim(), b.r_, "build_bundle");
        b.integral_ = b.integral_ && f.is_integral();
    }
    b.filts_ = std::move(filtrations);
    std::size_t n = fan.rank();
    for (std::size_t i = 0; i < fan.num_cones(); ++i) {
        const auto& rays = fan.maximal_cones()[i];
        std::vector<Filtration> local;
        for (auto r : rays)
            local.push_back(b.filts_[r]);
        auto cf = local.empty() ? std::optional<CommonFrame>{} : common_frame(local);
        if (!cf)
            throw IncompatibleFiltrations(
                i, "filtrations on " + fan.describe_cone(i) +
                       " admit no common adapted frame; a finer fan (subdivide_by_hyperplanes) may fix this");
        CompatibleStructure cs;
        cs.cone = i;
        cs.frame = cf->vectors;
        QMat rows;
        for (auto r : rays)
            rows.push_back(to_qvec(fan.ray(r)));
        for (const auto& prof : cf->profile) {
            auto u = solve_rows(rows, prof, n);
            if (!u)
                throw IncompatibleFiltrations(i, "no character realizes the jump levels on " + fan.describe_cone(i));
            for (const auto& x : *u)
                b.integral_ = b.integral_ && klytor::is_integral(x);
            cs.characters.push_back(*u);
        }
        b.compat_.push_back(std::move(cs));
    }
    return b;
}

/// Phi(x): the valuation adapted to L_sigma with line values <u_j, x>, sigma containing x.
inline VSValuation phi_eval(const KlyachkoBundle& b, const QVec& x) {
    auto c = b.fan().find_cone(x);
    if (!c)
        throw std::domain_error("phi_eval: point outside the support of the fan");
    const auto& cs = b.compat(*c);
    QVec vals;
    for (const auto& u : cs.characters)
        vals.push_back(dot(u, x));
    return valuation_from_frame(cs.frame, vals);
}
inline VSValuation phi_eval(const KlyachkoBundle& b, const IVec& x) { return phi_eval(b, to_qvec(x)); }

/// v(e)(x) = Phi(x)(e): per cone the minimum of <u_j, x> over lines where e has a component.
inline PLFunction pl_valuation(const KlyachkoBundle& b, const QVec& e) {
    require_same_size(e.size(), b.rank(), "pl_valuation");
    if (is_zero(e))
        throw std::invalid_argument("pl_valuation: e = 0 has valuation infinity");
    std::vector<std::vector<QVec>> forms(b.fan().num_cones());
    for (std::size_t i = 0; i < forms.size(); ++i) {
        const auto& cs = b.compat(i);
        auto c = solve_combination(cs.frame, e);
        for (std::size_t j = 0; j < c->size(); ++j)
            if ((*c)[j] != 0)
                forms[i].push_back(cs.characters[j]);
    }
    auto split = refine_by_argmin(b.fan(), [&](std::size_t i) { return forms[i]; });
    std::vector<QVec> parts;
    for (std::size_t k = 0; k < split.fan.num_cones(); ++k)
        parts.push_back(forms[split.parent[k]][split.form[k]]);
    return PLFunction(split.fan, parts);
}

/// A frame adapted to every ray filtration at once, if the bundle splits equivariantly.
inline std::optional<CommonFrame> is_equivariantly_split(const KlyachkoBundle& b) {
    return common_frame(b.filtrations());
}

struct CurvePair {
    std::size_t line = 0;        // index into the frame of sigma
    std::size_t line_prime = 0;  // index into the frame of sigma'
    QVec u;                      // character on sigma
    QVec u_prime;                // matched character on sigma'
    Rat degree;                  // <u - u', v_tau>
};

struct CurveSplitting {
    WallData wall;
    std::vector<CurvePair> pairs;

    std::vector<Rat> degrees() const {
        std::vector<Rat> d;
        for (const auto& p : pairs)
            d.push_back(p.degree);
        std::sort(d.begin(), d.end());
        return d;
    }
};

/// Splitting type of the bundle restricted to the invariant curve of the wall tau.
/// Lines of sigma and sigma' with the same tau-profile p both give complements of
/// I_{>p} in I_p; on the quotient each side induces a flag (ordered by <u, v_tau>),
/// and a common frame of the two flags pairs the lines.
/// `v_tau` may override the wall's choice; any v with <w_tau, v> = 1 gives the same degrees.
inline CurveSplitting curve_splitting(const KlyachkoBundle& b, std::vector<std::size_t> tau,
                                      std::optional<IVec> v_tau = std::nullopt) {
    CurveSplitting out;
    out.wall = wall_data(b.fan(), std::move(tau));
    if (v_tau) {
        require_same_size(v_tau->size(), b.fan().rank(), "curve_splitting v_tau");
        if (dot(to_qvec(*v_tau), out.wall.w_tau) != 1)
            throw std::invalid_argument("curve_splitting: v_tau must pair to 1 with w_tau");
        out.wall.v_tau = *v_tau;
    }
    const auto& w = out.wall;
    std::size_t r = b.rank();
    const auto& cs = b.compat(w.sigma);
    const auto& cp = b.compat(w.sigma_prime);
    QVec vt = to_qvec(w.v_tau);

    auto profile = [&](const QVec& line) {
        QVec p;
        for (auto t : w.tau)
            p.push_back(*b.filtration(t).value(line));
        return p;
    };
    std::map<QVec, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
    for (std::size_t j = 0; j < r; ++j)
        groups[profile(cs.frame[j])].first.push_back(j);
    for (std::size_t j = 0; j < r; ++j)
        groups[profile(cp.frame[j])].second.push_back(j);

    for (const auto& [p, sides] : groups) {
        const auto& [ls, lp] = sides;
        if (ls.size() != lp.size())
            throw std::logic_error("curve_splitting: line profiles on the two sides of the wall differ");
        std::size_t d = ls.size();
        // I_{>p}: sum over tau rays of the next-higher member, intersected with the rest
        Subspace higher = Subspace::zero(r);
        for (std::size_t k = 0; k < w.tau.size(); ++k) {
            Subspace s = Subspace::full(r);
            for (std::size_t l = 0; l < w.tau.size(); ++l) {
                const auto& f = b.filtration(w.tau[l]);
                if (l != k) {
                    s = intersect(s, f.at(p[l]));
                    continue;
                }
                const Breakpoint* next = nullptr;
                for (const auto& bp : f.breakpoints())
                    if (bp.level > p[l])
                        next = &bp;
                s = intersect(s, next ? next->space : Subspace::zero(r));
            }
            higher = sum(higher, s);
        }
        QMat cols;
        for (auto j : ls)
            cols.push_back(cs.frame[j]);
        QMat hb = higher.basis();
        cols.insert(cols.end(), hb.begin(), hb.end());
        // sigma' lines in quotient coordinates
        QMat qframe_prime;
        for (auto j : lp) {
            auto c = solve_combination(cols, cp.frame[j]);
            if (!c)
                throw std::logic_error("curve_splitting: sigma' line outside I_p");
            qframe_prime.push_back(QVec(c->begin(), c->begin() + static_cast<long>(d)));
        }
        QMat qframe;
        QVec alpha, beta;
        for (std::size_t i = 0; i < d; ++i) {
            qframe.push_back(unit(d, i));
            alpha.push_back(dot(cs.characters[ls[i]], vt));
        }
        for (auto j : lp)
            beta.push_back(dot(cp.characters[j], vt));
        auto fa = Filtration::from_frame(qframe, alpha);
        auto fb = Filtration::from_frame(qframe_prime, beta);
        auto cf = common_frame({fa, fb});
        if (!cf)
            throw std::logic_error("curve_splitting: two flags without a common frame");
        std::vector<bool> used_s(d, false), used_p(d, false);
        for (const auto& prof : cf->profile) {
            std::size_t i = 0, j = 0;
            while (i < d && (used_s[i] || alpha[i] != prof[0]))
                ++i;
            while (j < d && (used_p[j] || beta[j] != prof[1]))
                ++j;
            if (i == d || j == d)
                throw std::logic_error("curve_splitting: unmatched line");
            used_s[i] = used_p[j] = true;
            const QVec& u = cs.characters[ls[i]];
            const QVec& up = cp.characters[lp[j]];
            out.pairs.push_back(CurvePair{ls[i], lp[j], u, up, dot(sub(u, up), vt)});
        }
    }
    return out;
}

/// Same bundle on a refinement; new rays carry the filtration of Phi(v_rho).
inline KlyachkoBundle refine_bundle(const KlyachkoBundle& b, const Fan& finer) {
    if (!refines(finer, b.fan()))
        throw FanError("refine_bundle: target fan is not a refinement");
    std::vector<Filtration> fs;
    for (const auto& ray : finer.rays()) {
        auto old = b.fan().ray_index(ray);
        fs.push_back(old ? b.filtration(*old) : valuation_to_filtration(phi_eval(b, ray)));
    }
    return build_bundle(finer, fs);
}

// Standard examples.

/// Tangent bundle of P^n: ray e_i carries span(e_i) at level 1 and the last
/// ray carries span(-sum e_i); E at level 0 everywhere.
inline KlyachkoBundle example_tangent_pn(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("example_tangent_pn: n >= 1");
    Fan f = projective_space_fan(n);
    std::vector<Filtration> fs;
    for (std::size_t i = 0; i <= n; ++i) {
        QVec v = to_qvec(f.ray(i));
        fs.push_back(Filtration::make(n, {Breakpoint{Rat(1), Subspace::line(v)}, Breakpoint{Rat(0), Subspace::full(n)}}));
    }
    return build_bundle(f, fs);
}

/// Line bundle with jump level c_rho on each ray.
inline KlyachkoBundle line_bundle(const Fan& f, const QVec& c) {
    require_same_size(c.size(), f.num_rays(), "line_bundle");
    std::vector<Filtration> fs;
    for (const auto& x : c)
        fs.push_back(Filtration::trivial(1, x));
    return build_bundle(f, fs);
}

/// Direct sum of line bundles: levels[rho][k] is the jump of the k-th summand at rho.
inline KlyachkoBundle split_bundle(const Fan& f, const std::vector<QVec>& levels) {
    require_same_size(levels.size(), f.num_rays(), "split_bundle");
    std::size_t r = levels.at(0).size();
    QMat std_frame;
    for (std::size_t k = 0; k < r; ++k)
        std_frame.push_back(unit(r, k));
    std::vector<Filtration> fs;
    for (const auto& c : levels)
        fs.push_back(Filtration::from_frame(std_frame, c));
    return build_bundle(f, fs);
}

}  // namespace klytor
