#pragma once

// Tropical points of the linear ideal of a spanning set, over (R, min, +) and
// over the semifield of PL functions; reconstruction of bundles from them and
// the diagram matrix.

#include "klytor/klyachko.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace klytor {

// Idempotent semifields. Values are optional: nullopt is the absorbing infinity.

struct RealSemifield {
    using value_type = std::optional<Rat>;

    static value_type plus(const value_type& a, const value_type& b) {
        if (!a)
            return b;
        if (!b)
            return a;
        return std::min<Rat>(*a, *b);
    }
    static value_type times(const value_type& a, const value_type& b) {
        if (!a || !b)
            return std::nullopt;
        return Rat(*a + *b);
    }
    static bool equal(const value_type& a, const value_type& b) { return a == b; }
};

struct PLSemifield {
    using value_type = std::optional<PLFunction>;

    static value_type plus(const value_type& a, const value_type& b) {
        if (!a)
            return b;
        if (!b)
            return a;
        return min_pl(*a, *b);
    }
    static value_type times(const value_type& a, const value_type& b) {
        if (!a || !b)
            return std::nullopt;
        return add_pl(*a, *b);
    }
    static bool equal(const value_type& a, const value_type& b) {
        if (!a || !b)
            return !a && !b;
        return equal_pl(*a, *b);
    }
};

struct Circuit {
    std::vector<std::size_t> support;
    QVec coefficients;  // length s, first nonzero entry 1
};

/// Spanning set b_1..b_s of E = Q^r with the circuits of its column matroid.
struct LinearConfiguration {
    std::size_t rank = 0;
    QMat vectors;
    std::vector<Circuit> circuits;

    std::size_t size() const { return vectors.size(); }

    static LinearConfiguration make(QMat vectors);
};

/// Support-minimal linear relations, by support size then lexicographically.
inline std::vector<Circuit> circuits(const QMat& vectors, std::size_t r) {
    std::size_t s = vectors.size();
    std::vector<Circuit> out;
    for (std::size_t k = 1; k <= std::min(s, r + 1); ++k)
        for_each_subset(s, k, [&](const std::vector<std::size_t>& idx) {
            for (const auto& c : out)
                if (std::includes(idx.begin(), idx.end(), c.support.begin(), c.support.end()))
                    return true;
            QMat a(r, QVec(k));
            for (std::size_t t = 0; t < r; ++t)
                for (std::size_t i = 0; i < k; ++i)
                    a[t][i] = vectors[idx[i]][t];
            QMat ker = kernel(a, k);
            if (ker.size() != 1)
                return true;  // independent, or dependent through a smaller circuit
            const QVec& v = ker[0];
            if (std::any_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; }))
                return true;
            Circuit c{idx, zeros(s)};
            for (std::size_t i = 0; i < k; ++i)
                c.coefficients[idx[i]] = v[i] / v[0];
            out.push_back(std::move(c));
            return true;
        });
    return out;
}

inline LinearConfiguration LinearConfiguration::make(QMat vectors) {
    if (vectors.empty())
        throw std::invalid_argument("linear configuration: empty spanning set");
    std::size_t r = vectors[0].size();
    for (const auto& v : vectors) {
        require_same_size(v.size(), r, "linear configuration");
        if (is_zero(v))
            throw std::invalid_argument("linear configuration: spanning vectors must be nonzero");
    }
    if (klytor::rank(vectors, r) != r)
        throw std::invalid_argument("linear configuration: vectors do not span E");
    if (vectors.size() > 24)
        throw std::invalid_argument("linear configuration: at most 24 vectors supported");
    auto cs = klytor::circuits(vectors, r);
    return LinearConfiguration{r, std::move(vectors), std::move(cs)};
}

/// First (circuit, term) whose removal changes the sum over the circuit, if any:
/// tropical points are exactly the tuples where every term can be dropped.
template <class S>
std::optional<std::pair<std::size_t, std::size_t>> circuit_violation(const std::vector<typename S::value_type>& vals,
                                                                     const std::vector<Circuit>& circuits) {
    for (std::size_t c = 0; c < circuits.size(); ++c) {
        const auto& sup = circuits[c].support;
        typename S::value_type total = std::nullopt;
        for (auto i : sup)
            total = S::plus(total, vals[i]);
        for (auto j : sup) {
            typename S::value_type without = std::nullopt;
            for (auto i : sup)
                if (i != j)
                    without = S::plus(without, vals[i]);
            if (!S::equal(total, without))
                return std::pair{c, j};
        }
    }
    return std::nullopt;
}

class NotATropicalPoint : public std::runtime_error {
public:
    NotATropicalPoint(const std::string& what, std::optional<IVec> witness, std::optional<std::size_t> circuit)
        : std::runtime_error(what), witness_(std::move(witness)), circuit_(circuit) {}
    const std::optional<IVec>& witness() const { return witness_; }
    const std::optional<std::size_t>& circuit() const { return circuit_; }

private:
    std::optional<IVec> witness_;
    std::optional<std::size_t> circuit_;
};

/// Tuple of integral PL functions, with the common refinement of their fans and
/// each function's linear parts on it.
class TropPoint {
public:
    static TropPoint make(std::vector<PLFunction> phis) {
        if (phis.empty())
            throw std::invalid_argument("tropical point: empty tuple");
        Fan common = phis[0].fan();
        for (const auto& p : phis) {
            if (!p.is_integral())
                throw std::invalid_argument("tropical point: entries must be integral PL functions");
            common = common_refinement(common, p.fan());
        }
        std::vector<PLFunction> on_common;
        for (const auto& p : phis)
            on_common.push_back(p.restrict_to(common));
        return TropPoint(std::move(phis), std::move(common), std::move(on_common));
    }

    std::size_t size() const { return phis_.size(); }
    const std::vector<PLFunction>& functions() const { return phis_; }
    const PLFunction& at(std::size_t i) const { return phis_.at(i); }
    const Fan& common_fan() const { return common_; }
    /// Linear part of the i-th function on maximal cone c of the common fan.
    const QVec& part(std::size_t i, std::size_t c) const { return on_common_.at(i).linear_part(c); }

    QVec eval(const QVec& x) const {
        QVec out;
        for (const auto& p : phis_)
            out.push_back(p.eval(x));
        return out;
    }

private:
    TropPoint(std::vector<PLFunction> phis, Fan common, std::vector<PLFunction> on_common)
        : phis_(std::move(phis)), common_(std::move(common)), on_common_(std::move(on_common)) {}
    std::vector<PLFunction> phis_;
    Fan common_;
    std::vector<PLFunction> on_common_;
};

namespace detail {

inline IVec interior_lattice_point(const Fan& f, std::size_t cone) {
    QVec x = zeros(f.rank());
    for (auto r : f.maximal_cones()[cone])
        x = add(x, to_qvec(f.ray(r)));
    return primitive(x);
}

/// A lattice point where the two functions differ, if any.
inline std::optional<IVec> difference_point(const PLFunction& a, const PLFunction& b) {
    auto r = common_refinement_with_parents(a.fan(), b.fan());
    for (std::size_t i = 0; i < r.fan.num_cones(); ++i) {
        if (a.linear_part(r.parent1[i]) == b.linear_part(r.parent2[i]))
            continue;
        // prefer an interior point; some ray always separates the two forms
        std::vector<IVec> candidates{interior_lattice_point(r.fan, i)};
        for (auto ray : r.fan.maximal_cones()[i])
            candidates.push_back(r.fan.ray(ray));
        for (const auto& x : candidates)
            if (a.eval(x) != b.eval(x))
                return x;
    }
    return std::nullopt;
}

inline std::string describe_values(const QVec& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace detail

// Real points.

struct RealPointValuation {
    VSValuation valuation;
    std::vector<std::size_t> basis;
    bool boundary = false;  // more than one basis of maximal weight
};

/// The valuation with v(b_i) = a_i. Under the min convention it is adapted to a
/// maximal-weight basis; bases are tried in decreasing weight until one reproduces
/// every a_j.
inline RealPointValuation real_point_valuation(const QVec& a, const LinearConfiguration& cfg) {
    require_same_size(a.size(), cfg.size(), "real_point_to_valuation");
    std::vector<RealSemifield::value_type> vals(a.begin(), a.end());
    if (auto v = circuit_violation<RealSemifield>(vals, cfg.circuits)) {
        throw NotATropicalPoint("point " + detail::describe_values(a) + " is not tropical: circuit " +
                                    std::to_string(v->first) + " attains its minimum only at term " +
                                    std::to_string(v->second),
                                std::nullopt, v->first);
    }
    std::size_t r = cfg.rank;
    std::vector<std::pair<Rat, std::vector<std::size_t>>> bases;
    for_each_subset(cfg.size(), r, [&](const std::vector<std::size_t>& idx) {
        QMat m;
        Rat w = 0;
        for (auto i : idx) {
            m.push_back(cfg.vectors[i]);
            w += a[i];
        }
        if (rank(m, r) == r)
            bases.emplace_back(w, idx);
        return true;
    });
    std::stable_sort(bases.begin(), bases.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    std::size_t top = 0;
    while (top < bases.size() && bases[top].first == bases[0].first)
        ++top;
    for (const auto& [w, idx] : bases) {
        QMat frame;
        QVec vals_b;
        for (auto i : idx) {
            frame.push_back(cfg.vectors[i]);
            vals_b.push_back(a[i]);
        }
        auto val = valuation_from_frame(frame, vals_b);
        bool ok = true;
        for (std::size_t j = 0; j < cfg.size() && ok; ++j)
            ok = valuation_apply(val, cfg.vectors[j]) == a[j];
        if (ok)
            return RealPointValuation{std::move(val), idx, top > 1};
    }
    throw std::logic_error("real_point_to_valuation: circuit test passed but no basis reproduces the point");
}

inline VSValuation real_point_to_valuation(const QVec& a, const LinearConfiguration& cfg) {
    return real_point_valuation(a, cfg).valuation;
}

// PL points.

struct TropCheck {
    bool member = false;
    std::optional<IVec> witness;
    std::optional<std::size_t> circuit;
    std::string reason;
};

/// Circuit test over the PL semifield, decided cone by cone on the common fan:
/// on every argmin region of a circuit's forms the minimal form must occur twice.
/// Returns a lattice point where the minimum is attained only once.
inline TropCheck circuit_check(const TropPoint& pt, const LinearConfiguration& cfg) {
    require_same_size(pt.size(), cfg.size(), "trop_membership");
    const Fan& f = pt.common_fan();
    for (std::size_t c = 0; c < f.num_cones(); ++c)
        for (std::size_t k = 0; k < cfg.circuits.size(); ++k) {
            const auto& sup = cfg.circuits[k].support;
            std::vector<QVec> forms;
            for (auto i : sup)
                forms.push_back(pt.part(i, c));
            for (const auto& reg : argmin_regions(f.cone(c), forms)) {
                if (std::count(forms.begin(), forms.end(), forms[reg.form]) > 1)
                    continue;
                IVec w = primitive(reg.cone.interior_point());
                std::string reason = "circuit " + std::to_string(k) + " attains its minimum only at term " +
                                     std::to_string(sup[reg.form]) + " at x = " + format_vec(w);
                return TropCheck{false, w, k, reason};
            }
        }
    return TropCheck{true, std::nullopt, std::nullopt, ""};
}

/// Common refinement of the domains, split further until the values are
/// totally ordered on every cone.
inline Fan order_refinement(const TropPoint& pt) {
    Fan f = pt.common_fan();
    for (std::size_t i = 0; i < pt.size(); ++i)
        for (std::size_t j = i + 1; j < pt.size(); ++j) {
            if (pt.at(i).fan().same_cones(pt.at(j).fan()) && pt.at(i).linear_parts() == pt.at(j).linear_parts())
                continue;
            auto pi = pt.at(i).restrict_to(f), pj = pt.at(j).restrict_to(f);
            f = refine_by_argmin(f, [&](std::size_t c) {
                    return std::vector<QVec>{pi.linear_part(c), pj.linear_part(c)};
                }).fan;
        }
    return f;
}

namespace detail {

/// Ray filtrations from the real points at the ray generators, assembled and
/// verified against the input tuple. Throws NotATropicalPoint on any failure.
inline KlyachkoBundle reconstruct_unchecked(const TropPoint& pt, const LinearConfiguration& cfg) {
    require_same_size(pt.size(), cfg.size(), "reconstruct_valuation");
    Fan f = order_refinement(pt);
    std::vector<Filtration> fs;
    for (std::size_t r = 0; r < f.num_rays(); ++r) {
        try {
            fs.push_back(valuation_to_filtration(real_point_to_valuation(pt.eval(to_qvec(f.ray(r))), cfg)));
        } catch (const NotATropicalPoint& e) {
            throw NotATropicalPoint(std::string(e.what()) + " at x = " + format_vec(f.ray(r)), f.ray(r), e.circuit());
        }
    }
    std::optional<KlyachkoBundle> b;
    try {
        b = build_bundle(f, fs);
    } catch (const IncompatibleFiltrations& e) {
        IVec w = interior_lattice_point(f, e.cone());
        throw NotATropicalPoint("no adapted frame on the cone through " + format_vec(w), w, std::nullopt);
    }
    for (std::size_t i = 0; i < cfg.size(); ++i)
        if (auto w = difference_point(pl_valuation(*b, cfg.vectors[i]), pt.at(i)))
            throw NotATropicalPoint("reconstructed valuation of b_" + std::to_string(i) + " differs at x = " +
                                        format_vec(*w),
                                    w, std::nullopt);
    return *b;
}

}  // namespace detail

/// Bundle (on a refinement of the common fan) whose PL valuation takes the
/// values of the tuple on the spanning set.
inline KlyachkoBundle reconstruct_valuation(const TropPoint& pt, const LinearConfiguration& cfg) {
    auto fast = circuit_check(pt, cfg);
    if (!fast.member)
        throw NotATropicalPoint(fast.reason, fast.witness, fast.circuit);
    return detail::reconstruct_unchecked(pt, cfg);
}

/// Circuit test and reconstruction, which must agree.
inline TropCheck trop_check(const TropPoint& pt, const LinearConfiguration& cfg) {
    auto fast = circuit_check(pt, cfg);
    bool rebuilt = true;
    std::string why;
    try {
        detail::reconstruct_unchecked(pt, cfg);
    } catch (const NotATropicalPoint& e) {
        rebuilt = false;
        why = e.what();
    }
    if (fast.member != rebuilt)
        throw std::logic_error("trop_membership: circuit test and reconstruction disagree" +
                               (why.empty() ? std::string() : ": " + why));
    return fast;
}

inline bool trop_membership(const TropPoint& pt, const LinearConfiguration& cfg) { return trop_check(pt, cfg).member; }

inline TropPoint tropical_point_of(const KlyachkoBundle& b, const LinearConfiguration& cfg) {
    require_same_size(cfg.rank, b.rank(), "tropical_point_of");
    std::vector<PLFunction> phis;
    for (const auto& v : cfg.vectors)
        phis.push_back(pl_valuation(b, v));
    return TropPoint::make(std::move(phis));
}

// Diagrams.

class DiagramError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// rows[rho][i] = value of b_i at the generator of rho.
struct Diagram {
    std::vector<IVec> rows;
    friend bool operator==(const Diagram&, const Diagram&) = default;
};

inline Diagram diagram(const KlyachkoBundle& b, const LinearConfiguration& cfg) {
    require_same_size(cfg.rank, b.rank(), "diagram");
    Diagram d;
    for (std::size_t r = 0; r < b.fan().num_rays(); ++r) {
        auto val = phi_eval(b, b.fan().ray(r));
        IVec row;
        for (const auto& v : cfg.vectors) {
            Rat x = *valuation_apply(val, v);
            if (!is_integral(x))
                throw DiagramError("diagram: non-integral value");
            row.push_back(to_ll(x));
        }
        d.rows.push_back(row);
    }
    return d;
}

inline Diagram diagram(const TropPoint& pt, const Fan& fan) {
    Diagram d;
    for (std::size_t r = 0; r < fan.num_rays(); ++r) {
        QVec vals = pt.eval(to_qvec(fan.ray(r)));
        IVec row;
        for (const auto& x : vals) {
            if (!is_integral(x))
                throw DiagramError("diagram: non-integral value");
            row.push_back(to_ll(x));
        }
        d.rows.push_back(row);
    }
    return d;
}

/// Ray filtrations read off the rows; every maximal cone must then carry a frame
/// drawn from the spanning set.
inline KlyachkoBundle bundle_from_diagram(const LinearConfiguration& cfg, const Fan& fan, const Diagram& d) {
    if (d.rows.size() != fan.num_rays())
        throw DiagramError("diagram: one row per ray expected");
    std::vector<Filtration> fs;
    for (std::size_t r = 0; r < fan.num_rays(); ++r) {
        require_same_size(d.rows[r].size(), cfg.size(), "bundle_from_diagram");
        try {
            fs.push_back(valuation_to_filtration(real_point_to_valuation(to_qvec(d.rows[r]), cfg)));
        } catch (const NotATropicalPoint& e) {
            throw NotATropicalPoint("row " + std::to_string(r) + ": " + e.what(), fan.ray(r), e.circuit());
        }
    }
    std::optional<KlyachkoBundle> b;
    try {
        b = build_bundle(fan, fs);
    } catch (const IncompatibleFiltrations& e) {
        throw DiagramError("diagram: cone " + fan.describe_cone(e.cone()) + " has no adapted frame");
    }
    for (std::size_t c = 0; c < fan.num_cones(); ++c) {
        bool found = !for_each_subset(cfg.size(), cfg.rank, [&](const std::vector<std::size_t>& idx) {
            QMat frame;
            for (auto i : idx)
                frame.push_back(cfg.vectors[i]);
            for (auto r : fan.maximal_cones()[c])
                if (!is_adapted(frame, fs[r]))
                    return true;
            return false;
        });
        if (!found)
            throw DiagramError("diagram: no frame from the spanning set is adapted on cone " + fan.describe_cone(c));
    }
    if (!(diagram(*b, cfg) == d))
        throw std::logic_error("bundle_from_diagram: diagram does not round trip");
    return *b;
}

}  // namespace klytor
