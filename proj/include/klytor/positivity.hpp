#pragma once

// Nef, ample and globally generated bundles: wall degrees for the first two,
// per-cone polytope conditions for the last, with the valuation-level
// inequalities T(x) <= Phi(x) and S_sigma(x) <= Phi(x) as cross-checks.

#include "klytor/klyachko.hpp"

#include <cstdint>
#include <random>

namespace klytor {

struct WallDegrees {
    std::vector<std::size_t> tau;
    std::vector<Rat> degrees;
};

/// Generators e_i of a frame of sigma with u_{sigma,i} in P_{v(e_i)}.
struct ConeCertificate {
    std::size_t cone = 0;
    bool ok = false;
    QMat generators;
    std::vector<QVec> characters;
};

struct PositivityReport {
    bool nef = false;
    bool ample = false;
    bool globally_generated = false;
    bool buildingwise_convex = false;
    bool fanwise_convex = false;
    std::vector<WallDegrees> walls;
    std::vector<ConeCertificate> certificates;
};

namespace detail {

inline void require_positivity_input(const KlyachkoBundle& b) {
    if (!b.fan().is_complete())
        throw std::invalid_argument("positivity requires a complete fan");
    if (!b.is_integral())
        throw std::invalid_argument("positivity requires integral filtration data");
}

/// Valuation adapted to `frame` with line values <u_j, x>.
inline VSValuation linear_extension(const QMat& frame, const std::vector<QVec>& chars, const QVec& x) {
    QVec vals;
    for (const auto& u : chars)
        vals.push_back(dot(u, x));
    return valuation_from_frame(frame, vals);
}

}  // namespace detail

inline std::vector<WallDegrees> wall_degrees(const KlyachkoBundle& b) {
    detail::require_positivity_input(b);
    std::vector<WallDegrees> out;
    for (const auto& w : b.fan().walls())
        out.push_back(WallDegrees{w.rays, curve_splitting(b, w.rays).degrees()});
    return out;
}

inline bool is_nef(const KlyachkoBundle& b) {
    for (const auto& w : wall_degrees(b))
        for (const auto& a : w.degrees)
            if (a < 0)
                return false;
    return true;
}

inline bool is_ample(const KlyachkoBundle& b) {
    for (const auto& w : wall_degrees(b))
        for (const auto& a : w.degrees)
            if (a <= 0)
                return false;
    return true;
}

/// V_i = {e : v(e)(v_rho) >= <u_i, v_rho> for all rays}: e in V_i iff u_i in P_{v(e)},
/// since v(e) is concave on every cone and so is bounded below by u_i once it is at the rays.
inline std::vector<Subspace> section_spaces(const KlyachkoBundle& b, std::size_t cone) {
    std::vector<Subspace> out;
    for (const auto& u : b.compat(cone).characters) {
        Subspace v = Subspace::full(b.rank());
        for (std::size_t r = 0; r < b.fan().num_rays(); ++r)
            v = intersect(v, b.filtration(r).at(dot(u, b.fan().ray(r))));
        out.push_back(v);
    }
    return out;
}

/// Any basis e_i with e_i in V_i is a compatible frame of sigma with characters u_i
/// (e_i lies in the right filtration steps and the step dimensions match), so a
/// certificate exists iff the V_i admit an independent transversal. Rado's condition
/// decides this exactly; the transversal itself is drawn at random and verified.
inline ConeCertificate gg_certificate(const KlyachkoBundle& b, std::size_t cone, std::uint64_t seed = 0) {
    ConeCertificate cert;
    cert.cone = cone;
    cert.characters = b.compat(cone).characters;
    auto spaces = section_spaces(b, cone);
    std::size_t r = b.rank();
    bool rado = true;
    for_each_mask(r, [&](unsigned long mask) {
        Subspace s = Subspace::zero(r);
        std::size_t count = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1U) {
                s = sum(s, spaces[i]);
                ++count;
            }
        rado = rado && s.dim() >= count;
        return rado;
    });
    if (!rado)
        return cert;
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (cone + 1));
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::uniform_int_distribution<long> d(-(2L << attempt % 8), 2L << attempt % 8);
        QMat gens;
        for (const auto& v : spaces) {
            QVec e = zeros(r);
            for (const auto& row : v.basis())
                e = add(e, scale(row, make_rat(d(rng))));
            gens.push_back(e);
        }
        if (rank(gens, r) != r)
            continue;
        bool verified = true;
        for (std::size_t i = 0; i < r && verified; ++i)
            verified = polytope_of(pl_valuation(b, gens[i])).contains(cert.characters[i]);
        if (!verified)
            throw std::logic_error("gg_certificate: generator fails the polytope condition");
        cert.ok = true;
        cert.generators = gens;
        return cert;
    }
    throw std::logic_error("gg_certificate: Rado's condition holds but no transversal was found");
}

inline bool is_globally_generated(const KlyachkoBundle& b, std::uint64_t seed = 0) {
    detail::require_positivity_input(b);
    for (std::size_t i = 0; i < b.fan().num_cones(); ++i)
        if (!gg_certificate(b, i, seed).ok)
            return false;
    return true;
}

/// For each wall: T(x') <= Phi(x') at the rays of sigma' and T'(x) <= Phi(x) at the rays
/// of sigma, where T carries the characters of sigma onto the frame of sigma' through
/// the curve splitting bijection (and T' the other way).
inline bool is_buildingwise_convex(const KlyachkoBundle& b) {
    detail::require_positivity_input(b);
    const Fan& f = b.fan();
    std::size_t r = b.rank();
    for (const auto& w : f.walls()) {
        auto s = curve_splitting(b, w.rays);
        const auto& cs = b.compat(s.wall.sigma);
        const auto& cp = b.compat(s.wall.sigma_prime);
        std::vector<QVec> onto_prime(r), onto_sigma(r);
        for (const auto& p : s.pairs) {
            onto_prime[p.line_prime] = p.u;
            onto_sigma[p.line] = p.u_prime;
        }
        for (auto ray : f.maximal_cones()[s.wall.sigma_prime]) {
            QVec x = to_qvec(f.ray(ray));
            if (!leq_valuation(detail::linear_extension(cp.frame, onto_prime, x), phi_eval(b, x)))
                return false;
        }
        for (auto ray : f.maximal_cones()[s.wall.sigma]) {
            QVec x = to_qvec(f.ray(ray));
            if (!leq_valuation(detail::linear_extension(cs.frame, onto_sigma, x), phi_eval(b, x)))
                return false;
        }
    }
    return true;
}

/// S_sigma(v_rho) <= Phi(v_rho) at every ray, with S_sigma built on a certificate frame.
inline bool is_fanwise_convex(const KlyachkoBundle& b, std::uint64_t seed = 0) {
    detail::require_positivity_input(b);
    const Fan& f = b.fan();
    for (std::size_t i = 0; i < f.num_cones(); ++i) {
        auto cert = gg_certificate(b, i, seed);
        if (!cert.ok)
            return false;
        for (std::size_t r = 0; r < f.num_rays(); ++r) {
            QVec x = to_qvec(f.ray(r));
            if (!leq_valuation(detail::linear_extension(cert.generators, cert.characters, x), phi_eval(b, x)))
                return false;
        }
    }
    return true;
}

inline PositivityReport positivity_report(const KlyachkoBundle& b, std::uint64_t seed = 0) {
    PositivityReport rep;
    rep.walls = wall_degrees(b);
    rep.nef = rep.ample = true;
    for (const auto& w : rep.walls)
        for (const auto& a : w.degrees) {
            rep.nef = rep.nef && a >= 0;
            rep.ample = rep.ample && a > 0;
        }
    rep.globally_generated = true;
    for (std::size_t i = 0; i < b.fan().num_cones(); ++i) {
        rep.certificates.push_back(gg_certificate(b, i, seed));
        rep.globally_generated = rep.globally_generated && rep.certificates.back().ok;
    }
    rep.buildingwise_convex = is_buildingwise_convex(b);
    rep.fanwise_convex = is_fanwise_convex(b, seed);
    return rep;
}

}  // namespace klytor
