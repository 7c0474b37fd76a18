#pragma once

// JSON and CSV interchange. Rationals are written as "p/q" strings (integers
// are also accepted on input); lattice data (rays, cones, weights, diagram
// entries) are plain integers.

#include "klytor/parliament.hpp"
#include "klytor/positivity.hpp"
#include "klytor/tropical.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace klytor::io {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Json to_json(const Rat& r) { return to_string(r); }

inline Rat rat_from_json(const Json& j) {
    if (j.is_string())
        return parse_rat(j.get<std::string>());
    if (j.is_number_integer())
        return make_rat(j.get<long>());
    throw FormatError("expected a rational (\"p/q\" string or integer), got " + j.dump());
}

inline Json to_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

inline QVec qvec_from_json(const Json& j) {
    if (!j.is_array())
        throw FormatError("expected an array of rationals, got " + j.dump());
    QVec v;
    for (const auto& x : j)
        v.push_back(rat_from_json(x));
    return v;
}

inline QMat qmat_from_json(const Json& j) {
    if (!j.is_array())
        throw FormatError("expected an array of vectors, got " + j.dump());
    QMat m;
    for (const auto& row : j)
        m.push_back(qvec_from_json(row));
    return m;
}

inline Json to_json(const QMat& m) {
    Json a = Json::array();
    for (const auto& row : m)
        a.push_back(to_json(row));
    return a;
}

inline IVec ivec_from_json(const Json& j) {
    if (!j.is_array())
        throw FormatError("expected an array of integers, got " + j.dump());
    IVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw FormatError("expected an integer, got " + x.dump());
        v.push_back(x.get<long>());
    }
    return v;
}

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

/// Indented JSON with arrays of scalars kept on one line.
inline void dump_to(std::ostream& os, const Json& j, int indent) {
    auto pad = [&](int k) { os << std::string(static_cast<std::size_t>(k), ' '); };
    auto flat = [](const Json& a) {
        return std::all_of(a.begin(), a.end(), [](const Json& x) { return x.is_primitive(); });
    };
    if (j.is_object() && !j.empty()) {
        os << "{\n";
        std::size_t i = 0;
        for (const auto& [k, v] : j.items()) {
            pad(indent + 2);
            os << Json(k).dump() << ": ";
            dump_to(os, v, indent + 2);
            os << (++i < j.size() ? ",\n" : "\n");
        }
        pad(indent);
        os << "}";
    } else if (j.is_array() && !j.empty() && !flat(j)) {
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            pad(indent + 2);
            dump_to(os, j[i], indent + 2);
            os << (i + 1 < j.size() ? ",\n" : "\n");
        }
        pad(indent);
        os << "]";
    } else if (j.is_array()) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i)
            os << (i ? ", " : "") << j[i].dump();
        os << "]";
    } else {
        os << j.dump();
    }
}

inline std::string dump(const Json& j) {
    std::ostringstream os;
    dump_to(os, j, 0);
    os << '\n';
    return os.str();
}

// Fans.

inline Json fan_to_json(const Fan& f) {
    Json rays = Json::array(), cones = Json::array();
    for (std::size_t i = 0; i < f.num_rays(); ++i)
        rays.push_back(f.ray(i));
    for (const auto& c : f.maximal_cones())
        cones.push_back(c);
    return Json{{"rank", f.rank()}, {"rays", rays}, {"maximal_cones", cones}};
}

inline Fan fan_from_json(const Json& j) {
    std::size_t n = field(j, "rank").get<std::size_t>();
    std::vector<IVec> rays;
    for (const auto& r : field(j, "rays"))
        rays.push_back(ivec_from_json(r));
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& c : field(j, "maximal_cones"))
        cones.push_back(c.get<std::vector<std::size_t>>());
    return Fan(n, rays, cones);
}

// PL functions and polytopes.

inline Json pl_to_json(const PLFunction& f) {
    Json parts = Json::array();
    for (const auto& u : f.linear_parts())
        parts.push_back(to_json(u));
    return Json{{"fan", fan_to_json(f.fan())}, {"values_on_rays", to_json(f.values_on_rays())}, {"linear_parts", parts}};
}

/// Linear parts take precedence; values on rays alone suffice for simplicial fans.
inline PLFunction pl_from_json(const Json& j) {
    Fan f = fan_from_json(field(j, "fan"));
    if (j.contains("linear_parts")) {
        std::vector<QVec> parts;
        for (const auto& u : j.at("linear_parts"))
            parts.push_back(qvec_from_json(u));
        PLFunction p(f, parts);
        if (j.contains("values_on_rays") && p.values_on_rays() != qvec_from_json(j.at("values_on_rays")))
            throw FormatError("values_on_rays disagree with linear_parts");
        return p;
    }
    return PLFunction::from_ray_values(f, qvec_from_json(field(j, "values_on_rays")));
}

inline Json polytope_to_json(const Polytope& p) {
    Json hs = Json::array();
    for (const auto& h : p.hrep())
        hs.push_back(Json{{"a", to_json(h.a)}, {"b", to_json(h.b)}});
    Json out{{"hrep", hs}, {"empty", p.is_empty()}, {"bounded", p.is_bounded()}};
    out["vertices"] = p.is_bounded() ? to_json(p.vertices()) : Json(nullptr);
    return out;
}

// Filtrations and bundles.

inline Json filtration_to_json(const Filtration& f) {
    Json a = Json::array();
    for (const auto& bp : f.breakpoints())
        a.push_back(Json{{"level", to_json(bp.level)}, {"basis", to_json(bp.space.basis())}});
    return a;
}

inline Filtration filtration_from_json(const Json& j, std::size_t r) {
    if (!j.is_array())
        throw FormatError("filtration: expected an array of {level, basis}");
    std::vector<Breakpoint> bps;
    for (const auto& bp : j)
        bps.push_back(Breakpoint{rat_from_json(field(bp, "level")), Subspace::span(qmat_from_json(field(bp, "basis")), r)});
    return Filtration::make(r, bps);
}

inline Json bundle_to_json(const KlyachkoBundle& b) {
    Json fs = Json::object();
    for (std::size_t i = 0; i < b.fan().num_rays(); ++i)
        fs[std::to_string(i)] = filtration_to_json(b.filtration(i));
    return Json{{"fan", fan_to_json(b.fan())}, {"rank", b.rank()}, {"filtrations", fs}};
}

/// Rays without an entry carry the trivial filtration at level 0.
inline std::pair<Fan, std::vector<Filtration>> bundle_data_from_json(const Json& j) {
    Fan f = fan_from_json(field(j, "fan"));
    std::size_t r = field(j, "rank").get<std::size_t>();
    std::vector<Filtration> fs(f.num_rays(), Filtration::trivial(r));
    const Json& jf = field(j, "filtrations");
    if (!jf.is_object())
        throw FormatError("filtrations: expected an object keyed by ray index");
    for (const auto& [key, val] : jf.items()) {
        std::size_t idx = 0;
        try {
            idx = std::stoul(key);
        } catch (const std::exception&) {
            throw FormatError("filtrations: bad ray index \"" + key + "\"");
        }
        if (idx >= f.num_rays())
            throw FormatError("filtrations: ray index " + key + " out of range");
        fs[idx] = filtration_from_json(val, r);
    }
    return {f, fs};
}

inline KlyachkoBundle bundle_from_json(const Json& j) {
    auto [f, fs] = bundle_data_from_json(j);
    return build_bundle(f, fs);
}

inline Json valuation_to_json(const VSValuation& v) { return filtration_to_json(valuation_to_filtration(v)); }

inline Json frame_to_json(const CommonFrame& fr) {
    Json profile = Json::array();
    for (const auto& p : fr.profile)
        profile.push_back(to_json(p));
    return Json{{"vectors", to_json(fr.vectors)}, {"values", profile}};
}

inline Json compat_to_json(const KlyachkoBundle& b) {
    Json a = Json::array();
    for (std::size_t i = 0; i < b.fan().num_cones(); ++i) {
        const auto& c = b.compat(i);
        Json chars = Json::array();
        for (const auto& u : c.characters)
            chars.push_back(to_json(u));
        a.push_back(Json{{"cone", b.fan().maximal_cones()[i]}, {"frame", to_json(c.frame)}, {"characters", chars}});
    }
    return a;
}

inline Json curve_splitting_to_json(const KlyachkoBundle& b, const CurveSplitting& s) {
    Json pairs = Json::array();
    for (const auto& p : s.pairs)
        pairs.push_back(Json{{"u", to_json(p.u)}, {"u_prime", to_json(p.u_prime)}, {"degree", to_json(p.degree)}});
    const auto& cones = b.fan().maximal_cones();
    return Json{{"wall", s.wall.tau},
                {"sigma", cones[s.wall.sigma]},
                {"sigma_prime", cones[s.wall.sigma_prime]},
                {"pairs", pairs},
                {"degrees", to_json(QVec(s.degrees()))}};
}

// Positivity, parliaments, sections.

inline Json report_to_json(const KlyachkoBundle& b, const PositivityReport& rep) {
    Json walls = Json::array();
    for (const auto& w : rep.walls)
        walls.push_back(Json{{"wall", w.tau}, {"degrees", to_json(QVec(w.degrees))}});
    Json certs = Json::array();
    for (const auto& c : rep.certificates) {
        Json chars = Json::array();
        for (const auto& u : c.characters)
            chars.push_back(to_json(u));
        certs.push_back(Json{{"cone", b.fan().maximal_cones()[c.cone]},
                             {"ok", c.ok},
                             {"characters", chars},
                             {"generators", c.ok ? to_json(c.generators) : Json(nullptr)}});
    }
    return Json{{"nef", rep.nef},
                {"ample", rep.ample},
                {"globally_generated", rep.globally_generated},
                {"buildingwise_convex", rep.buildingwise_convex},
                {"fanwise_convex", rep.fanwise_convex},
                {"walls", walls},
                {"certificates", certs}};
}

inline Json weights_to_json(const std::map<IVec, long>& h) {
    Json a = Json::array();
    long total = 0;
    for (const auto& [u, d] : h) {
        a.push_back(Json{{"u", u}, {"dim", d}});
        total += d;
    }
    return Json{{"weights", a}, {"total", total}};
}

inline Json parliament_to_json(const Arrangement& arr, const MatroidRealization& m,
                               const std::vector<ParliamentEntry>& parl, const std::map<IVec, long>& h) {
    Json subs = Json::array();
    for (const auto& s : arr.subspaces)
        subs.push_back(to_json(s.basis()));
    Json ground = Json::array();
    for (const auto& e : parl)
        ground.push_back(Json{{"vector", to_json(e.vector)},
                              {"source", m.ground[e.ground_index].source},
                              {"values_on_rays", pl_to_json(e.pl)["values_on_rays"]},
                              {"fan", fan_to_json(e.pl.fan())},
                              {"polytope", polytope_to_json(e.polytope)}});
    Json out{{"seed", m.seed}, {"arrangement", subs}, {"ground", ground}};
    auto w = weights_to_json(h);
    out["weights"] = w["weights"];
    out["total"] = w["total"];
    return out;
}

// Tropical data.

inline Json config_to_json(const LinearConfiguration& c) {
    Json circ = Json::array();
    for (const auto& k : c.circuits)
        circ.push_back(Json{{"support", k.support}, {"coefficients", to_json(k.coefficients)}});
    return Json{{"vectors", to_json(c.vectors)}, {"circuits", circ}};
}

inline LinearConfiguration config_from_json(const Json& j) {
    return LinearConfiguration::make(qmat_from_json(field(j, "vectors")));
}

inline Json trop_point_to_json(const TropPoint& p) {
    Json a = Json::array();
    for (const auto& f : p.functions())
        a.push_back(pl_to_json(f));
    return Json{{"functions", a}};
}

inline TropPoint trop_point_from_json(const Json& j) {
    std::vector<PLFunction> fs;
    for (const auto& f : field(j, "functions"))
        fs.push_back(pl_from_json(f));
    return TropPoint::make(std::move(fs));
}

inline std::string diagram_to_csv(const Diagram& d) {
    std::ostringstream os;
    for (const auto& row : d.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

/// One row per ray; blank lines and lines starting with '#' are skipped.
inline Diagram diagram_from_csv(const std::string& text) {
    Diagram d;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
            continue;
        IVec row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(cell, &used);
            } catch (const std::exception&) {
                throw FormatError("diagram: bad entry \"" + cell + "\"");
            }
            if (cell.find_first_not_of(" \t\r", used) != std::string::npos)
                throw FormatError("diagram: bad entry \"" + cell + "\"");
            row.push_back(v);
        }
        if (!d.rows.empty() && row.size() != d.rows[0].size())
            throw FormatError("diagram: ragged rows");
        d.rows.push_back(row);
    }
    return d;
}

// Files.

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline Json read_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

}  // namespace klytor::io
