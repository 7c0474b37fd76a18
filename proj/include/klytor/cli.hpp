#pragma once

// Subcommand front end. Exit codes: 0 success, 1 input/format errors,
// 2 domain errors (incompatible filtrations, non-tropical points, ...).
// Every error prints a JSON object with an "error" field to stdout.

#include "klytor/io.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace klytor::cli {

using io::Json;

namespace detail {

inline QVec parse_qvec(const std::string& s) {
    QVec v;
    std::istringstream is(s);
    std::string cell;
    while (std::getline(is, cell, ','))
        v.push_back(parse_rat(cell.substr(cell.find_first_not_of(' '))));
    if (v.empty())
        throw io::FormatError("empty vector \"" + s + "\"");
    return v;
}

inline std::vector<std::size_t> parse_indices(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& r : parse_qvec(s)) {
        if (!is_integral(r) || r < 0)
            throw io::FormatError("expected ray indices, got \"" + s + "\"");
        out.push_back(static_cast<std::size_t>(to_ll(r)));
    }
    return out;
}

inline Json error_json(const std::string& kind, const std::string& diagnosis, const std::string& message) {
    return Json{{"error", kind}, {"diagnosis", diagnosis}, {"message", message}};
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Toric vector bundles from Klyachko filtrations: positivity, parliaments, tropical points", "klytor"};
    app.require_subcommand(1);

    std::string bundle_path, out_path, point_path, config_path, fan_path, matrix_path, x_arg, vec_arg, wall_arg;
    std::uint64_t seed = 0;
    std::size_t tangent_n = 0;

    auto add_out = [&](CLI::App* s) { s->add_option("--out", out_path, "write the result here instead of stdout"); };
    auto add_bundle = [&](CLI::App* s) {
        s->add_option("--bundle", bundle_path, "bundle JSON")->required()->check(CLI::ExistingFile);
    };
    auto add_seed = [&](CLI::App* s) { s->add_option("--seed", seed, "seed for all randomized choices")->default_val(0); };

    auto* validate = app.add_subcommand("validate", "check compatibility of the filtrations on every maximal cone");
    add_bundle(validate);
    add_out(validate);

    auto* example = app.add_subcommand("example", "emit a standard bundle");
    example->add_option("--tangent-pn", tangent_n, "tangent bundle of P^n")->required()->check(CLI::Range(1, 6));
    add_out(example);

    auto* phi = app.add_subcommand("phi-eval", "the valuation Phi(x) as a filtration");
    add_bundle(phi);
    phi->add_option("--x", x_arg, "point of N_R, e.g. 1,0 or 1/2,-1")->required();
    add_out(phi);

    auto* plval = app.add_subcommand("pl-val", "the PL function v(e) and its polytope");
    add_bundle(plval);
    plval->add_option("--vector", vec_arg, "vector e of E, e.g. 1,0")->required();
    add_out(plval);

    auto* split = app.add_subcommand("split", "decide equivariant splitting (common adapted frame)");
    add_bundle(split);
    add_out(split);

    auto* curve = app.add_subcommand("curve-split", "splitting type along invariant curves");
    add_bundle(curve);
    curve->add_option("--wall", wall_arg, "ray indices of one wall, e.g. 1 or 0,2 (default: all walls)");
    add_out(curve);

    auto* pos = app.add_subcommand("positivity", "nef, ample and globally generated, with certificates");
    add_bundle(pos);
    add_seed(pos);
    add_out(pos);

    auto* parl = app.add_subcommand("parliament", "Klyachko arrangement, generic ground set, parliament and weights");
    add_bundle(parl);
    add_seed(parl);
    add_out(parl);

    auto* h0 = app.add_subcommand("h0", "weight decomposition of global sections");
    add_bundle(h0);
    add_seed(h0);
    add_out(h0);

    auto add_diagram_opts = [&](CLI::App* s) {
        add_bundle(s);
        s->add_option("--spanning", config_path, "spanning set JSON")->required()->check(CLI::ExistingFile);
        add_out(s);
    };
    auto* diagram_top = app.add_subcommand("diagram", "diagram matrix of a bundle as CSV");
    add_diagram_opts(diagram_top);

    auto* trop = app.add_subcommand("trop", "tropical points of the linear ideal of a spanning set");
    trop->require_subcommand(1);
    auto* tcheck = trop->add_subcommand("check", "membership with a witness on failure");
    auto* trec = trop->add_subcommand("reconstruct", "bundle from a tropical point");
    for (auto* s : {tcheck, trec}) {
        s->add_option("--point", point_path, "tropical point JSON")->required()->check(CLI::ExistingFile);
        s->add_option("--config", config_path, "spanning set JSON")->required()->check(CLI::ExistingFile);
        add_out(s);
    }
    auto* tpoint = trop->add_subcommand("point", "tuple of PL valuations of a spanning set");
    tpoint->add_option("--bundle", bundle_path, "bundle JSON")->required()->check(CLI::ExistingFile);
    tpoint->add_option("--spanning", config_path, "spanning set JSON")->required()->check(CLI::ExistingFile);
    add_out(tpoint);
    auto* tdiag = trop->add_subcommand("diagram", "diagram matrix of a bundle as CSV");
    add_diagram_opts(tdiag);
    auto* tfrom = trop->add_subcommand("from-diagram", "bundle from a linear ideal, a fan and a diagram");
    tfrom->add_option("--ideal", config_path, "spanning set JSON")->required()->check(CLI::ExistingFile);
    tfrom->add_option("--fan", fan_path, "fan JSON")->required()->check(CLI::ExistingFile);
    tfrom->add_option("--matrix", matrix_path, "diagram CSV")->required()->check(CLI::ExistingFile);
    add_out(tfrom);

    std::vector<const char*> argv{"klytor"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        out << io::dump(detail::error_json("UsageError", "the command line could not be parsed", e.what()));
        return 1;
    }

    auto emit = [&](const std::string& text) {
        if (out_path.empty()) {
            out << text;
            return;
        }
        std::ofstream f(out_path, std::ios::binary);
        if (!f)
            throw std::ios_base::failure("cannot write " + out_path);
        f << text;
    };
    auto emit_json = [&](const Json& j) { emit(io::dump(j)); };
    auto load_bundle = [&] { return io::bundle_from_json(io::read_json(bundle_path)); };

    try {
        if (*validate) {
            auto b = load_bundle();
            emit_json(Json{{"valid", true},
                           {"rank", b.rank()},
                           {"complete", b.fan().is_complete()},
                           {"integral", b.is_integral()},
                           {"cones", io::compat_to_json(b)}});
        } else if (*example) {
            emit_json(io::bundle_to_json(example_tangent_pn(tangent_n)));
        } else if (*phi) {
            auto b = load_bundle();
            emit_json(Json{{"x", io::to_json(detail::parse_qvec(x_arg))},
                           {"filtration", io::valuation_to_json(phi_eval(b, detail::parse_qvec(x_arg)))}});
        } else if (*plval) {
            auto b = load_bundle();
            auto f = pl_valuation(b, detail::parse_qvec(vec_arg));
            emit_json(Json{{"vector", io::to_json(detail::parse_qvec(vec_arg))},
                           {"function", io::pl_to_json(f)},
                           {"polytope", io::polytope_to_json(polytope_of(f))}});
        } else if (*split) {
            auto b = load_bundle();
            auto fr = is_equivariantly_split(b);
            emit_json(Json{{"split", fr.has_value()}, {"frame", fr ? io::frame_to_json(*fr) : Json(nullptr)}});
        } else if (*curve) {
            auto b = load_bundle();
            Json a = Json::array();
            if (!wall_arg.empty()) {
                a.push_back(io::curve_splitting_to_json(b, curve_splitting(b, detail::parse_indices(wall_arg))));
            } else {
                for (const auto& w : b.fan().walls())
                    a.push_back(io::curve_splitting_to_json(b, curve_splitting(b, w.rays)));
            }
            emit_json(Json{{"walls", a}});
        } else if (*pos) {
            auto b = load_bundle();
            emit_json(io::report_to_json(b, positivity_report(b, seed)));
        } else if (*parl) {
            auto b = load_bundle();
            auto arr = klyachko_arrangement(b);
            auto m = generic_ground_set(arr, seed);
            emit_json(io::parliament_to_json(arr, m, parliament(b, m), h0_all(b, seed)));
        } else if (*h0) {
            emit_json(io::weights_to_json(h0_all(load_bundle(), seed)));
        } else if (*diagram_top || *tdiag) {
            auto b = load_bundle();
            emit(io::diagram_to_csv(diagram(b, io::config_from_json(io::read_json(config_path)))));
        } else if (*tcheck) {
            auto chk = trop_check(io::trop_point_from_json(io::read_json(point_path)),
                                  io::config_from_json(io::read_json(config_path)));
            Json j{{"member", chk.member}};
            if (!chk.member)
                j.update(Json{{"witness", *chk.witness}, {"circuit", *chk.circuit}, {"reason", chk.reason}});
            emit_json(j);
        } else if (*trec) {
            auto b = reconstruct_valuation(io::trop_point_from_json(io::read_json(point_path)),
                                           io::config_from_json(io::read_json(config_path)));
            emit_json(io::bundle_to_json(b));
        } else if (*tpoint) {
            auto b = load_bundle();
            emit_json(io::trop_point_to_json(tropical_point_of(b, io::config_from_json(io::read_json(config_path)))));
        } else if (*tfrom) {
            auto b = bundle_from_diagram(io::config_from_json(io::read_json(config_path)),
                                         io::fan_from_json(io::read_json(fan_path)),
                                         io::diagram_from_csv(io::read_file(matrix_path)));
            emit_json(io::bundle_to_json(b));
        }
    } catch (const IncompatibleFiltrations& e) {
        Json j = detail::error_json("IncompatibleFiltrations",
                                    "the filtrations at the rays of this maximal cone admit no common adapted frame, "
                                    "so the compatibility condition fails",
                                    e.what());
        j["cone_index"] = e.cone();
        if (!bundle_path.empty()) {
            auto [f, fs] = io::bundle_data_from_json(io::read_json(bundle_path));
            j["cone"] = f.maximal_cones()[e.cone()];
        }
        out << io::dump(j);
        return 2;
    } catch (const NotATropicalPoint& e) {
        Json j = detail::error_json("NotATropicalPoint",
                                    "some circuit relation attains its minimum only once, so no piecewise linear "
                                    "valuation takes these values on the spanning set",
                                    e.what());
        if (e.witness())
            j["witness"] = *e.witness();
        if (e.circuit())
            j["circuit"] = *e.circuit();
        out << io::dump(j);
        return 2;
    } catch (const DiagramError& e) {
        out << io::dump(detail::error_json("DiagramError",
                                  "some maximal cone has no frame drawn from the spanning set, so the diagram does "
                                  "not determine a bundle",
                                  e.what()));
        return 2;
    } catch (const GenericityError& e) {
        out << io::dump(detail::error_json("GenericityError", "no generic realization of the arrangement's matroid was found",
                                  e.what()));
        return 2;
    } catch (const std::ios_base::failure& e) {
        out << io::dump(detail::error_json("IOError", "a file could not be read or written", e.what()));
        return 1;
    } catch (const Json::exception& e) {
        out << io::dump(detail::error_json("FormatError", "the input JSON does not match the expected schema", e.what()));
        return 1;
    } catch (const io::FormatError& e) {
        out << io::dump(detail::error_json("FormatError", "the input does not match the expected schema", e.what()));
        return 1;
    } catch (const std::invalid_argument& e) {
        out << io::dump(detail::error_json("InvalidInput", "the input violates a precondition", e.what()));
        return 1;
    } catch (const std::domain_error& e) {
        out << io::dump(detail::error_json("InvalidInput", "the input lies outside the domain of the operation", e.what()));
        return 1;
    } catch (const std::exception& e) {
        out << io::dump(detail::error_json("InternalError", "an internal consistency check failed", e.what()));
        return 1;
    }
    return 0;
}

inline int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace klytor::cli
