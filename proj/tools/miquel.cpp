// Command-line front end: generate, evolve, inspect, verify, reconstruct and
// render circle patterns under the dynamics.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "miquel/io.hpp"

using namespace miquel;

namespace {

Moebius parse_moebius(const std::string& s) {
    // either four real coefficients a,b,c,d or eight a_re,a_im,...,d_im
    std::vector<double> v;
    std::string tok;
    std::istringstream ss(s);
    while (std::getline(ss, tok, ',')) v.push_back(std::strtod(tok.c_str(), nullptr));
    if (v.size() == 4) return Moebius(v[0], v[1], v[2], v[3]);
    if (v.size() != 8)
        throw CLI::ValidationError("--moebius", "expected 4 or 8 comma-separated reals");
    return Moebius(cd(v[0], v[1]), cd(v[2], v[3]), cd(v[4], v[5]), cd(v[6], v[7]));
}

VariableKind parse_kind(const std::string& s) {
    if (s == "y") return VariableKind::Y;
    if (s == "xb") return VariableKind::Xb;
    if (s == "xw") return VariableKind::Xw;
    if (s == "wb") return VariableKind::Wb;
    if (s == "ww") return VariableKind::Ww;
    if (s == "gamma") return VariableKind::Gamma;
    throw CLI::ValidationError("--kind", "expected y|xb|xw|wb|ww|gamma");
}

double env_tol_scale() {
    if (const char* e = std::getenv("MIQUEL_TOL_SCALE")) return std::strtod(e, nullptr);
    return 1.0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle patterns under Miquel dynamics: generation, evolution, verification"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a pattern of one of the special classes");
    std::string g_kind = "generic", g_out, g_moebius, g_format = "hex";
    GeneratorSpec spec;
    gen->add_option("--kind", g_kind, "generic|isoradial|orthodiagonal|packing");
    gen->add_option("--rows", spec.rows, "pattern rows")->check(CLI::Range(4, 1024));
    gen->add_option("--cols", spec.cols, "pattern columns")->check(CLI::Range(4, 1024));
    gen->add_option("--seed", spec.seed, "random seed");
    gen->add_option("--perturbation", spec.perturbation, "deviation from the regular grid, 0..1");
    gen->add_option("--moebius", g_moebius, "deform by (az+b)/(cz+d): 8 comma-separated reals");
    gen->add_flag("--regular", spec.regular_packing, "packing: exact regular grid");
    gen->add_option("-o,--output", g_out, "output pattern file")->required();
    gen->add_option("--format", g_format, "number format: hex|decimal");

    // evolve
    auto* ev = app.add_subcommand("evolve", "run the dynamics for a number of steps");
    std::string e_in, e_out, e_dir = "fwd", e_format = "hex";
    int e_steps = 1;
    ev->add_option("-i,--input", e_in, "input pattern file")->required();
    ev->add_option("--steps", e_steps, "number of steps")->check(CLI::Range(1, 64));
    ev->add_option("--direction", e_dir, "fwd|bwd");
    ev->add_option("-o,--output", e_out, "output pattern file")->required();
    ev->add_option("--format", e_format, "number format: hex|decimal");

    // vars
    auto* va = app.add_subcommand("vars", "export a variable field as CSV");
    std::string v_in, v_out, v_kind = "y";
    int v_layer = 0;
    bool v_layer_set = false;
    va->add_option("-i,--input", v_in, "input pattern file")->required();
    va->add_option("--kind", v_kind, "y|xb|xw|wb|ww|gamma");
    va->add_option("--layer", v_layer, "restrict to data of one layer (y: reconstruction form)")
        ->each([&](const std::string&) { v_layer_set = true; });
    va->add_option("-o,--output", v_out, "output CSV")->required();

    // verify
    auto* ve = app.add_subcommand("verify", "run verification suites, exit 1 on failure");
    std::string f_in, f_out, f_suites = "all", f_precision = "double";
    double f_tol_scale = env_tol_scale();
    ve->add_option("-i,--input", f_in, "input pattern file")->required();
    ve->add_option("--suite", f_suites, "comma-separated suite list (see README)");
    ve->add_option("--tol-scale", f_tol_scale, "tolerance multiplier (env MIQUEL_TOL_SCALE)");
    ve->add_option("--precision", f_precision, "multi-ratio residual precision: double|dd");
    ve->add_option("-o,--output", f_out, "report JSON");

    // boundary
    auto* bo = app.add_subcommand("boundary", "export the boundary data a reconstruction needs");
    std::string b_in, b_out, b_for = "y";
    bo->add_option("-i,--input", b_in, "input pattern file")->required();
    bo->add_option("--for", b_for, "y|xb|xw");
    bo->add_option("-o,--output", b_out, "output CSV")->required();

    // reconstruct
    auto* re = app.add_subcommand("reconstruct", "rebuild a map from variables plus boundary data");
    std::string r_in, r_boundary, r_from = "y", r_out, r_format = "hex";
    re->add_option("-i,--input", r_in, "variable CSV")->required();
    re->add_option("--boundary", r_boundary, "boundary CSV (sites and values)")->required();
    re->add_option("--from", r_from, "y|xb|xw");
    re->add_option("-o,--output", r_out, "output file (CSV for y, pattern file for xb/xw)")
        ->required();
    re->add_option("--format", r_format, "number format: hex|decimal");

    // render
    auto* rd = app.add_subcommand("render", "render one pattern layer as SVG");
    std::string d_in, d_out, d_label;
    int d_layer = 0;
    RenderOptions ropt;
    rd->add_option("-i,--input", d_in, "input pattern file")->required();
    rd->add_option("--layer", d_layer, "pattern layer");
    rd->add_flag("--show-points", ropt.show_points, "draw intersection points");
    rd->add_flag("--show-centers", ropt.show_centers, "draw circle centers");
    rd->add_option("--label-vars", d_label, "label sites with a variable: y|xb|xw|wb|ww");
    rd->add_option("-o,--output", d_out, "output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const NumberFormat gfmt = g_format == "decimal" ? NumberFormat::Decimal : NumberFormat::Hex;
        if (gen->parsed()) {
            if (g_kind == "generic") spec.kind = PatternKind::Generic;
            else if (g_kind == "isoradial") spec.kind = PatternKind::Isoradial;
            else if (g_kind == "orthodiagonal") spec.kind = PatternKind::Orthodiagonal;
            else if (g_kind == "packing") spec.kind = PatternKind::Packing;
            else throw CLI::ValidationError("--kind", "expected generic|isoradial|orthodiagonal|packing");
            if (!g_moebius.empty()) spec.deformation = parse_moebius(g_moebius);
            MiquelMap m = generate(spec);
            Provenance prov{g_kind, spec.seed, spec.rows, spec.cols, spec.perturbation, ""};
            save_map(m, g_out, &prov, gfmt);
        } else if (ev->parsed()) {
            MiquelMap m = load_map(e_in);
            const Direction dir = e_dir == "bwd" ? Direction::Backward : Direction::Forward;
            m = evolve(m, e_steps, dir);
            const NumberFormat fmt =
                e_format == "decimal" ? NumberFormat::Decimal : NumberFormat::Hex;
            // carry provenance along and note the evolution
            json in;
            {
                std::ifstream f(e_in);
                f >> in;
            }
            json out = map_to_json(m, nullptr, fmt);
            if (in.contains("provenance")) {
                out["provenance"] = in["provenance"];
                out["provenance"]["note"] =
                    std::string(out["provenance"].value("note", "")) + " evolved " +
                    std::to_string(e_steps) + (dir == Direction::Forward ? " fwd;" : " bwd;");
            }
            std::ofstream f(e_out);
            if (!f) throw IoError("cannot write " + e_out);
            f << out.dump(1) << "\n";
        } else if (va->parsed()) {
            MiquelMap m = load_map(v_in);
            const VariableKind kind = parse_kind(v_kind);
            if (kind == VariableKind::Gamma) {
                save_gamma_csv(gamma_field(m, v_layer), v_out);
            } else if (kind == VariableKind::Y && v_layer_set) {
                save_variable_csv(extract_y_layer(m, v_layer), v_out);
            } else {
                VariableField f;
                switch (kind) {
                    case VariableKind::Y: f = y_field(m); break;
                    case VariableKind::Xb: f = x_field(m, Color::Black); break;
                    case VariableKind::Xw: f = x_field(m, Color::White); break;
                    case VariableKind::Wb: f = w_field(m, Color::Black); break;
                    default: f = w_field(m, Color::White); break;
                }
                if (v_layer_set) {
                    VariableField cut{f.kind, {}};
                    for (const auto& [z, val] : f.values)
                        if (z.z == v_layer || z.z == v_layer + 1) cut.values[z] = val;
                    f = cut;
                }
                save_variable_csv(f, v_out);
            }
        } else if (ve->parsed()) {
            MiquelMap m = load_map(f_in);
            std::vector<std::string> suites;
            std::istringstream ss(f_suites);
            std::string tok;
            while (std::getline(ss, tok, ',')) suites.push_back(tok);
            Tolerances tol;
            tol.scale = f_tol_scale;
            tol.extended_precision = (f_precision == "dd");
            const VerificationReport rep = run_suite(m, suites, tol, f_in);
            const json rj = report_to_json(rep);
            if (!f_out.empty()) {
                std::ofstream out(f_out);
                if (!out) throw IoError("cannot write " + f_out);
                out << rj.dump(1) << "\n";
            }
            for (const CheckResult& c : rep.checks)
                std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " max=" << c.max_residual
                          << " sites=" << c.site_count << "\n";
            if (!rep.all_pass()) return 1;
        } else if (bo->parsed()) {
            MiquelMap m = load_map(b_in);
            if (b_for == "y") {
                int jlo = 1 << 30;
                for (const Vec3& v : m.circle_sites())
                    if (v.z == 0 || v.z == 1) jlo = std::min(jlo, v.y);
                std::map<Vec3, cd> strip;
                for (const auto& [z, c] : extract_t(m))
                    if ((z.y == jlo || z.y == jlo + 1) && (z.z == 0 || z.z == 1)) strip[z] = c;
                save_tmap_csv(strip, b_out);
            } else {
                const Color color = b_for == "xw" ? Color::White : Color::Black;
                const int klo = color == Color::Black ? 0 : -1;
                std::map<Vec3, cd> slab;
                for (const auto& [z, v] : extract_p(m, color))
                    if (z.z == klo || z.z == klo + 1) slab[z] = v;
                if (slab.empty()) throw WindowTooSmall("boundary: no point slab in range");
                int slo = 1 << 30, shi = -(1 << 30), dlo = 1 << 30, dhi = -(1 << 30);
                for (const auto& [z, v] : slab) {
                    slo = std::min(slo, z.x + z.y);
                    shi = std::max(shi, z.x + z.y);
                    dlo = std::min(dlo, z.x - z.y);
                    dhi = std::max(dhi, z.x - z.y);
                }
                save_tmap_csv(extract_x_boundary(slab, (slo + shi) / 2, (dlo + dhi) / 2), b_out);
            }
        } else if (re->parsed()) {
            const auto boundary = load_sites_csv(r_boundary);
            const NumberFormat fmt =
                r_format == "decimal" ? NumberFormat::Decimal : NumberFormat::Hex;
            if (r_from == "y") {
                const VariableField yd = load_variable_csv(r_in, VariableKind::Y);
                save_tmap_csv(reconstruct_from_y(yd, boundary, 0), r_out);
            } else {
                const Color color = r_from == "xw" ? Color::White : Color::Black;
                const VariableField xd =
                    load_variable_csv(r_in, color == Color::Black ? VariableKind::Xb
                                                                  : VariableKind::Xw);
                auto slab = reconstruct_from_x(xd, boundary, color, 0);
                // one lattice-equation extension so the completed map has two
                // full circle layers
                slab = dskp_extend(slab, color == Color::Black ? Direction::Backward
                                                               : Direction::Forward);
                const MiquelMap m = complete_map_from_pcolor(slab, color);
                save_map(m, r_out, nullptr, fmt);
            }
        } else if (rd->parsed()) {
            MiquelMap m = load_map(d_in);
            if (!d_label.empty()) {
                ropt.show_labels = true;
                ropt.label_kind = parse_kind(d_label);
            }
            const std::string svg = render_svg(m, d_layer, ropt);
            std::ofstream out(d_out);
            if (!out) throw IoError("cannot write " + d_out);
            out << svg;
        }
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
