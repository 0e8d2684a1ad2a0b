#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "miquel/generators.hpp"
#include "miquel/verify.hpp"

namespace miquel {

using json = nlohmann::ordered_json;

enum class NumberFormat { Hex, Decimal };

namespace detail {

inline json num_out(double v, NumberFormat fmt) {
    if (fmt == NumberFormat::Decimal) return v;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return std::string(buf);
}

inline double num_in(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw SchemaViolation(path + ": not a number: '" + s + "'");
        return v;
    }
    throw SchemaViolation(path + ": expected number or hex-float string");
}

}  // namespace detail

struct Provenance {
    std::string kind;
    std::uint64_t seed = 0;
    int rows = 0, cols = 0;
    double perturbation = 0.0;
    std::string note;
};

inline constexpr int kPatternFileVersion = 1;

/// Serializes a map (with optional provenance). Hex-float strings are the
/// default so round trips are bit exact; decimal mode emits plain JSON
/// numbers (shortest round-trip representation, also lossless).
inline json map_to_json(const MiquelMap& m, const Provenance* prov = nullptr,
                        NumberFormat fmt = NumberFormat::Hex) {
    json j;
    j["version"] = kPatternFileVersion;
    json window = json::array();
    for (const auto& [k, lay] : m.circle_layers()) {
        int ilo = 1 << 30, ihi = -(1 << 30), jlo = 1 << 30, jhi = -(1 << 30);
        for (const auto& [xy, c] : lay) {
            ilo = std::min(ilo, xy.x);
            ihi = std::max(ihi, xy.x);
            jlo = std::min(jlo, xy.y);
            jhi = std::max(jhi, xy.y);
        }
        window.push_back({{"layer", k}, {"i", {ilo, ihi}}, {"j", {jlo, jhi}}});
    }
    j["window"] = window;
    json circles = json::array();
    for (const Vec3& v : m.circle_sites()) {
        const Circle& c = m.circle(v);
        circles.push_back({{"z", {v.x, v.y, v.z}},
                           {"center", {detail::num_out(c.center.real(), fmt),
                                       detail::num_out(c.center.imag(), fmt)}},
                           {"radius", detail::num_out(c.radius, fmt)}});
    }
    j["circles"] = circles;
    json points = json::array();
    for (const Vec3& t : m.point_sites()) {
        const cd p = m.point(t);
        points.push_back({{"t", {t.x, t.y, t.z}},
                          {"pos", {detail::num_out(p.real(), fmt), detail::num_out(p.imag(), fmt)}}});
    }
    j["points"] = points;
    if (prov) {
        j["provenance"] = {{"kind", prov->kind},       {"seed", prov->seed},
                           {"rows", prov->rows},       {"cols", prov->cols},
                           {"perturbation", prov->perturbation}, {"note", prov->note}};
    }
    return j;
}

inline MiquelMap map_from_json(const json& j, bool validate_incidence = true,
                               double tol = 1e-6) {
    if (!j.contains("version")) throw SchemaViolation("/version: missing");
    if (!j["version"].is_number_integer() || j["version"].get<int>() != kPatternFileVersion)
        throw UnsupportedVersion("/version: expected " + std::to_string(kPatternFileVersion));
    if (!j.contains("circles") || !j["circles"].is_array())
        throw SchemaViolation("/circles: missing or not an array");
    if (!j.contains("points") || !j["points"].is_array())
        throw SchemaViolation("/points: missing or not an array");
    MiquelMap m;
    int idx = 0;
    for (const json& e : j["circles"]) {
        const std::string path = "/circles/" + std::to_string(idx++);
        if (!e.contains("z") || !e["z"].is_array() || e["z"].size() != 3)
            throw SchemaViolation(path + "/z: expected [i, j, k]");
        const Vec3 v{e["z"][0].get<int>(), e["z"][1].get<int>(), e["z"][2].get<int>()};
        if (!is_vertex_site(v)) throw SchemaViolation(path + "/z: odd coordinate sum");
        if (!e.contains("center") || e["center"].size() != 2 || !e.contains("radius"))
            throw SchemaViolation(path + ": expected center [re, im] and radius");
        const cd ctr(detail::num_in(e["center"][0], path + "/center/0"),
                     detail::num_in(e["center"][1], path + "/center/1"));
        const double r = detail::num_in(e["radius"], path + "/radius");
        if (!(r > 0.0)) throw SchemaViolation(path + "/radius: must be positive");
        m.set_circle(v, Circle(ctr, r));
    }
    idx = 0;
    for (const json& e : j["points"]) {
        const std::string path = "/points/" + std::to_string(idx++);
        if (!e.contains("t") || !e["t"].is_array() || e["t"].size() != 3)
            throw SchemaViolation(path + "/t: expected [i, j, k]");
        const Vec3 t{e["t"][0].get<int>(), e["t"][1].get<int>(), e["t"][2].get<int>()};
        if (!e.contains("pos") || e["pos"].size() != 2)
            throw SchemaViolation(path + "/pos: expected [re, im]");
        m.set_point(t, cd(detail::num_in(e["pos"][0], path + "/pos/0"),
                          detail::num_in(e["pos"][1], path + "/pos/1")));
    }
    if (m.empty()) throw SchemaViolation("/: no circles or no points");
    if (validate_incidence) {
        // every tetra whose four vertices carry circles must have its point
        for (int k = m.point_layer_lo(); k <= m.point_layer_hi(); ++k) {
            if (!m.circle_layers().count(k) || !m.circle_layers().count(k + 1)) continue;
            for (const auto& [xy, c] : m.circle_layers().at(k)) {
                const Vec3 t{xy.x, xy.y, k};
                bool covered = true;
                for (const Vec3& v : tetra_vertices(t))
                    if (!m.has_circle(v)) { covered = false; break; }
                if (covered && !m.has_point(t))
                    throw SchemaViolation("/points: missing point at covered tetra " + site_str(t));
            }
        }
        const double res = m.incidence_residual();
        if (res > tol)
            throw SchemaViolation("/: incidence residual " + std::to_string(res) +
                                  " exceeds load tolerance");
    }
    return m;
}

inline void save_map(const MiquelMap& m, const std::string& file, const Provenance* prov = nullptr,
                     NumberFormat fmt = NumberFormat::Hex) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file);
    out << map_to_json(m, prov, fmt).dump(1) << "\n";
}

inline MiquelMap load_map(const std::string& file, bool validate = true) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read " + file);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaViolation(std::string("JSON parse error: ") + e.what());
    }
    return map_from_json(j, validate);
}

// ---------------------------------------------------------------------------
// Variable CSV: (z1, z2, z3, re, im) rows; gamma gets an extra direction
// column. Full-precision hex floats keep the files lossless.

inline void save_variable_csv(const VariableField& f, const std::string& file) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file);
    out << "z1,z2,z3,re,im\n";
    char b1[40], b2[40];
    for (const auto& [z, v] : f.values) {
        std::snprintf(b1, sizeof(b1), "%a", v.real());
        std::snprintf(b2, sizeof(b2), "%a", v.imag());
        out << z.x << "," << z.y << "," << z.z << "," << b1 << "," << b2 << "\n";
    }
}

inline VariableField load_variable_csv(const std::string& file, VariableKind kind) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read " + file);
    VariableField f{kind, {}};
    std::string line;
    std::getline(in, line);   // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        int zi[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ss, tok, ',')) throw IoError("bad csv row: " + line);
            zi[i] = std::atoi(tok.c_str());
        }
        double re, im;
        if (!std::getline(ss, tok, ',')) throw IoError("bad csv row: " + line);
        re = std::strtod(tok.c_str(), nullptr);
        if (!std::getline(ss, tok, ',')) throw IoError("bad csv row: " + line);
        im = std::strtod(tok.c_str(), nullptr);
        f.values[{zi[0], zi[1], zi[2]}] = cd(re, im);
    }
    return f;
}

inline void save_gamma_csv(const GammaField& g, const std::string& file) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file);
    out << "i,j,layer,dir,re,im\n";
    char b1[40], b2[40];
    for (const auto& [e, v] : g.values) {
        std::snprintf(b1, sizeof(b1), "%a", v.real());
        std::snprintf(b2, sizeof(b2), "%a", v.imag());
        out << e.base.x << "," << e.base.y << "," << g.k << "," << (e.vertical ? "v" : "h") << ","
            << b1 << "," << b2 << "\n";
    }
}

inline void save_tmap_csv(const std::map<Vec3, cd>& t, const std::string& file) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file);
    out << "z1,z2,z3,re,im\n";
    char b1[40], b2[40];
    for (const auto& [z, v] : t) {
        std::snprintf(b1, sizeof(b1), "%a", v.real());
        std::snprintf(b2, sizeof(b2), "%a", v.imag());
        out << z.x << "," << z.y << "," << z.z << "," << b1 << "," << b2 << "\n";
    }
}

inline std::map<Vec3, cd> load_sites_csv(const std::string& file) {
    return load_variable_csv(file, VariableKind::Y).values;
}

// ---------------------------------------------------------------------------
// Report JSON.

inline json report_to_json(const VerificationReport& rep) {
    json j;
    j["schema"] = "miquel-verification-report/1";
    j["map_id"] = rep.map_id;
    j["tol_scale"] = rep.tol_scale;
    j["all_pass"] = rep.all_pass();
    json checks = json::array();
    for (const CheckResult& c : rep.checks) {
        checks.push_back({{"name", c.name},
                          {"description", c.description},
                          {"site_count", c.site_count},
                          {"skipped_singular", c.skipped_singular},
                          {"max_residual", c.max_residual},
                          {"mean_residual", c.mean_residual},
                          {"threshold", c.threshold},
                          {"mode", c.must_exceed ? "must_exceed" : "max_below"},
                          {"verdict", c.pass ? "pass" : "fail"}});
    }
    j["checks"] = checks;
    return j;
}

// ---------------------------------------------------------------------------
// SVG rendering of one circle-pattern layer. Deterministic element order for
// diffable golden files; black/white tetra points drawn filled/open.

struct RenderOptions {
    bool show_points = false;
    bool show_centers = false;
    VariableKind label_kind = VariableKind::Y;
    bool show_labels = false;
};

inline std::string render_svg(const MiquelMap& m, int k, const RenderOptions& opt = {}) {
    const CirclePatternLayer lay = layer(m, k);
    double lo_x = 1e30, hi_x = -1e30, lo_y = 1e30, hi_y = -1e30;
    for (const auto& [v, c] : lay.circles) {
        lo_x = std::min(lo_x, c.center.real() - c.radius);
        hi_x = std::max(hi_x, c.center.real() + c.radius);
        lo_y = std::min(lo_y, c.center.imag() - c.radius);
        hi_y = std::max(hi_y, c.center.imag() + c.radius);
    }
    if (lay.circles.empty()) throw WindowTooSmall("render_svg: empty layer");
    const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y) + 0.1;
    lo_x -= pad; hi_x += pad; lo_y -= pad; hi_y += pad;
    const double scale = 640.0 / std::max(hi_x - lo_x, hi_y - lo_y);
    auto X = [&](double x) { return (x - lo_x) * scale; };
    auto Y = [&](double y) { return (hi_y - y) * scale; };   // flip to screen coordinates
    char buf[256];
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.3f %.3f\">\n",
                  (hi_x - lo_x) * scale, (hi_y - lo_y) * scale, (hi_x - lo_x) * scale,
                  (hi_y - lo_y) * scale);
    svg << buf;
    svg << "<g fill=\"none\" stroke=\"#2060a0\" stroke-width=\"1\">\n";
    for (const auto& [v, c] : lay.circles) {
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"%.4f\"/>\n",
                      X(c.center.real()), Y(c.center.imag()), c.radius * scale);
        svg << buf;
    }
    svg << "</g>\n";
    if (opt.show_centers) {
        svg << "<g fill=\"#a03030\">\n";
        for (const auto& [v, c] : lay.circles) {
            std::snprintf(buf, sizeof(buf),
                          "<rect x=\"%.4f\" y=\"%.4f\" width=\"3\" height=\"3\"/>\n",
                          X(c.center.real()) - 1.5, Y(c.center.imag()) - 1.5);
            svg << buf;
        }
        svg << "</g>\n";
    }
    if (opt.show_points) {
        svg << "<g stroke=\"#000000\" stroke-width=\"0.7\">\n";
        for (const auto& [f, p] : lay.points) {
            const bool black = is_black_tetra({f.x, f.y, k});
            std::snprintf(buf, sizeof(buf),
                          "<rect x=\"%.4f\" y=\"%.4f\" width=\"4\" height=\"4\" fill=\"%s\"/>\n",
                          X(p.real()) - 2.0, Y(p.imag()) - 2.0, black ? "#000000" : "#ffffff");
            svg << buf;
        }
        svg << "</g>\n";
    }
    if (opt.show_labels) {
        VariableField f;
        switch (opt.label_kind) {
            case VariableKind::Y: f = y_field(m); break;
            case VariableKind::Xb: f = x_field(m, Color::Black); break;
            case VariableKind::Xw: f = x_field(m, Color::White); break;
            case VariableKind::Wb: f = w_field(m, Color::Black); break;
            case VariableKind::Ww: f = w_field(m, Color::White); break;
            default: break;
        }
        svg << "<g font-size=\"9\" fill=\"#106010\" font-family=\"monospace\">\n";
        for (const auto& [z, v] : f.values) {
            if (z.z != k && z.z != k + 1) continue;
            cd anchor;
            if (m.has_circle(z)) anchor = m.circle(z).center;
            else if (m.has_point(z)) anchor = m.point(z);
            else continue;
            std::snprintf(buf, sizeof(buf), "<text x=\"%.3f\" y=\"%.3f\">%.4g</text>\n",
                          X(anchor.real()), Y(anchor.imag()), v.real());
            svg << buf;
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace miquel
