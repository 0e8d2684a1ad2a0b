// Renders one example of each pattern class into the working directory.

#include <fstream>
#include <iostream>

#include "miquel/io.hpp"

using namespace miquel;

int main() {
    const std::pair<PatternKind, const char*> kinds[] = {
        {PatternKind::Generic, "generic"},
        {PatternKind::Isoradial, "isoradial"},
        {PatternKind::Orthodiagonal, "orthodiagonal"},
        {PatternKind::Packing, "packing"},
    };
    for (const auto& [kind, name] : kinds) {
        GeneratorSpec spec;
        spec.kind = kind;
        spec.rows = spec.cols = 12;
        spec.seed = 7;
        MiquelMap m = generate(spec);
        m = evolve_step(m, Direction::Forward);
        RenderOptions opt;
        opt.show_points = true;
        const std::string file = std::string(name) + ".svg";
        std::ofstream(file) << render_svg(m, 1, opt);
        std::cout << "wrote " << file << "\n";
    }
    return 0;
}
