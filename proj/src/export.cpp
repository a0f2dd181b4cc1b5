#include "iga/export.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace iga {

namespace {

constexpr int kSamplesPerSpan = 16;

std::vector<double> line_samples(const KnotVector& kv) {
    std::vector<double> ts;
    const auto& v = kv.knot_values();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (!(v[i] < v[i + 1])) continue;
        for (int q = 0; q < kSamplesPerSpan; ++q)
            ts.push_back(v[i] + (v[i + 1] - v[i]) * q / kSamplesPerSpan);
    }
    ts.push_back(1.0);
    return ts;
}

}  // namespace

std::vector<std::vector<Vec2>> mesh_polylines(const MultiPatch& mp) {
    std::vector<std::vector<Vec2>> lines;
    for (const Patch& p : mp.patches) {
        const std::vector<double> sx = line_samples(p.sx.knot_vector());
        const std::vector<double> sy = line_samples(p.sy.knot_vector());
        for (const Dyadic& bx : p.sx.knot_vector().breakpoints()) {
            std::vector<Vec2> line;
            line.reserve(sy.size());
            for (double t : sy) line.push_back(eval_map(mp, p.id, bx.to_double(), t, 0).value);
            lines.push_back(std::move(line));
        }
        for (const Dyadic& by : p.sy.knot_vector().breakpoints()) {
            std::vector<Vec2> line;
            line.reserve(sx.size());
            for (double s : sx) line.push_back(eval_map(mp, p.id, s, by.to_double(), 0).value);
            lines.push_back(std::move(line));
        }
    }
    return lines;
}

void export_mesh_segments(const MultiPatch& mp, std::ostream& os) {
    char buf[128];
    for (const auto& line : mesh_polylines(mp)) {
        for (std::size_t i = 0; i + 1 < line.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", line[i].x, line[i].y,
                          line[i + 1].x, line[i + 1].y);
            os << buf;
        }
    }
}

void export_mesh_vtk(const MultiPatch& mp, std::ostream& os) {
    const auto lines = mesh_polylines(mp);
    std::size_t n_points = 0;
    for (const auto& line : lines) n_points += line.size();

    os << "# vtk DataFile Version 3.0\n";
    os << "mesh knot lines\n";
    os << "ASCII\n";
    os << "DATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << n_points << " double\n";
    char buf[128];
    for (const auto& line : lines) {
        for (const Vec2& p : line) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", p.x, p.y);
            os << buf;
        }
    }
    os << "CELLS " << lines.size() << ' ' << n_points + lines.size() << "\n";
    std::size_t offset = 0;
    for (const auto& line : lines) {
        os << line.size();
        for (std::size_t i = 0; i < line.size(); ++i) os << ' ' << offset + i;
        os << "\n";
        offset += line.size();
    }
    os << "CELL_TYPES " << lines.size() << "\n";
    for (std::size_t i = 0; i < lines.size(); ++i) os << "4\n";  // VTK_POLY_LINE
}

void export_mesh(const MultiPatch& mp, const std::string& path_base) {
    std::ofstream csv(path_base + ".csv");
    IGA_REQUIRE(static_cast<bool>(csv), "export: cannot write " + path_base + ".csv");
    export_mesh_segments(mp, csv);
    std::ofstream vtk(path_base + ".vtk");
    IGA_REQUIRE(static_cast<bool>(vtk), "export: cannot write " + path_base + ".vtk");
    export_mesh_vtk(mp, vtk);
}

}  // namespace iga
