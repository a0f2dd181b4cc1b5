#include <istream>
#include <ostream>
#include <sstream>

#include "iga/geometry.hpp"

namespace iga {

namespace {

std::string next_token(std::istream& is, const char* what) {
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') {
            std::string rest;
            std::getline(is, rest);
            continue;
        }
        return tok;
    }
    throw Error(std::string("multipatch file: unexpected end of input, expected ") + what);
}

int next_int(std::istream& is, const char* what) {
    const std::string tok = next_token(is, what);
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        IGA_REQUIRE(used == tok.size(), "");
        return v;
    } catch (...) {
        throw Error(std::string("multipatch file: expected integer for ") + what + ", got '" +
                    tok + "'");
    }
}

double next_double(std::istream& is, const char* what) {
    const std::string tok = next_token(is, what);
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        IGA_REQUIRE(used == tok.size(), "");
        return v;
    } catch (...) {
        throw Error(std::string("multipatch file: expected number for ") + what + ", got '" + tok +
                    "'");
    }
}

Side next_side(std::istream& is, const char* what) {
    const std::string tok = next_token(is, what);
    const auto s = side_from_name(tok);
    if (!s) throw Error(std::string("multipatch file: unknown side '") + tok + "'");
    return *s;
}

void expect(std::istream& is, const char* keyword) {
    const std::string tok = next_token(is, keyword);
    IGA_REQUIRE(tok == keyword,
                std::string("multipatch file: expected '") + keyword + "', got '" + tok + "'");
}

KnotVector read_knots(std::istream& is, int degree, const char* what) {
    const int n = next_int(is, what);
    std::vector<Dyadic> knots;
    knots.reserve(n);
    for (int i = 0; i < n; ++i) knots.push_back(Dyadic::parse(next_token(is, what)));
    return KnotVector(degree, std::move(knots));
}

}  // namespace

MultiPatchGeometry load_multipatch(std::istream& is) {
    MultiPatchGeometry geo;
    expect(is, "multipatch");
    const int nroots = next_int(is, "root count");
    for (int r = 0; r < nroots; ++r) {
        expect(is, "root");
        RootMap root;
        root.id = next_int(is, "root id");
        IGA_REQUIRE(root.id == r, "multipatch file: root ids must be consecutive from 0");
        expect(is, "degree");
        const int degree = next_int(is, "degree");
        expect(is, "knots_x");
        root.gx = SplineSpace1D(read_knots(is, degree, "knots_x"));
        expect(is, "knots_y");
        root.gy = SplineSpace1D(read_knots(is, degree, "knots_y"));
        expect(is, "control");
        const int n = root.gx.dimension() * root.gy.dimension();
        root.control.resize(n);
        for (int i = 0; i < n; ++i) {
            root.control[i].x = next_double(is, "control point");
            root.control[i].y = next_double(is, "control point");
        }
        geo.roots.push_back(std::move(root));
    }
    const int nifaces = next_int(is, "interface count");
    for (int i = 0; i < nifaces; ++i) {
        expect(is, "interface");
        RootInterface it;
        it.root_a = next_int(is, "interface root");
        it.side_a = next_side(is, "interface side");
        it.root_b = next_int(is, "interface root");
        it.side_b = next_side(is, "interface side");
        const std::string orient = next_token(is, "orientation (same|flip)");
        IGA_REQUIRE(orient == "same" || orient == "flip",
                    "multipatch file: orientation must be 'same' or 'flip'");
        it.reversed = orient == "flip";
        geo.interfaces.push_back(it);
    }
    const int nbnd = next_int(is, "boundary count");
    for (int i = 0; i < nbnd; ++i) {
        expect(is, "boundary");
        BoundaryLabel bl;
        bl.root = next_int(is, "boundary root");
        bl.side = next_side(is, "boundary side");
        bl.label = next_token(is, "boundary label");
        geo.boundary_labels.push_back(std::move(bl));
    }
    return geo;
}

void save_multipatch(const MultiPatchGeometry& geo, std::ostream& os) {
    os << "multipatch " << geo.roots.size() << "\n";
    char buf[64];
    for (const RootMap& root : geo.roots) {
        os << "root " << root.id << " degree " << root.gx.degree() << "\n";
        const auto write_knots = [&](const char* key, const KnotVector& kv) {
            os << key << " " << kv.num_knots();
            for (const Dyadic& k : kv.knots()) os << ' ' << k.str();
            os << "\n";
        };
        write_knots("knots_x", root.gx.knot_vector());
        write_knots("knots_y", root.gy.knot_vector());
        os << "control\n";
        for (const Vec2& c : root.control) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", c.x, c.y);
            os << buf;
        }
    }
    os << geo.interfaces.size() << "\n";
    for (const RootInterface& it : geo.interfaces)
        os << "interface " << it.root_a << ' ' << side_name(it.side_a) << ' ' << it.root_b << ' '
           << side_name(it.side_b) << ' ' << (it.reversed ? "flip" : "same") << "\n";
    os << geo.boundary_labels.size() << "\n";
    for (const BoundaryLabel& bl : geo.boundary_labels)
        os << "boundary " << bl.root << ' ' << side_name(bl.side) << ' ' << bl.label << "\n";
}

}  // namespace iga
