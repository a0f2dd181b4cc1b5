#include "iga/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace iga {

Side opposite(Side s) {
    switch (s) {
        case Side::west: return Side::east;
        case Side::east: return Side::west;
        case Side::south: return Side::north;
        case Side::north: return Side::south;
    }
    throw Error("bad side");
}

const char* side_name(Side s) {
    switch (s) {
        case Side::west: return "west";
        case Side::east: return "east";
        case Side::south: return "south";
        case Side::north: return "north";
    }
    throw Error("bad side");
}

std::optional<Side> side_from_name(const std::string& name) {
    for (Side s : all_sides)
        if (name == side_name(s)) return s;
    return std::nullopt;
}

Vec2 side_point(Side s, double u) {
    switch (s) {
        case Side::west: return {0.0, u};
        case Side::east: return {1.0, u};
        case Side::south: return {u, 0.0};
        case Side::north: return {u, 1.0};
    }
    throw Error("bad side");
}

bool MultiPatchGeometry::is_interface_side(int root, Side side) const {
    for (const RootInterface& it : interfaces)
        if ((it.root_a == root && it.side_a == side) || (it.root_b == root && it.side_b == side))
            return true;
    return false;
}

const std::string* MultiPatchGeometry::boundary_label(int root, Side side) const {
    for (const BoundaryLabel& bl : boundary_labels)
        if (bl.root == root && bl.side == side) return &bl.label;
    return nullptr;
}

DyadicInterval box_side_interval(const ParamBox& box, Side s) {
    return (s == Side::west || s == Side::east) ? box.y : box.x;
}

bool box_on_root_side(const ParamBox& box, Side s) {
    switch (s) {
        case Side::west: return box.x.lo == Dyadic(0);
        case Side::east: return box.x.up == Dyadic(1);
        case Side::south: return box.y.lo == Dyadic(0);
        case Side::north: return box.y.up == Dyadic(1);
    }
    throw Error("bad side");
}

double Patch::grid_size() const {
    return std::max(grid_sizes(sx.knot_vector()).h_max, grid_sizes(sy.knot_vector()).h_max);
}

int Topology::num_interior_vertices() const {
    int n = 0;
    for (const VertexRecord& v : vertices) n += v.on_boundary ? 0 : 1;
    return n;
}

int Topology::num_t_junctions() const {
    int n = 0;
    for (const VertexRecord& v : vertices) n += v.t_junction ? 1 : 0;
    return n;
}

int Topology::max_vertex_valence() const {
    int m = 0;
    for (const VertexRecord& v : vertices) m = std::max(m, static_cast<int>(v.incident.size()));
    return m;
}

bool Topology::patches_share_edge(int pa, int pb) const {
    for (const EdgeRecord& e : edges)
        if ((e.patch_a == pa && e.patch_b == pb) || (e.patch_a == pb && e.patch_b == pa))
            return true;
    return false;
}

std::vector<int> MultiPatch::dof_offsets() const {
    std::vector<int> off(patches.size() + 1, 0);
    for (std::size_t k = 0; k < patches.size(); ++k) off[k + 1] = off[k] + patches[k].num_dofs();
    return off;
}

MapJet eval_root(const RootMap& root, double s, double t, int derivs) {
    const int nx = root.gx.dimension();
    const int dx = std::min(derivs, root.gx.degree());
    const int dy = std::min(derivs, root.gy.degree());
    const BasisTable bx = eval_basis(root.gx, s, dx);
    const BasisTable by = eval_basis(root.gy, t, dy);
    const int px = root.gx.degree(), py = root.gy.degree();

    const auto row = [](const BasisTable& b, int d, int avail) -> const std::vector<double>* {
        static const std::vector<double> zero;
        return d <= avail ? &b.table[d] : &zero;
    };

    MapJet jet;
    // accumulate sum over tensor basis of control * Nx^(a) * Ny^(b)
    const auto accumulate = [&](int a, int b, double out[2]) {
        const std::vector<double>* rx = row(bx, a, dx);
        const std::vector<double>* ry = row(by, b, dy);
        out[0] = out[1] = 0.0;
        if (rx->empty() || ry->empty()) return;
        for (int j = 0; j <= py; ++j) {
            const double wy = (*ry)[j];
            if (wy == 0.0) continue;
            const int base = (by.first_index + j) * nx + bx.first_index;
            for (int i = 0; i <= px; ++i) {
                const double w = (*rx)[i] * wy;
                out[0] += w * root.control[base + i].x;
                out[1] += w * root.control[base + i].y;
            }
        }
    };

    double v[2];
    accumulate(0, 0, v);
    jet.value = {v[0], v[1]};
    if (derivs >= 1) {
        double ds[2], dt[2];
        accumulate(1, 0, ds);
        accumulate(0, 1, dt);
        jet.jac[0][0] = ds[0];
        jet.jac[1][0] = ds[1];
        jet.jac[0][1] = dt[0];
        jet.jac[1][1] = dt[1];
        jet.det = jet.jac[0][0] * jet.jac[1][1] - jet.jac[0][1] * jet.jac[1][0];
    }
    if (derivs >= 2) {
        double ss[2], st[2], tt[2];
        accumulate(2, 0, ss);
        accumulate(1, 1, st);
        accumulate(0, 2, tt);
        for (int c = 0; c < 2; ++c) {
            jet.second[c][0] = ss[c];
            jet.second[c][1] = st[c];
            jet.second[c][2] = tt[c];
        }
    }
    return jet;
}

MapJet eval_map(const MultiPatch& mp, int patch_id, double s, double t, int derivs) {
    const Patch& patch = mp.patches.at(patch_id);
    const RootMap& root = mp.geo.roots.at(patch.root);
    const double lx = patch.box.x.length().to_double();
    const double ly = patch.box.y.length().to_double();
    const double u = patch.box.x.lo.to_double() + s * lx;
    const double v = patch.box.y.lo.to_double() + t * ly;
    MapJet jet = eval_root(root, u, v, derivs);
    if (derivs >= 1) {
        for (int c = 0; c < 2; ++c) {
            jet.jac[c][0] *= lx;
            jet.jac[c][1] *= ly;
        }
        jet.det = jet.jac[0][0] * jet.jac[1][1] - jet.jac[0][1] * jet.jac[1][0];
    }
    if (derivs >= 2) {
        for (int c = 0; c < 2; ++c) {
            jet.second[c][0] *= lx * lx;
            jet.second[c][1] *= lx * ly;
            jet.second[c][2] *= ly * ly;
        }
    }
    return jet;
}

namespace {

void validate_geometry(const MultiPatchGeometry& geo) {
    for (std::size_t r = 0; r < geo.roots.size(); ++r) {
        const RootMap& root = geo.roots[r];
        IGA_REQUIRE(root.id == static_cast<int>(r), "geometry: root ids must be 0..K-1 in order");
        IGA_REQUIRE(static_cast<int>(root.control.size()) ==
                        root.gx.dimension() * root.gy.dimension(),
                    "geometry: control net size does not match knot vectors");
    }
    const int nroots = static_cast<int>(geo.roots.size());
    for (const RootInterface& it : geo.interfaces) {
        IGA_REQUIRE(it.root_a >= 0 && it.root_a < nroots && it.root_b >= 0 && it.root_b < nroots,
                    "geometry: interface root out of range");
        IGA_REQUIRE(it.root_a != it.root_b, "geometry: self-interface not supported");
    }
    // physical consistency of the declared interfaces
    for (const RootInterface& it : geo.interfaces) {
        for (int q = 0; q <= 4; ++q) {
            const double u = q / 4.0;
            const double ub = it.reversed ? 1.0 - u : u;
            const Vec2 pa = side_point(it.side_a, u);
            const Vec2 pb = side_point(it.side_b, ub);
            const Vec2 xa = eval_root(geo.roots[it.root_a], pa.x, pa.y, 0).value;
            const Vec2 xb = eval_root(geo.roots[it.root_b], pb.x, pb.y, 0).value;
            IGA_REQUIRE(norm(xa - xb) <= 1e-9,
                        "geometry: interface sides do not coincide physically");
        }
    }
}

}  // namespace

MultiPatch make_initial(MultiPatchGeometry geo, int degree, int spans_per_direction) {
    validate_geometry(geo);
    MultiPatch mp;
    mp.geo = std::move(geo);
    const SplineSpace1D space = make_uniform_space(degree, spans_per_direction);
    for (std::size_t r = 0; r < mp.geo.roots.size(); ++r) {
        Patch p;
        p.id = static_cast<int>(r);
        p.root = static_cast<int>(r);
        p.sx = space;
        p.sy = space;
        p.level = 0;
        mp.patches.push_back(std::move(p));
    }
    mp.topology = rebuild_topology(mp);
    return mp;
}

namespace {

std::array<Patch, 4> make_children(const Patch& parent) {
    const Dyadic mx = Dyadic::midpoint(parent.box.x.lo, parent.box.x.up);
    const Dyadic my = Dyadic::midpoint(parent.box.y.lo, parent.box.y.up);
    const KnotVector rx = dyadic_refine(parent.sx.knot_vector());
    const KnotVector ry = dyadic_refine(parent.sy.knot_vector());
    const SplineSpace1D rsx(rx), rsy(ry);
    const Dyadic h = Dyadic::make(1, 1);
    const SplineSpace1D lo_x = restrict_to_subinterval(rsx, Dyadic(0), h);
    const SplineSpace1D up_x = restrict_to_subinterval(rsx, h, Dyadic(1));
    const SplineSpace1D lo_y = restrict_to_subinterval(rsy, Dyadic(0), h);
    const SplineSpace1D up_y = restrict_to_subinterval(rsy, h, Dyadic(1));

    std::array<Patch, 4> kids;
    const DyadicInterval xlo{parent.box.x.lo, mx}, xup{mx, parent.box.x.up};
    const DyadicInterval ylo{parent.box.y.lo, my}, yup{my, parent.box.y.up};
    kids[0].box = {xlo, ylo};
    kids[1].box = {xup, ylo};
    kids[2].box = {xlo, yup};
    kids[3].box = {xup, yup};
    kids[0].sx = lo_x;
    kids[1].sx = up_x;
    kids[2].sx = lo_x;
    kids[3].sx = up_x;
    kids[0].sy = lo_y;
    kids[1].sy = lo_y;
    kids[2].sy = up_y;
    kids[3].sy = up_y;
    for (Patch& k : kids) {
        k.root = parent.root;
        k.level = parent.level + 1;
    }
    return kids;
}

}  // namespace

MultiPatch split_patches(const MultiPatch& mp, std::vector<int> patch_ids) {
    std::set<int> marked(patch_ids.begin(), patch_ids.end());
    for (int id : marked)
        IGA_REQUIRE(id >= 0 && id < mp.num_patches(), "split: patch id out of range");
    MultiPatch out;
    out.geo = mp.geo;
    for (const Patch& p : mp.patches) {
        if (marked.count(p.id)) {
            for (Patch& k : make_children(p)) {
                k.id = static_cast<int>(out.patches.size());
                out.patches.push_back(std::move(k));
            }
        } else {
            Patch copy = p;
            copy.id = static_cast<int>(out.patches.size());
            out.patches.push_back(std::move(copy));
        }
    }
    out.topology = rebuild_topology(out);
    return out;
}

MultiPatch split_patch(const MultiPatch& mp, int patch_id) {
    return split_patches(mp, {patch_id});
}

namespace {

DyadicInterval map_interval(const DyadicInterval& iv, bool mirror) {
    if (!mirror) return iv;
    return {Dyadic(1) - iv.up, Dyadic(1) - iv.lo};
}

/// All equivalent representations of a physical point across root interfaces.
std::vector<PointKey> point_closure(const MultiPatchGeometry& geo, PointKey start) {
    std::set<PointKey> seen{start};
    std::vector<PointKey> queue{start};
    const auto side_coord = [](const PointKey& p, Side s) -> std::optional<Dyadic> {
        switch (s) {
            case Side::west:
                if (p.x == Dyadic(0)) return p.y;
                break;
            case Side::east:
                if (p.x == Dyadic(1)) return p.y;
                break;
            case Side::south:
                if (p.y == Dyadic(0)) return p.x;
                break;
            case Side::north:
                if (p.y == Dyadic(1)) return p.x;
                break;
        }
        return std::nullopt;
    };
    const auto on_side = [](Side s, Dyadic u) -> PointKey {
        PointKey p;
        switch (s) {
            case Side::west: p.x = Dyadic(0), p.y = u; break;
            case Side::east: p.x = Dyadic(1), p.y = u; break;
            case Side::south: p.x = u, p.y = Dyadic(0); break;
            case Side::north: p.x = u, p.y = Dyadic(1); break;
        }
        return p;
    };
    while (!queue.empty()) {
        const PointKey p = queue.back();
        queue.pop_back();
        for (const RootInterface& it : geo.interfaces) {
            for (int dir = 0; dir < 2; ++dir) {
                const int from_root = dir == 0 ? it.root_a : it.root_b;
                const Side from_side = dir == 0 ? it.side_a : it.side_b;
                const int to_root = dir == 0 ? it.root_b : it.root_a;
                const Side to_side = dir == 0 ? it.side_b : it.side_a;
                if (p.root != from_root) continue;
                const auto u = side_coord(p, from_side);
                if (!u) continue;
                PointKey q = on_side(to_side, it.reversed ? Dyadic(1) - *u : *u);
                q.root = to_root;
                if (seen.insert(q).second) queue.push_back(q);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

Topology rebuild_topology(const MultiPatch& mp) {
    Topology topo;
    const int np = mp.num_patches();

    // Same-root adjacency from exact box arithmetic.
    for (int i = 0; i < np; ++i) {
        for (int j = i + 1; j < np; ++j) {
            const Patch& p = mp.patches[i];
            const Patch& q = mp.patches[j];
            if (p.root != q.root) continue;
            struct Rel {
                Side sp, sq;
                bool x_dir;
            };
            const Rel rels[4] = {{Side::east, Side::west, true},
                                 {Side::west, Side::east, true},
                                 {Side::north, Side::south, false},
                                 {Side::south, Side::north, false}};
            for (const Rel& r : rels) {
                const DyadicInterval& pn = r.x_dir ? p.box.x : p.box.y;
                const DyadicInterval& qn = r.x_dir ? q.box.x : q.box.y;
                const bool touch =
                    (r.sp == Side::east || r.sp == Side::north) ? pn.up == qn.lo : pn.lo == qn.up;
                if (!touch) continue;
                const DyadicInterval pt = box_side_interval(p.box, r.sp);
                const DyadicInterval qt = box_side_interval(q.box, r.sq);
                const auto ov = intersect(pt, qt);
                if (!ov) continue;
                EdgeRecord e;
                e.patch_a = p.id;
                e.side_a = r.sp;
                e.span_a = {pt.to_unit(ov->lo), pt.to_unit(ov->up)};
                e.patch_b = q.id;
                e.side_b = r.sq;
                e.span_b = {qt.to_unit(ov->lo), qt.to_unit(ov->up)};
                e.reversed = false;
                topo.edges.push_back(e);
            }
        }
    }

    // Cross-root adjacency through the declared interfaces.
    for (const RootInterface& it : mp.geo.interfaces) {
        for (const Patch& p : mp.patches) {
            if (p.root != it.root_a || !box_on_root_side(p.box, it.side_a)) continue;
            const DyadicInterval ia = box_side_interval(p.box, it.side_a);
            for (const Patch& q : mp.patches) {
                if (q.root != it.root_b || !box_on_root_side(q.box, it.side_b)) continue;
                const DyadicInterval ib = box_side_interval(q.box, it.side_b);
                const auto ov = intersect(ia, map_interval(ib, it.reversed));
                if (!ov) continue;
                const DyadicInterval ov_b = map_interval(*ov, it.reversed);
                EdgeRecord e;
                e.patch_a = p.id;
                e.side_a = it.side_a;
                e.span_a = {ia.to_unit(ov->lo), ia.to_unit(ov->up)};
                e.patch_b = q.id;
                e.side_b = it.side_b;
                e.span_b = {ib.to_unit(ov_b.lo), ib.to_unit(ov_b.up)};
                e.reversed = it.reversed;
                if (e.patch_a > e.patch_b) {
                    std::swap(e.patch_a, e.patch_b);
                    std::swap(e.side_a, e.side_b);
                    std::swap(e.span_a, e.span_b);
                }
                topo.edges.push_back(e);
            }
        }
    }

    std::sort(topo.edges.begin(), topo.edges.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
        if (a.patch_a != b.patch_a) return a.patch_a < b.patch_a;
        if (a.side_a != b.side_a) return static_cast<int>(a.side_a) < static_cast<int>(b.side_a);
        if (a.span_a.lo != b.span_a.lo) return a.span_a.lo < b.span_a.lo;
        return a.patch_b < b.patch_b;
    });

    // Boundary sides and side-coverage validation.
    for (const Patch& p : mp.patches) {
        for (Side s : all_sides) {
            const bool on_root_side = box_on_root_side(p.box, s);
            if (on_root_side && !mp.geo.is_interface_side(p.root, s)) {
                const std::string* label = mp.geo.boundary_label(p.root, s);
                topo.boundary_sides.push_back({p.id, s, label ? *label : std::string()});
                continue;
            }
            // interior side or on an interface: must be tiled by edge spans
            std::vector<DyadicInterval> spans;
            for (const EdgeRecord& e : topo.edges) {
                if (e.patch_a == p.id && e.side_a == s) spans.push_back(e.span_a);
                if (e.patch_b == p.id && e.side_b == s) spans.push_back(e.span_b);
            }
            std::sort(spans.begin(), spans.end(),
                      [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo < b.lo; });
            Dyadic cursor(0);
            bool ok = true;
            for (const DyadicInterval& sp : spans) {
                if (sp.lo != cursor) {
                    ok = false;
                    break;
                }
                cursor = sp.up;
            }
            ok = ok && cursor == Dyadic(1);
            IGA_REQUIRE(ok, std::string("topology: side ") + side_name(s) + " of patch " +
                                std::to_string(p.id) +
                                " is neither a labeled boundary nor covered by interface edges");
        }
    }

    // Vertices: canonicalized patch-corner classes.
    std::map<PointKey, std::vector<PointKey>> classes;
    for (const Patch& p : mp.patches) {
        const Dyadic xs[2] = {p.box.x.lo, p.box.x.up};
        const Dyadic ys[2] = {p.box.y.lo, p.box.y.up};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                PointKey key{p.root, xs[a], ys[b]};
                auto reps = point_closure(mp.geo, key);
                PointKey canon = *std::min_element(reps.begin(), reps.end());
                classes.emplace(canon, std::move(reps));
            }
        }
    }

    for (const auto& [canon, reps] : classes) {
        VertexRecord v;
        v.key = canon;
        v.on_boundary = false;
        for (const PointKey& rep : reps) {
            const auto check = [&](Side s, bool on) {
                if (on && !mp.geo.is_interface_side(rep.root, s)) v.on_boundary = true;
            };
            check(Side::west, rep.x == Dyadic(0));
            check(Side::east, rep.x == Dyadic(1));
            check(Side::south, rep.y == Dyadic(0));
            check(Side::north, rep.y == Dyadic(1));
            for (const Patch& p : mp.patches) {
                if (p.root != rep.root) continue;
                if (!(p.box.x.contains(rep.x) && p.box.y.contains(rep.y))) continue;
                const bool on_x = rep.x == p.box.x.lo || rep.x == p.box.x.up;
                const bool on_y = rep.y == p.box.y.lo || rep.y == p.box.y.up;
                IGA_REQUIRE(on_x || on_y, "topology: corner point inside a patch box");
                v.incident.push_back({p.id, on_x && on_y});
            }
        }
        std::sort(v.incident.begin(), v.incident.end(),
                  [](const VertexIncidence& a, const VertexIncidence& b) {
                      return a.patch < b.patch;
                  });
        v.incident.erase(std::unique(v.incident.begin(), v.incident.end(),
                                     [](const VertexIncidence& a, const VertexIncidence& b) {
                                         return a.patch == b.patch;
                                     }),
                         v.incident.end());
        bool has_side_point = false;
        for (const VertexIncidence& inc : v.incident) has_side_point |= !inc.at_corner;
        v.t_junction = !v.on_boundary && has_side_point;
        v.position = eval_root(mp.geo.roots[canon.root], canon.x.to_double(), canon.y.to_double(), 0)
                         .value;
        topo.vertices.push_back(std::move(v));
    }

    return topo;
}

std::vector<AssumptionViolation> validate_assumptions(const MultiPatch& mp) {
    std::vector<AssumptionViolation> out;
    const Topology& topo = mp.topology;

    // Assumption 2: every shared segment is a full side of at least one patch.
    for (const EdgeRecord& e : topo.edges) {
        if (!e.full_side_a() && !e.full_side_b())
            out.push_back({2, "edge between patches " + std::to_string(e.patch_a) + " and " +
                                  std::to_string(e.patch_b) +
                                  " is not a full side of either patch"});
    }

    // Assumption 3: T-junctions are interior and join exactly three patches
    // that pairwise share edges.
    for (const VertexRecord& v : topo.vertices) {
        bool has_side_point = false;
        for (const VertexIncidence& inc : v.incident) has_side_point |= !inc.at_corner;
        if (!has_side_point) continue;
        if (v.on_boundary) {
            out.push_back({3, "T-junction located on the domain boundary"});
            continue;
        }
        int corners = 0, sides = 0;
        for (const VertexIncidence& inc : v.incident) (inc.at_corner ? corners : sides)++;
        if (corners != 2 || sides != 1) {
            out.push_back({3, "T-junction with unsupported patch configuration (" +
                                  std::to_string(corners) + " corner / " + std::to_string(sides) +
                                  " side incidences)"});
            continue;
        }
        for (std::size_t i = 0; i < v.incident.size(); ++i)
            for (std::size_t j = i + 1; j < v.incident.size(); ++j)
                if (!topo.patches_share_edge(v.incident[i].patch, v.incident[j].patch))
                    out.push_back({3, "patches " + std::to_string(v.incident[i].patch) + " and " +
                                          std::to_string(v.incident[j].patch) +
                                          " meet in a T-junction but share no edge"});
    }

    // Assumption 4: nested trace spaces on every edge.
    for (const EdgeRecord& e : topo.edges) {
        const auto ka = side_trace_interior_knots(mp.patches[e.patch_a], e.side_a, e.span_a, false);
        const auto kb =
            side_trace_interior_knots(mp.patches[e.patch_b], e.side_b, e.span_b, e.reversed);
        const auto subset = [](const std::vector<Dyadic>& a, const std::vector<Dyadic>& b) {
            std::size_t j = 0;
            for (const Dyadic& k : a) {
                while (j < b.size() && b[j] < k) ++j;
                if (j >= b.size() || b[j] != k) return false;
                ++j;
            }
            return true;
        };
        if (!subset(ka, kb) && !subset(kb, ka))
            out.push_back({4, "trace spaces on edge between patches " + std::to_string(e.patch_a) +
                                  " and " + std::to_string(e.patch_b) + " are not nested"});
    }

    // Assumption 5: pre-image of every edge at least p times the grid size.
    for (const EdgeRecord& e : topo.edges) {
        const auto check = [&](int patch_id, const DyadicInterval& span) {
            const Patch& p = mp.patches[patch_id];
            const int deg = p.sx.degree();
            if (span.length().to_double() + 1e-12 < deg * p.grid_size())
                out.push_back({5, "edge pre-image on patch " + std::to_string(patch_id) +
                                      " shorter than degree times the grid size"});
        };
        check(e.patch_a, e.span_a);
        check(e.patch_b, e.span_b);
    }

    return out;
}

double patch_extent(const MultiPatch& mp, int patch_id) {
    Vec2 pts[25];
    int n = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) pts[n++] = eval_map(mp, patch_id, i / 4.0, j / 4.0, 0).value;
    double h = 0.0;
    for (int i = 0; i < 25; ++i)
        for (int j = i + 1; j < 25; ++j) h = std::max(h, norm(pts[i] - pts[j]));
    return h;
}

double patch_physical_grid_size(const MultiPatch& mp, int patch_id) {
    return patch_extent(mp, patch_id) * mp.patches[patch_id].grid_size();
}

std::vector<int> jacobian_sign_violations(const MultiPatch& mp) {
    std::vector<int> bad;
    for (const Patch& p : mp.patches) {
        int sign = 0;
        bool ok = true;
        for (int i = 0; i < 10 && ok; ++i) {
            for (int j = 0; j < 10 && ok; ++j) {
                const MapJet jet = eval_map(mp, p.id, (i + 0.5) / 10.0, (j + 0.5) / 10.0, 1);
                if (std::abs(jet.det) <= 1e-14) {
                    ok = false;
                    break;
                }
                const int s = jet.det > 0 ? 1 : -1;
                if (sign == 0)
                    sign = s;
                else if (sign != s)
                    ok = false;
            }
        }
        if (!ok) bad.push_back(p.id);
    }
    return bad;
}

const SplineSpace1D& side_space(const Patch& patch, Side s) {
    return (s == Side::west || s == Side::east) ? patch.sy : patch.sx;
}

std::vector<Dyadic> side_trace_interior_knots(const Patch& patch, Side s,
                                              const DyadicInterval& span, bool mirror) {
    const KnotVector& kv = side_space(patch, s).knot_vector();
    std::vector<Dyadic> out;
    for (const Dyadic& k : kv.knots()) {
        if (span.lo < k && k < span.up) {
            const Dyadic u = span.to_unit(k);
            out.push_back(mirror ? Dyadic(1) - u : u);
        }
    }
    if (mirror) std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace iga
