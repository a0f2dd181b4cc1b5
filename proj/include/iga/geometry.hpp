#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iga/dyadic.hpp"
#include "iga/splines.hpp"

namespace iga {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

enum class Side : int { west = 0, east = 1, south = 2, north = 3 };

Side opposite(Side s);
const char* side_name(Side s);
std::optional<Side> side_from_name(const std::string& name);
constexpr std::array<Side, 4> all_sides{Side::west, Side::east, Side::south, Side::north};

/// Point on a patch side at side coordinate u (ascending y for west/east,
/// ascending x for south/north).
Vec2 side_point(Side s, double u);

/// Tensor-product spline geometry map for one root patch.
struct RootMap {
    int id = 0;
    SplineSpace1D gx, gy;
    std::vector<Vec2> control;  // gx.dimension() * gy.dimension(), x index fastest

    int degree() const { return gx.degree(); }
};

/// Root interface: side_a of root_a coincides with side_b of root_b.
/// reversed means the side coordinates run in opposite directions.
struct RootInterface {
    int root_a = 0;
    Side side_a = Side::west;
    int root_b = 0;
    Side side_b = Side::west;
    bool reversed = false;
};

struct BoundaryLabel {
    int root = 0;
    Side side = Side::west;
    std::string label;
};

/// Root-level description of the computational domain; this is the content
/// of the multi-patch input file.
struct MultiPatchGeometry {
    std::vector<RootMap> roots;
    std::vector<RootInterface> interfaces;
    std::vector<BoundaryLabel> boundary_labels;

    bool is_interface_side(int root, Side side) const;
    const std::string* boundary_label(int root, Side side) const;
};

/// Axis-aligned dyadic sub-box of the unit parameter square.
struct ParamBox {
    DyadicInterval x{Dyadic(0), Dyadic(1)};
    DyadicInterval y{Dyadic(0), Dyadic(1)};
};

/// Dyadic interval of a box along the direction of a side.
DyadicInterval box_side_interval(const ParamBox& box, Side s);
/// Whether the box side lies on the corresponding side of the root domain.
bool box_on_root_side(const ParamBox& box, Side s);

struct Patch {
    int id = 0;
    int root = 0;
    ParamBox box;
    SplineSpace1D sx, sy;  // spline spaces on the patch's own unit domain
    int level = 0;

    int num_dofs() const { return sx.dimension() * sy.dimension(); }
    /// Parameter grid size: largest knot span over both directions.
    double grid_size() const;
};

/// Shared edge segment between two patches (patch_a < patch_b).
/// Spans are given in each patch's own side coordinate; reversed means
/// span_a.lo corresponds to span_b.up.
struct EdgeRecord {
    int patch_a = 0;
    Side side_a = Side::west;
    DyadicInterval span_a;
    int patch_b = 0;
    Side side_b = Side::west;
    DyadicInterval span_b;
    bool reversed = false;

    bool full_side_a() const { return span_a.lo == Dyadic(0) && span_a.up == Dyadic(1); }
    bool full_side_b() const { return span_b.lo == Dyadic(0) && span_b.up == Dyadic(1); }
    int other(int patch) const { return patch == patch_a ? patch_b : patch_a; }
};

/// Identity of a physical point, canonicalized across root interfaces.
struct PointKey {
    int root = 0;
    Dyadic x, y;

    bool operator==(const PointKey& o) const { return root == o.root && x == o.x && y == o.y; }
    bool operator<(const PointKey& o) const {
        if (root != o.root) return root < o.root;
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

struct VertexIncidence {
    int patch = 0;
    bool at_corner = false;  // false: strictly inside a side of the patch
};

/// A patch-corner equivalence class. Interior classes are the paper's
/// vertices; boundary classes are kept for bookkeeping and flagged.
struct VertexRecord {
    PointKey key;
    std::vector<VertexIncidence> incident;
    bool on_boundary = false;
    bool t_junction = false;
    Vec2 position;
};

struct BoundarySideRecord {
    int patch = 0;
    Side side = Side::west;
    std::string label;
};

struct Topology {
    std::vector<EdgeRecord> edges;
    std::vector<VertexRecord> vertices;
    std::vector<BoundarySideRecord> boundary_sides;

    int num_interior_vertices() const;
    int num_t_junctions() const;
    /// Largest number of patches meeting at a single vertex.
    int max_vertex_valence() const;
    bool patches_share_edge(int pa, int pb) const;
};

struct MultiPatch {
    MultiPatchGeometry geo;
    std::vector<Patch> patches;
    Topology topology;

    int num_patches() const { return static_cast<int>(patches.size()); }
    /// Flat patch-wise DOF offsets; offsets[k] is the first DOF of patch k,
    /// offsets.back() the total count.
    std::vector<int> dof_offsets() const;
};

/// Geometry map value with derivatives.
struct MapJet {
    Vec2 value;
    double jac[2][2] = {{0, 0}, {0, 0}};  // jac[component][direction]
    double det = 0.0;
    // second[component][k], k = 0: d^2/ds^2, 1: d^2/ds dt, 2: d^2/dt^2
    double second[2][3] = {{0, 0, 0}, {0, 0, 0}};
};

MapJet eval_root(const RootMap& root, double s, double t, int derivs);
/// Composed map of a patch: affine box re-parameterization then root map.
MapJet eval_map(const MultiPatch& mp, int patch_id, double s, double t, int derivs);

/// One patch per root, spaces with the given degree and span count.
MultiPatch make_initial(MultiPatchGeometry geo, int degree, int spans_per_direction);

/// Replace the patch by 4 children (dyadic space refinement + 4-way split),
/// renumber, and rebuild the topology.
MultiPatch split_patch(const MultiPatch& mp, int patch_id);
/// Split a batch of patches with a single topology rebuild.
MultiPatch split_patches(const MultiPatch& mp, std::vector<int> patch_ids);

/// Combinatorial topology from boxes and root interfaces; never uses
/// floating-point geometric matching.
Topology rebuild_topology(const MultiPatch& mp);

struct AssumptionViolation {
    int assumption = 0;  // 2..5
    std::string message;
};

/// Check Assumptions 2-5 of the discretization. Empty result means all hold.
std::vector<AssumptionViolation> validate_assumptions(const MultiPatch& mp);

/// Characteristic physical patch size: max pairwise distance of map samples
/// on a 5x5 parameter grid.
double patch_extent(const MultiPatch& mp, int patch_id);
/// Physical grid size h_k = H_k * parameter grid size.
double patch_physical_grid_size(const MultiPatch& mp, int patch_id);

/// Sign-sampling bijectivity check: Jacobian determinant on a 10x10 grid.
/// Returns patches with a sign change or near-zero determinant.
std::vector<int> jacobian_sign_violations(const MultiPatch& mp);

/// Univariate space along the side direction of a patch.
const SplineSpace1D& side_space(const Patch& patch, Side s);
/// Knots of the side space restricted to the given span, mapped to the
/// canonical edge coordinate in [0,1] (mirrored when mirror is set);
/// interior knots only, with multiplicity.
std::vector<Dyadic> side_trace_interior_knots(const Patch& patch, Side s,
                                              const DyadicInterval& span, bool mirror);

/// Text format round-trip for the root-level geometry.
MultiPatchGeometry load_multipatch(std::istream& is);
void save_multipatch(const MultiPatchGeometry& geo, std::ostream& os);

}  // namespace iga
