#pragma once

#include "qpskew/involution.hpp"
#include "qpskew/quiver.hpp"
#include "qpskew/skew.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace qpskew {

/// Combinatorial ideal triangulation.  Triangles list their edges in
/// counterclockwise order; self-folded triangles carry the loop once and the
/// radius twice, declared by a `selffold` line.
///
/// Text format, one declaration per line:
///   triangle <id> <e1> <e2> <e3>
///   boundary <edge>
///   selffold <triangle> <loopedge> <radiusedge> <puncture>
class Triangulation {
public:
    struct Tri {
        std::string id;
        std::array<int, 3> edges;
    };
    struct Fold {
        int tri;
        int loop_edge;
        int radius_edge;
        std::string puncture;
    };

    int add_edge(const std::string& id); // idempotent
    int add_triangle(const std::string& id, const std::array<std::string, 3>& edges);
    void mark_boundary(const std::string& edge);
    void add_selffold(const std::string& tri, const std::string& loop, const std::string& radius,
                      const std::string& puncture);

    int num_edges() const { return static_cast<int>(edge_ids_.size()); }
    int num_triangles() const { return static_cast<int>(tris_.size()); }
    const std::string& edge_id(int e) const { return edge_ids_[e]; }
    bool is_boundary(int e) const { return boundary_[e]; }
    const Tri& tri(int t) const { return tris_[t]; }
    const std::vector<Tri>& triangles() const { return tris_; }
    const std::vector<Fold>& folds() const { return folds_; }
    int edge_index(const std::string& id) const;
    std::optional<int> find_edge(const std::string& id) const;
    int tri_index(const std::string& id) const;

    bool tri_is_selffolded(int t) const;
    /// Fold index if `edge` is the loop (resp. radius) of one, else -1.
    int fold_of_loop(int edge) const;
    int fold_of_radius(int edge) const;

private:
    std::vector<std::string> edge_ids_;
    std::vector<bool> boundary_;
    std::vector<Tri> tris_;
    std::vector<Fold> folds_;
    std::unordered_map<std::string, int> edge_index_;
    std::unordered_map<std::string, int> tri_index_;
};

Triangulation parse_triangulation(std::istream& in);
Triangulation parse_triangulation_text(const std::string& text);
std::string print_triangulation(const Triangulation& t);

/// Invariant report from walking the corner structure.
/// Errors: NonManifoldEdge, PunctureNotSelfFolded, AdjacentSelfFoldedPair,
/// OncePuncturedMonogon, plus structural errors from malformed selffolds.
struct SurfaceInfo {
    int vertices = 0;
    int internal_arcs = 0;
    int boundary_edges = 0;
    int triangles = 0;
    int euler = 0;
    int boundary_components = 0;
    std::vector<int> marked_per_boundary; // sorted descending
    int punctures = 0;
    int marked_points = 0; // on the boundary
    bool connected = true;
    int genus = 0; // of the connected surface; total when disconnected
};

SurfaceInfo validate_triangulation(const Triangulation& t);

enum class BlockType { Zero, I, II, IIIa, IIIb, IV };
std::string block_type_name(BlockType t);

struct Block {
    BlockType type;
    int triangle;       // the non-self-folded triangle
    int fold = -1;      // attached self-folded triangle, for III/IV
};

std::vector<Block> block_decompose(const Triangulation& t);

/// Adjacency quiver with potential and the exchange involution on it.
/// Vertices are the internal arcs.  Arrows follow the clockwise convention:
/// a ccw triple (a, b, c) yields b->a, c->b, a->c between internal arcs,
/// with arrows through a loop duplicated through its radius.
struct AdjacencyResult {
    QuiverWithPotential qp;
    Involution sigma;
    std::vector<int> vertex_arc; // quiver vertex -> edge index
    struct ArrowInfo {
        int tri;        // generating triangle
        int pair_k;     // which of the three ccw slot pairs
        bool via_radius; // companion arrow through the radius
        int companion;  // index of the loop/radius partner, or -1
    };
    std::vector<ArrowInfo> arrow_info;

    int vertex_of_arc(int edge) const;
};

AdjacencyResult adjacency_qp(const Triangulation& t);

/// The unpunctured double cover: cut each self-folded triangle along its
/// folded side, take two copies, glue them back along the new segments with
/// a reversal.  Cover arcs are named <arc>+ / <arc>-, new arcs p<puncture>.
struct DoubleCover {
    Triangulation cover;
    std::vector<int> sigma_edge;   // cover arc involution; fixes the new arcs
    std::vector<int> proj_edge;    // cover edge -> base edge (new arc -> radius)
    std::vector<int> fold_arc;     // fold index -> cover edge of its new arc
    std::vector<std::pair<int, int>> tri_origin; // cover tri -> (base tri, sheet)

    AdjacencyResult base_qp;
    AdjacencyResult cover_qp;
    SkewResult skew;               // skew of the base adjacency QP
    Involution cover_quiver_sigma; // induced involution on the cover quiver

    // Canonical renaming between the two quivers, verified at construction.
    std::vector<int> skew_vertex_to_cover; // skew vertex -> cover-QP vertex
    std::vector<int> skew_arrow_to_cover;  // skew arrow -> cover-QP arrow
    std::vector<Rat> rescale;              // right-equivalence witness per cover arrow
};

/// Errors: CrossCheckFailure when the cover's QP does not match the skew of
/// the base QP under the canonical renaming (up to arrow rescaling).
DoubleCover double_cover(const Triangulation& t);

SurfaceInfo surface_invariants(const Triangulation& t);

} // namespace qpskew
