#include "qpskew/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace qpskew {

int Triangulation::add_edge(const std::string& id) {
    auto it = edge_index_.find(id);
    if (it != edge_index_.end()) return it->second;
    edge_ids_.push_back(id);
    boundary_.push_back(false);
    int idx = static_cast<int>(edge_ids_.size()) - 1;
    edge_index_[id] = idx;
    return idx;
}

int Triangulation::add_triangle(const std::string& id, const std::array<std::string, 3>& edges) {
    if (tri_index_.count(id)) throw Error("DuplicateTriangle", "triangle '" + id + "' declared twice");
    Tri t{id, {add_edge(edges[0]), add_edge(edges[1]), add_edge(edges[2])}};
    tris_.push_back(t);
    int idx = static_cast<int>(tris_.size()) - 1;
    tri_index_[id] = idx;
    return idx;
}

void Triangulation::mark_boundary(const std::string& edge) { boundary_[add_edge(edge)] = true; }

void Triangulation::add_selffold(const std::string& tri, const std::string& loop,
                                 const std::string& radius, const std::string& puncture) {
    folds_.push_back(Fold{tri_index(tri), edge_index(loop), edge_index(radius), puncture});
}

int Triangulation::edge_index(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw Error("UnknownEdge", "no edge '" + id + "'");
    return it->second;
}

std::optional<int> Triangulation::find_edge(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

int Triangulation::tri_index(const std::string& id) const {
    auto it = tri_index_.find(id);
    if (it == tri_index_.end()) throw Error("UnknownTriangle", "no triangle '" + id + "'");
    return it->second;
}

bool Triangulation::tri_is_selffolded(int t) const {
    for (const auto& f : folds_)
        if (f.tri == t) return true;
    return false;
}

int Triangulation::fold_of_loop(int edge) const {
    for (size_t k = 0; k < folds_.size(); ++k)
        if (folds_[k].loop_edge == edge) return static_cast<int>(k);
    return -1;
}

int Triangulation::fold_of_radius(int edge) const {
    for (size_t k = 0; k < folds_.size(); ++k)
        if (folds_[k].radius_edge == edge) return static_cast<int>(k);
    return -1;
}

Triangulation parse_triangulation(std::istream& in) {
    Triangulation t;
    std::string line;
    int lineno = 0;
    std::vector<std::array<std::string, 4>> fold_lines;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ss >> tok) {
            if (tok[0] == '#') break;
            toks.push_back(tok);
        }
        if (toks.empty()) continue;
        if (toks[0] == "triangle" && toks.size() == 5) {
            t.add_triangle(toks[1], {toks[2], toks[3], toks[4]});
        } else if (toks[0] == "boundary" && toks.size() == 2) {
            t.mark_boundary(toks[1]);
        } else if (toks[0] == "selffold" && toks.size() == 5) {
            fold_lines.push_back({toks[1], toks[2], toks[3], toks[4]});
        } else {
            throw Error("ParseError", "line " + std::to_string(lineno) + ": bad declaration");
        }
    }
    for (const auto& f : fold_lines) t.add_selffold(f[0], f[1], f[2], f[3]);
    return t;
}

Triangulation parse_triangulation_text(const std::string& text) {
    std::istringstream ss(text);
    return parse_triangulation(ss);
}

std::string print_triangulation(const Triangulation& t) {
    std::ostringstream out;
    for (const auto& tri : t.triangles())
        out << "triangle " << tri.id << " " << t.edge_id(tri.edges[0]) << " "
            << t.edge_id(tri.edges[1]) << " " << t.edge_id(tri.edges[2]) << "\n";
    for (int e = 0; e < t.num_edges(); ++e)
        if (t.is_boundary(e)) out << "boundary " << t.edge_id(e) << "\n";
    for (const auto& f : t.folds())
        out << "selffold " << t.tri(f.tri).id << " " << t.edge_id(f.loop_edge) << " "
            << t.edge_id(f.radius_edge) << " " << f.puncture << "\n";
    return out.str();
}

namespace {

/// Corner structure: slot s = 3*tri + k traverses edge k of the triangle in
/// ccw order.  mate(s) is the other occurrence of the same edge; around a
/// vertex, slot s (ending at the vertex) rotates to mate(next(s)).
struct Corners {
    std::vector<std::vector<int>> slots_of_edge;
    std::vector<int> mate; // -1 for boundary slots
    std::vector<int> vertex_of_slot;
    int num_vertices = 0;

    static int next(int s) { return (s / 3) * 3 + (s % 3 + 1) % 3; }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

Corners build_corners(const Triangulation& t) {
    Corners c;
    c.slots_of_edge.resize(t.num_edges());
    int nslots = 3 * t.num_triangles();
    for (int tri = 0; tri < t.num_triangles(); ++tri)
        for (int k = 0; k < 3; ++k) c.slots_of_edge[t.tri(tri).edges[k]].push_back(3 * tri + k);
    for (int e = 0; e < t.num_edges(); ++e) {
        size_t n = c.slots_of_edge[e].size();
        if (t.is_boundary(e)) {
            if (n != 1)
                throw Error("NonManifoldEdge",
                            "boundary edge '" + t.edge_id(e) + "' lies in " + std::to_string(n) +
                                " triangle slots");
        } else if (n != 2) {
            throw Error("NonManifoldEdge", "internal edge '" + t.edge_id(e) + "' lies in " +
                                               std::to_string(n) + " triangle slots");
        }
    }
    c.mate.assign(nslots, -1);
    for (int e = 0; e < t.num_edges(); ++e)
        if (c.slots_of_edge[e].size() == 2) {
            c.mate[c.slots_of_edge[e][0]] = c.slots_of_edge[e][1];
            c.mate[c.slots_of_edge[e][1]] = c.slots_of_edge[e][0];
        }
    UnionFind uf(nslots);
    for (int s = 0; s < nslots; ++s) {
        int n = Corners::next(s);
        if (c.mate[n] >= 0) uf.unite(s, c.mate[n]);
    }
    std::map<int, int> renumber;
    c.vertex_of_slot.resize(nslots);
    for (int s = 0; s < nslots; ++s) {
        int root = uf.find(s);
        auto [it, inserted] = renumber.emplace(root, static_cast<int>(renumber.size()));
        c.vertex_of_slot[s] = it->second;
    }
    c.num_vertices = static_cast<int>(renumber.size());
    return c;
}

void check_folds(const Triangulation& t) {
    std::vector<int> fold_count(t.num_triangles(), 0);
    std::map<std::string, int> punctures;
    for (const auto& f : t.folds()) {
        ++fold_count[f.tri];
        if (++punctures[f.puncture] > 1)
            throw Error("DuplicatePuncture", "puncture '" + f.puncture + "' declared twice");
        if (f.loop_edge == f.radius_edge)
            throw Error("PunctureNotSelfFolded",
                        "fold at '" + f.puncture + "' has equal loop and radius");
        if (t.is_boundary(f.loop_edge) || t.is_boundary(f.radius_edge))
            throw Error("PunctureNotSelfFolded",
                        "fold at '" + f.puncture + "' uses a boundary edge");
        const auto& edges = t.tri(f.tri).edges;
        int loops = 0, radii = 0;
        for (int e : edges) {
            if (e == f.loop_edge) ++loops;
            if (e == f.radius_edge) ++radii;
        }
        if (loops != 1 || radii != 2)
            throw Error("PunctureNotSelfFolded", "triangle '" + t.tri(f.tri).id +
                                                     "' is not (loop, radius, radius)");
    }
    for (int count : fold_count)
        if (count > 1) throw Error("PunctureNotSelfFolded", "triangle folded twice");
    // Loops attach to ordinary triangles, one loop per triangle.
    std::vector<int> loop_sides(t.num_triangles(), 0);
    for (const auto& f : t.folds()) {
        int enclosing = -1;
        for (int tri = 0; tri < t.num_triangles(); ++tri) {
            if (tri == f.tri) continue;
            for (int e : t.tri(tri).edges)
                if (e == f.loop_edge) enclosing = tri;
        }
        if (enclosing < 0)
            throw Error("PunctureNotSelfFolded",
                        "loop of puncture '" + f.puncture + "' has no enclosing triangle");
        if (t.tri_is_selffolded(enclosing))
            throw Error("AdjacentSelfFoldedPair",
                        "loop of puncture '" + f.puncture + "' borders a self-folded triangle");
        ++loop_sides[enclosing];
    }
    for (int tri = 0; tri < t.num_triangles(); ++tri)
        if (loop_sides[tri] > 1)
            throw Error("AdjacentSelfFoldedPair",
                        "triangle '" + t.tri(tri).id + "' borders two self-folded triangles");
    // Radii occur only inside their own fold triangle.
    for (const auto& f : t.folds())
        for (int tri = 0; tri < t.num_triangles(); ++tri) {
            if (tri == f.tri) continue;
            for (int e : t.tri(tri).edges)
                if (e == f.radius_edge)
                    throw Error("PunctureNotSelfFolded",
                                "radius of puncture '" + f.puncture + "' leaks into another triangle");
        }
}

} // namespace

SurfaceInfo validate_triangulation(const Triangulation& t) {
    if (t.num_triangles() == 0) throw Error("EmptyTriangulation", "no triangles");
    check_folds(t);
    Corners corners = build_corners(t);

    SurfaceInfo info;
    info.triangles = t.num_triangles();
    for (int e = 0; e < t.num_edges(); ++e)
        (t.is_boundary(e) ? info.boundary_edges : info.internal_arcs)++;
    info.vertices = corners.num_vertices;
    info.euler = info.vertices - t.num_edges() + info.triangles;

    // Boundary cycles: follow each boundary slot to the next one around the
    // head vertex.
    int nslots = 3 * t.num_triangles();
    std::vector<bool> visited(nslots, false);
    std::vector<bool> vertex_on_boundary(corners.num_vertices, false);
    for (int s = 0; s < nslots; ++s) {
        if (corners.mate[s] >= 0) continue;
        vertex_on_boundary[corners.vertex_of_slot[s]] = true;
        int tail_slot = (s / 3) * 3 + (s % 3 + 2) % 3;
        vertex_on_boundary[corners.vertex_of_slot[tail_slot]] = true;
    }
    for (int s = 0; s < nslots; ++s) {
        if (corners.mate[s] >= 0 || visited[s]) continue;
        std::vector<int> cycle_vertices;
        int cur = s;
        while (!visited[cur]) {
            visited[cur] = true;
            cycle_vertices.push_back(corners.vertex_of_slot[cur]);
            int step = Corners::next(cur);
            while (corners.mate[step] >= 0) step = Corners::next(corners.mate[step]);
            cur = step;
        }
        std::sort(cycle_vertices.begin(), cycle_vertices.end());
        cycle_vertices.erase(std::unique(cycle_vertices.begin(), cycle_vertices.end()),
                             cycle_vertices.end());
        info.marked_per_boundary.push_back(static_cast<int>(cycle_vertices.size()));
        ++info.boundary_components;
    }
    std::sort(info.marked_per_boundary.rbegin(), info.marked_per_boundary.rend());
    for (int m : info.marked_per_boundary) info.marked_points += m;

    // Interior vertices must be exactly the puncture corners of the folds.
    std::vector<int> puncture_vertex;
    for (const auto& f : t.folds()) {
        int found = -1;
        for (int k = 0; k < 3; ++k) {
            int slot = 3 * f.tri + k;
            int nxt = Corners::next(slot);
            if (t.tri(f.tri).edges[slot % 3] == f.radius_edge &&
                t.tri(f.tri).edges[nxt % 3] == f.radius_edge)
                found = corners.vertex_of_slot[slot];
        }
        if (found < 0)
            throw Error("PunctureNotSelfFolded", "no radius corner at puncture '" + f.puncture + "'");
        puncture_vertex.push_back(found);
    }
    for (int v = 0; v < corners.num_vertices; ++v) {
        if (vertex_on_boundary[v]) continue;
        if (std::count(puncture_vertex.begin(), puncture_vertex.end(), v) != 1)
            throw Error("PunctureNotSelfFolded",
                        "interior marked point is not the puncture of a self-folded triangle");
    }
    for (int v : puncture_vertex)
        if (vertex_on_boundary[v])
            throw Error("PunctureNotSelfFolded", "declared puncture sits on the boundary");
    info.punctures = static_cast<int>(t.folds().size());

    // Connectivity over triangles.
    UnionFind uf(t.num_triangles());
    for (int s = 0; s < nslots; ++s)
        if (corners.mate[s] >= 0) uf.unite(s / 3, corners.mate[s] / 3);
    std::vector<int> roots;
    for (int tri = 0; tri < t.num_triangles(); ++tri) roots.push_back(uf.find(tri));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    info.connected = roots.size() == 1;

    // chi = 2 c - 2 g - b with g summed over the c components.
    int c = static_cast<int>(roots.size());
    int twice_genus = 2 * c - info.boundary_components - info.euler;
    if (twice_genus < 0 || twice_genus % 2 != 0)
        throw Error("NonManifoldEdge", "inconsistent Euler characteristic");
    info.genus = twice_genus / 2;

    if (info.boundary_components == 0)
        throw Error("NonManifoldEdge", "surface has empty boundary");

    if (info.connected && info.genus == 0 && info.boundary_components == 1 &&
        info.punctures == 1 && info.marked_points == 1)
        throw Error("OncePuncturedMonogon", "the once-punctured monogon is excluded");

    return info;
}

SurfaceInfo surface_invariants(const Triangulation& t) { return validate_triangulation(t); }

std::string block_type_name(BlockType t) {
    switch (t) {
    case BlockType::Zero: return "0";
    case BlockType::I: return "I";
    case BlockType::II: return "II";
    case BlockType::IIIa: return "IIIa";
    case BlockType::IIIb: return "IIIb";
    case BlockType::IV: return "IV";
    }
    return "?";
}

std::vector<Block> block_decompose(const Triangulation& t) {
    validate_triangulation(t);
    std::vector<Block> blocks;
    for (int tri = 0; tri < t.num_triangles(); ++tri) {
        if (t.tri_is_selffolded(tri)) continue;
        const auto& edges = t.tri(tri).edges;
        int nb = 0;
        int loop_pos = -1, fold = -1;
        for (int k = 0; k < 3; ++k) {
            if (t.is_boundary(edges[k])) ++nb;
            int f = t.fold_of_loop(edges[k]);
            if (f >= 0) {
                loop_pos = k;
                fold = f;
            }
        }
        Block b{BlockType::Zero, tri, fold};
        if (fold < 0) {
            if (nb == 2) b.type = BlockType::Zero;
            else if (nb == 1) b.type = BlockType::I;
            else if (nb == 0) b.type = BlockType::II;
            else throw Error("UnclassifiableTriangle", "triangle '" + t.tri(tri).id + "'");
        } else {
            if (nb == 0) {
                b.type = BlockType::IV;
            } else if (nb == 1) {
                // IIIa: the arrow leaves the squares (internal arc precedes
                // the loop ccw); IIIb: it enters them.
                int internal_pos = -1;
                for (int k = 0; k < 3; ++k)
                    if (k != loop_pos && !t.is_boundary(edges[k])) internal_pos = k;
                if (internal_pos < 0)
                    throw Error("UnclassifiableTriangle", "triangle '" + t.tri(tri).id + "'");
                b.type = (internal_pos + 1) % 3 == loop_pos ? BlockType::IIIa : BlockType::IIIb;
            } else {
                throw Error("UnclassifiableTriangle", "triangle '" + t.tri(tri).id + "'");
            }
        }
        blocks.push_back(b);
    }
    return blocks;
}

AdjacencyResult adjacency_qp(const Triangulation& t) {
    validate_triangulation(t);
    AdjacencyResult out;
    Quiver& q = out.qp.quiver;

    for (int e = 0; e < t.num_edges(); ++e)
        if (!t.is_boundary(e)) {
            out.vertex_arc.push_back(e);
            q.add_vertex(t.edge_id(e));
        }
    auto vtx = [&](int edge) { return q.vertex_index(t.edge_id(edge)); };

    struct RawArrow {
        int src_edge, tgt_edge, tri, pair_k;
        bool via_radius;
        int companion;
    };
    std::vector<RawArrow> raw;
    for (int tri = 0; tri < t.num_triangles(); ++tri) {
        if (t.tri_is_selffolded(tri)) continue;
        const auto& edges = t.tri(tri).edges;
        for (int k = 0; k < 3; ++k) {
            // ccw pair (edges[k], edges[k+1]) yields the arrow next -> prev.
            int src = edges[(k + 1) % 3];
            int tgt = edges[k];
            if (t.is_boundary(src) || t.is_boundary(tgt)) continue;
            int src_fold = t.fold_of_loop(src);
            int tgt_fold = t.fold_of_loop(tgt);
            int first = static_cast<int>(raw.size());
            raw.push_back({src, tgt, tri, k, false, -1});
            if (src_fold >= 0) {
                raw.push_back({t.folds()[src_fold].radius_edge, tgt, tri, k, true, first});
                raw[first].companion = first + 1;
            } else if (tgt_fold >= 0) {
                raw.push_back({src, t.folds()[tgt_fold].radius_edge, tri, k, true, first});
                raw[first].companion = first + 1;
            }
        }
    }

    // Deterministic names: src_tgt, suffixed when parallel arrows exist.
    std::map<std::pair<int, int>, int> pair_count;
    for (const auto& r : raw) ++pair_count[{r.src_edge, r.tgt_edge}];
    std::map<std::pair<int, int>, int> pair_seen;
    std::vector<int> sigma_arrow(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        const auto& r = raw[i];
        std::string name = t.edge_id(r.src_edge) + "_" + t.edge_id(r.tgt_edge);
        if (pair_count[{r.src_edge, r.tgt_edge}] > 1)
            name += "_" + std::to_string(++pair_seen[{r.src_edge, r.tgt_edge}]);
        q.add_arrow(name, vtx(r.src_edge), vtx(r.tgt_edge));
        out.arrow_info.push_back({r.tri, r.pair_k, r.via_radius, r.companion});
        sigma_arrow[i] = r.companion >= 0 ? r.companion : static_cast<int>(i);
    }

    // The exchange involution: loop <-> radius on vertices, companion pairs
    // of arrows.
    std::vector<int> sigma_vertex(q.num_vertices());
    std::iota(sigma_vertex.begin(), sigma_vertex.end(), 0);
    for (const auto& f : t.folds()) {
        int a = vtx(f.loop_edge), b = vtx(f.radius_edge);
        sigma_vertex[a] = b;
        sigma_vertex[b] = a;
    }
    out.sigma = Involution(std::move(sigma_vertex), std::move(sigma_arrow));

    // Potential: each internal triangle contributes its 3-cycle; a triangle
    // carrying a loop contributes the loop cycle and the radius cycle.
    PathExpr s;
    for (int tri = 0; tri < t.num_triangles(); ++tri) {
        if (t.tri_is_selffolded(tri)) continue;
        const auto& edges = t.tri(tri).edges;
        bool internal = std::none_of(edges.begin(), edges.end(),
                                     [&](int e) { return t.is_boundary(e); });
        if (!internal) continue;
        // Arrows of this triangle by pair index, primary and companion.
        std::array<int, 3> primary{-1, -1, -1}, companion{-1, -1, -1};
        for (int a = 0; a < q.num_arrows(); ++a) {
            const auto& info = out.arrow_info[a];
            if (info.tri != tri) continue;
            (info.via_radius ? companion : primary)[info.pair_k] = a;
        }
        for (int k = 0; k < 3; ++k)
            if (primary[k] < 0) throw Error("Internal", "missing triangle arrow");
        // Cycle through pair arrows k = 2, 1, 0 applied in that order:
        // (edges[0] -> edges[2]) then (edges[2] -> edges[1]) then
        // (edges[1] -> edges[0]).
        Path loop_cycle{-1, {primary[2], primary[1], primary[0]}};
        s.add(loop_cycle, 1);
        bool has_companion = std::any_of(companion.begin(), companion.end(),
                                         [](int a) { return a >= 0; });
        if (has_companion) {
            Path radius_cycle{-1, {}};
            for (int k : {2, 1, 0})
                radius_cycle.arrows.push_back(companion[k] >= 0 ? companion[k] : primary[k]);
            s.add(radius_cycle, 1);
        }
    }
    out.qp.potential = Potential(q, s);
    return out;
}

int AdjacencyResult::vertex_of_arc(int edge) const {
    for (size_t v = 0; v < vertex_arc.size(); ++v)
        if (vertex_arc[v] == edge) return static_cast<int>(v);
    throw Error("Internal", "arc has no quiver vertex");
}

DoubleCover double_cover(const Triangulation& t) {
    SurfaceInfo base_info = validate_triangulation(t);
    (void)base_info;
    DoubleCover out;
    out.base_qp = adjacency_qp(t);

    // Cover edges.
    std::vector<bool> dropped(t.num_edges(), false);
    for (const auto& f : t.folds()) {
        dropped[f.loop_edge] = true;
        dropped[f.radius_edge] = true;
    }
    std::vector<std::array<int, 2>> sheet_edge(t.num_edges(), {-1, -1});
    for (int e = 0; e < t.num_edges(); ++e) {
        if (dropped[e]) continue;
        for (int sheet = 0; sheet < 2; ++sheet) {
            std::string id = t.edge_id(e) + (sheet == 0 ? "+" : "-");
            sheet_edge[e][sheet] = out.cover.add_edge(id);
            out.proj_edge.resize(out.cover.num_edges());
            out.proj_edge[sheet_edge[e][sheet]] = e;
            if (t.is_boundary(e)) out.cover.mark_boundary(id);
        }
    }
    for (const auto& f : t.folds()) {
        int arc = out.cover.add_edge("p" + f.puncture);
        out.fold_arc.push_back(arc);
        out.proj_edge.resize(out.cover.num_edges());
        out.proj_edge[arc] = f.radius_edge;
    }
    out.sigma_edge.assign(out.cover.num_edges(), -1);
    for (int e = 0; e < t.num_edges(); ++e)
        if (!dropped[e]) {
            out.sigma_edge[sheet_edge[e][0]] = sheet_edge[e][1];
            out.sigma_edge[sheet_edge[e][1]] = sheet_edge[e][0];
        }
    for (int arc : out.fold_arc) out.sigma_edge[arc] = arc;

    // Cover triangles: both sheets of every ordinary triangle, with loop
    // slots replaced by the puncture's new arc.
    for (int tri = 0; tri < t.num_triangles(); ++tri) {
        if (t.tri_is_selffolded(tri)) continue;
        for (int sheet = 0; sheet < 2; ++sheet) {
            std::array<std::string, 3> edges;
            for (int k = 0; k < 3; ++k) {
                int e = t.tri(tri).edges[k];
                int f = t.fold_of_loop(e);
                edges[k] = f >= 0 ? out.cover.edge_id(out.fold_arc[f])
                                  : out.cover.edge_id(sheet_edge[e][sheet]);
            }
            out.cover.add_triangle(t.tri(tri).id + (sheet == 0 ? "+" : "-"), edges);
            out.tri_origin.emplace_back(tri, sheet == 0 ? +1 : -1);
        }
    }

    out.cover_qp = adjacency_qp(out.cover);

    // Induced involution on the cover quiver.
    {
        const Quiver& cq = out.cover_qp.qp.quiver;
        std::vector<int> vm(cq.num_vertices()), am(cq.num_arrows());
        for (int v = 0; v < cq.num_vertices(); ++v) {
            int edge = out.cover_qp.vertex_arc[v];
            vm[v] = out.cover_qp.vertex_of_arc(out.sigma_edge[edge]);
        }
        for (int a = 0; a < cq.num_arrows(); ++a) {
            const auto& info = out.cover_qp.arrow_info[a];
            auto [base_tri, sheet] = out.tri_origin[info.tri];
            // The partner arrow lives in the other sheet of the same base
            // triangle, same ccw pair.
            int partner_tri = -1;
            for (size_t ct = 0; ct < out.tri_origin.size(); ++ct)
                if (out.tri_origin[ct].first == base_tri && out.tri_origin[ct].second == -sheet)
                    partner_tri = static_cast<int>(ct);
            int partner = -1;
            for (int b = 0; b < cq.num_arrows(); ++b) {
                const auto& other = out.cover_qp.arrow_info[b];
                if (other.tri == partner_tri && other.pair_k == info.pair_k) partner = b;
            }
            if (partner < 0) throw Error("Internal", "cover arrow has no sheet partner");
            am[a] = partner;
        }
        out.cover_quiver_sigma = Involution(std::move(vm), std::move(am));
        validate_action(cq, out.cover_quiver_sigma);
    }

    // Skew of the base QP under the deterministic admissible choice.
    auto choice = find_admissible(out.base_qp.qp.quiver, out.base_qp.sigma);
    if (!choice)
        throw Error("CrossCheckFailure", "no admissible choice on the base adjacency quiver");
    out.skew = skew_quiver(out.base_qp.qp.quiver, out.base_qp.sigma, *choice);
    out.skew.potential_G = skew_potential(out.skew, out.base_qp.qp.potential);

    // Canonical renaming.  Vertices: split arc j^s <-> cover arc j^s; orbit
    // vertex of {loop, radius} <-> the puncture's new arc.
    const Quiver& sq = out.skew.quiver_G;
    const Quiver& cq = out.cover_qp.qp.quiver;
    out.skew_vertex_to_cover.assign(sq.num_vertices(), -1);
    for (int v = 0; v < sq.num_vertices(); ++v) {
        const auto& origin = out.skew.vertex_origin[v];
        int base_edge = t.edge_index(out.base_qp.qp.quiver.vertex_id(origin.base_vertex));
        int cover_edge;
        if (origin.sign == 0) {
            int f = t.fold_of_loop(base_edge);
            if (f < 0) f = t.fold_of_radius(base_edge);
            if (f < 0) throw Error("CrossCheckFailure", "orbit vertex is not a fold arc");
            cover_edge = out.fold_arc[f];
        } else {
            cover_edge = sheet_edge[base_edge][origin.sign > 0 ? 0 : 1];
        }
        out.skew_vertex_to_cover[v] = out.cover_qp.vertex_of_arc(cover_edge);
    }
    out.skew_arrow_to_cover.assign(sq.num_arrows(), -1);
    for (int a = 0; a < sq.num_arrows(); ++a) {
        const auto& origin = out.skew.arrow_origin[a];
        if (origin.sign == 0)
            throw Error("CrossCheckFailure", "unexpected orbit-to-orbit arrow in a surface quiver");
        const auto& info = out.base_qp.arrow_info[origin.rep_arrow];
        int sheet = origin.sign > 0 ? +1 : -1;
        int cover_tri = -1;
        for (size_t ct = 0; ct < out.tri_origin.size(); ++ct)
            if (out.tri_origin[ct].first == info.tri && out.tri_origin[ct].second == sheet)
                cover_tri = static_cast<int>(ct);
        for (int b = 0; b < cq.num_arrows(); ++b) {
            const auto& other = out.cover_qp.arrow_info[b];
            if (other.tri == cover_tri && other.pair_k == info.pair_k) {
                out.skew_arrow_to_cover[a] = b;
                break;
            }
        }
        if (out.skew_arrow_to_cover[a] < 0)
            throw Error("CrossCheckFailure", "skew arrow has no cover counterpart");
    }

    // The renaming must be a quiver isomorphism.
    {
        std::vector<int> seen(cq.num_vertices(), 0);
        for (int v : out.skew_vertex_to_cover) ++seen[v];
        for (int c : seen)
            if (c != 1) throw Error("CrossCheckFailure", "vertex renaming is not a bijection");
        std::vector<int> aseen(cq.num_arrows(), 0);
        for (int a : out.skew_arrow_to_cover) ++aseen[a];
        for (int c : aseen)
            if (c != 1) throw Error("CrossCheckFailure", "arrow renaming is not a bijection");
        for (int a = 0; a < sq.num_arrows(); ++a) {
            const auto& sa = sq.arrow(a);
            const auto& ca = cq.arrow(out.skew_arrow_to_cover[a]);
            if (ca.src != out.skew_vertex_to_cover[sa.src] ||
                ca.tgt != out.skew_vertex_to_cover[sa.tgt])
                throw Error("CrossCheckFailure",
                            "renaming breaks endpoints at skew arrow '" + sa.id + "'");
        }
        // The dual action corresponds to the cover's sheet involution.
        Involution dual = dual_action(out.skew);
        for (int v = 0; v < sq.num_vertices(); ++v)
            if (out.skew_vertex_to_cover[dual.vertex(v)] !=
                out.cover_quiver_sigma.vertex(out.skew_vertex_to_cover[v]))
                throw Error("CrossCheckFailure", "dual action mismatch on vertices");
        for (int a = 0; a < sq.num_arrows(); ++a)
            if (out.skew_arrow_to_cover[dual.arrow(a)] !=
                out.cover_quiver_sigma.arrow(out.skew_arrow_to_cover[a]))
                throw Error("CrossCheckFailure", "dual action mismatch on arrows");
    }

    // Right-equivalence of the potentials, witnessed by arrow rescaling.
    {
        QuiverMorphism rename(sq, cq, out.skew_vertex_to_cover, out.skew_arrow_to_cover, {});
        Potential renamed_sg = rename.apply(cq, out.skew.potential_G);
        const Potential& s_cover = out.cover_qp.qp.potential;
        // Same cycle support expected; find scalars with product ratio on
        // each cycle.  Every cover potential cycle has an arrow private to it
        // (the algebra is gentle), so a greedy assignment works.
        std::map<Path, Rat> ratio;
        for (const auto& [cycle, c] : renamed_sg.expr().terms()) {
            Rat cc = s_cover.expr().coefficient(cycle);
            if (cc == 0) throw Error("CrossCheckFailure", "potential supports differ");
            ratio[cycle] = cc / c;
        }
        for (const auto& [cycle, c] : s_cover.expr().terms())
            if (renamed_sg.expr().coefficient(cycle) == 0)
                throw Error("CrossCheckFailure", "potential supports differ");
        std::map<int, int> arrow_usage;
        for (const auto& [cycle, c] : s_cover.expr().terms())
            for (int a : cycle.arrows) ++arrow_usage[a];
        out.rescale.assign(cq.num_arrows(), Rat(1));
        for (const auto& [cycle, r] : ratio) {
            int private_arrow = -1;
            for (int a : cycle.arrows)
                if (arrow_usage[a] == 1) private_arrow = a;
            if (private_arrow < 0)
                throw Error("CrossCheckFailure", "no private arrow for rescaling witness");
            out.rescale[private_arrow] = r;
        }
        for (const auto& [cycle, r] : ratio) {
            Rat prod = 1;
            for (int a : cycle.arrows) prod *= out.rescale[a];
            if (prod != r) throw Error("CrossCheckFailure", "rescaling witness fails");
        }
    }
    return out;
}

} // namespace qpskew
