#pragma once

#include "qpskew/rational.hpp"

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qpskew {

/// Finite quiver with string ids for vertices and arrows.  Indices are
/// positions in the declaration order and are what all other types store.
class Quiver {
public:
    struct Arrow {
        std::string id;
        int src = -1;
        int tgt = -1;
    };

    int add_vertex(const std::string& id);
    int add_arrow(const std::string& id, const std::string& src, const std::string& tgt);
    int add_arrow(const std::string& id, int src, int tgt);

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }

    const std::string& vertex_id(int v) const { return vertices_[v]; }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    int vertex_index(const std::string& id) const;
    int arrow_index(const std::string& id) const;
    std::optional<int> find_vertex(const std::string& id) const;
    std::optional<int> find_arrow(const std::string& id) const;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::unordered_map<std::string, int> vertex_index_;
    std::unordered_map<std::string, int> arrow_index_;
};

/// Path in a quiver: either a trivial path at `base` or a nonempty arrow
/// sequence stored in application order (front = first arrow applied).
/// Printing reverses the order, so a stored sequence [d,e,f] prints "f e d".
struct Path {
    int base = -1;
    std::vector<int> arrows;

    bool trivial() const { return arrows.empty(); }
    int length() const { return static_cast<int>(arrows.size()); }
    int source(const Quiver& q) const { return trivial() ? base : q.arrow(arrows.front()).src; }
    int target(const Quiver& q) const { return trivial() ? base : q.arrow(arrows.back()).tgt; }

    static Path trivial_at(int v) { return Path{v, {}}; }
    static Path of_arrow(int a) { return Path{-1, {a}}; }

    friend auto operator<=>(const Path&, const Path&) = default;
};

/// `p` after `q` (q is applied first).  Trivial paths act as identities.
Path compose(const Quiver& q, const Path& p, const Path& r);

/// Finite rational linear combination of paths.  No zero coefficients are
/// stored; the ordered map keeps printing and equality deterministic.
class PathExpr {
public:
    PathExpr() = default;
    explicit PathExpr(const Path& p, const Rat& c = 1) { add(p, c); }

    static PathExpr zero() { return PathExpr(); }

    void add(const Path& p, const Rat& c);
    bool is_zero() const { return terms_.empty(); }
    int num_terms() const { return static_cast<int>(terms_.size()); }
    const std::map<Path, Rat>& terms() const { return terms_; }
    Rat coefficient(const Path& p) const;

    PathExpr& operator+=(const PathExpr& other);
    PathExpr& operator-=(const PathExpr& other);
    PathExpr operator+(const PathExpr& other) const;
    PathExpr operator-(const PathExpr& other) const;
    PathExpr operator-() const;
    PathExpr& operator*=(const Rat& c);
    friend PathExpr operator*(const Rat& c, PathExpr e) { e *= c; return e; }

    friend bool operator==(const PathExpr&, const PathExpr&) = default;

    /// Restrict to terms running from vertex `src` to vertex `tgt`.
    PathExpr between(const Quiver& q, int src, int tgt) const;

private:
    std::map<Path, Rat> terms_;
};

/// Algebra product in kQ: (a * b) applies b first; non-composable pairs
/// contribute zero.
PathExpr mul(const Quiver& q, const PathExpr& a, const PathExpr& b);

/// Potential: linear combination of cycles of length >= 2, each stored as the
/// lexicographically minimal rotation of its arrow-index sequence.  Two
/// potentials are equal iff they are cyclically equivalent.
class Potential {
public:
    Potential() = default;
    Potential(const Quiver& q, const PathExpr& e);

    const PathExpr& expr() const { return expr_; }
    bool is_zero() const { return expr_.is_zero(); }

    friend bool operator==(const Potential&, const Potential&) = default;

    static Path canonical_rotation(const Path& cycle);

private:
    PathExpr expr_;
};

struct QuiverWithPotential {
    Quiver quiver;
    Potential potential;
};

/// Sum over the occurrences of arrow `a` in each cycle of the rotated
/// remainder.  Linear in S and invariant under rotation of the input.
PathExpr cyclic_derivative(const Quiver& q, const Potential& s, int a);
PathExpr cyclic_derivative(const Quiver& q, const Potential& s, const std::string& arrow_id);

bool cyclically_equivalent(const Quiver& q, const Potential& a, const Potential& b);

/// Projects a PathExpr onto cycles and returns the resulting potential.
/// Non-cycle paths span the commutator complement and vanish in the trace
/// space where potentials live.
Potential cyclic_projection(const Quiver& q, const PathExpr& e);

/// Vertex-to-vertex, arrow-to-scalar-multiple-of-arrow map between quivers.
/// Carrier for sigma, xi and zeta.
class QuiverMorphism {
public:
    QuiverMorphism() = default;
    QuiverMorphism(const Quiver& from, const Quiver& to,
                   std::vector<int> vertex_map, std::vector<int> arrow_map,
                   std::vector<Rat> arrow_scalars);

    int map_vertex(int v) const { return vertex_map_[v]; }
    int map_arrow(int a) const { return arrow_map_[a]; }
    const Rat& arrow_scalar(int a) const { return arrow_scalars_[a]; }

    Path map_path(const Path& p) const;
    PathExpr apply(const PathExpr& e) const;
    Potential apply(const Quiver& to, const Potential& s) const;

private:
    std::vector<int> vertex_map_;
    std::vector<int> arrow_map_;
    std::vector<Rat> arrow_scalars_;
};

std::string format_path(const Quiver& q, const Path& p);
std::string format_expr(const Quiver& q, const PathExpr& e);

/// Text format, one declaration per line:
///   vertex <id>
///   arrow <id> <src> <tgt>
///   potential <coeff> <arrowid> ...   (leftmost arrow composes last)
/// plus, for files that also carry an action,
///   sigma_vertex <a> <b> / sigma_arrow <a> <b>  (transpositions)
/// Comments start with '#'.
struct QuiverFile {
    QuiverWithPotential qp;
    std::vector<std::pair<std::string, std::string>> sigma_vertices;
    std::vector<std::pair<std::string, std::string>> sigma_arrows;
};

QuiverFile parse_quiver_file(std::istream& in);
QuiverFile parse_quiver_text(const std::string& text);
std::string print_quiver(const QuiverWithPotential& qp);

} // namespace qpskew
