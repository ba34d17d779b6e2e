#pragma once

#include "qpskew/involution.hpp"
#include "qpskew/quiver.hpp"

#include <string>
#include <vector>

namespace qpskew {

/// The skew group quiver Q_G of an order-2 action together with provenance.
/// Vertices: i+ and i- for each fixed vertex i, one vertex per non-fixed
/// orbit named by its representative.  Arrows: one or two per orbit
/// representative, by endpoint case.
struct SkewResult {
    Quiver base;
    Involution sigma;
    ActionPartition part;
    OrbitChoice choice;

    Quiver quiver_G;
    Potential potential_G; // set by skew_potential, empty otherwise

    // Provenance.  For vertices: base vertex index and sign (+1/-1 for split
    // fixed vertices, 0 for orbit vertices, which carry the representative).
    struct VertexOrigin {
        int base_vertex;
        int sign;
    };
    // For arrows: the orbit representative arrow and sign (0 for the single
    // arrow of a both-endpoints-non-fixed representative).
    struct ArrowOrigin {
        int rep_arrow;
        int sign;
    };
    std::vector<VertexOrigin> vertex_origin;
    std::vector<ArrowOrigin> arrow_origin;

    int skew_vertex(int base_vertex, int sign) const;
    int skew_arrow(int rep_arrow, int sign) const;

    /// Orbit representative of an arrow under the stored choice.
    int rep_of(int arrow) const;
    /// True when iota(arrow) = rep+ - rep- rather than rep+ + rep-.
    bool iota_sign_flips(int arrow) const;

    bool vertex_in_v(int base_vertex) const { return part.in_v(base_vertex); }
};

/// Endpoint case of an orbit representative arrow.
enum class ArrowCase { VV, VW, WV, WW };
ArrowCase arrow_case(const Quiver& q, const ActionPartition& part, int arrow);

SkewResult skew_quiver(const Quiver& q, const Involution& sigma, const OrbitChoice& choice);

/// iota(w) = 2^s iota(a_1)...iota(a_r) where s counts the non-initial
/// arrows (in application order) whose source is non-fixed.  On arrows,
/// iota(a) is rep+ + rep- (one or both endpoints fixed) or rep+ (neither),
/// with a sign flip on rep- when a is not the chosen representative.
PathExpr iota(const SkewResult& ctx, const Path& w);
PathExpr iota(const SkewResult& ctx, const PathExpr& e);
PathExpr iota_arrow(const SkewResult& ctx, int arrow);

/// iota(sigma w) computed by the idempotent-cut formula: term signs flip at
/// minus-decorated endpoints over fixed vertices.
PathExpr iota_sigma(const SkewResult& ctx, const Path& w);

/// S_G = iota'(S): per cycle, 2^(number of arrows with non-fixed source)
/// times the product of the arrow images, projected onto cycles.
/// Errors: NotInvariant when S is not sigma-invariant up to rotation.
Potential skew_potential(const SkewResult& ctx, const Potential& s);

/// The dual action on Q_G: swaps i+ and i-, fixes orbit vertices, swaps the
/// +/- arrow decorations, and fixes the single arrows of non-fixed-to-
/// non-fixed representatives.  Requires an admissible choice (all the dual
/// action's scalars are then +1).
Involution dual_action(const SkewResult& ctx);

/// The canonical admissible choice on (Q_G, dual action): o(W_G) = the plus
/// vertices, arrow representatives the plus decorations plus the undecorated
/// non-fixed-to-non-fixed arrows.
OrbitChoice canonical_dual_choice(const SkewResult& ctx, const Involution& dual);

/// Double-skew isomorphism report: builds Q_GG from (Q_G, dual action),
/// constructs the isomorphism xi: Q_GG -> Q, verifies it is a G-equivariant
/// quiver isomorphism and checks the scaling law
///   xi . iota_G . iota (w) = 2^(m+p) w            (not both ends non-fixed)
///                          = 2^(m+p-1) (w + sigma w)  (both ends non-fixed)
/// on all paths of length <= max_len.
struct DoubleSkewReport {
    bool ok = true;
    std::string detail;
    int paths_checked = 0;
    SkewResult first;
    SkewResult second;
    QuiverMorphism xi;
};

DoubleSkewReport double_skew_check(const Quiver& q, const Involution& sigma,
                                   const OrbitChoice& choice, int max_len = 4);

/// Elements of the skew group algebra kQ (x) kG with G = {1, sigma}, as
/// rational combinations of (path, group element) pairs.  Used to verify the
/// idempotent identities and the closed arrow formulas symbolically.
class SkewAlgebraElement {
public:
    SkewAlgebraElement() = default;

    static SkewAlgebraElement term(const Path& p, int g, const Rat& c = 1);
    static SkewAlgebraElement one(const Quiver& q);

    void add(const Path& p, int g, const Rat& c);
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<Path, int>, Rat>& terms() const { return terms_; }

    SkewAlgebraElement& operator+=(const SkewAlgebraElement& other);
    SkewAlgebraElement operator+(const SkewAlgebraElement& other) const;
    SkewAlgebraElement operator-(const SkewAlgebraElement& other) const;
    SkewAlgebraElement& operator*=(const Rat& c);
    friend SkewAlgebraElement operator*(const Rat& c, SkewAlgebraElement e) { e *= c; return e; }

    friend bool operator==(const SkewAlgebraElement&, const SkewAlgebraElement&) = default;

private:
    std::map<std::pair<Path, int>, Rat> terms_;
};

/// (p (x) g)(q (x) h) = p.g(q) (x) gh with the path-algebra product.
SkewAlgebraElement mul(const Quiver& q, const Involution& sigma, const SkewAlgebraElement& a,
                       const SkewAlgebraElement& b);

/// The primitive idempotents e_i^+ / e_i^- and the sign element epsilon.
SkewAlgebraElement idempotent(const SkewResult& ctx, int base_vertex, int sign);
SkewAlgebraElement epsilon(const SkewResult& ctx);

/// e_t^dt (a (x) 1) e_s^ds, the symbolic skew arrow.  The non-fixed side of
/// a mixed arrow always carries the plus idempotent.
SkewAlgebraElement symbolic_arrow(const SkewResult& ctx, int arrow, int sign);

/// Substitutes every Q_G generator in `e` by its symbolic element and
/// multiplies out; connects the path-level iota with ebar(x (x) 1)ebar.
SkewAlgebraElement substitute(const SkewResult& ctx, const PathExpr& e);

/// ebar (x (x) 1) ebar for the sum-of-chosen-idempotents ebar.
SkewAlgebraElement iota_symbolic(const SkewResult& ctx, const PathExpr& x);

} // namespace qpskew
