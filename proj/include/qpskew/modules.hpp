#pragma once

#include "qpskew/matrix.hpp"
#include "qpskew/quiver.hpp"
#include "qpskew/skew.hpp"
#include "qpskew/surface.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qpskew {

/// Representation of a quiver: per-vertex dimensions and, per arrow, a
/// matrix with rows = target dimension and cols = source dimension.  A path
/// acts as the product of its arrow matrices, first-applied rightmost.
struct Representation {
    std::vector<int> dims;
    std::vector<QMatrix> mats; // one per arrow, zero matrices included

    static Representation zero(const Quiver& q, std::vector<int> dims);
    static Representation simple(const Quiver& q, int vertex);

    int total_dim() const;
    QMatrix evaluate(const Quiver& q, const Path& p) const;
    QMatrix evaluate(const Quiver& q, const PathExpr& e) const;

    /// Every cyclic derivative of the potential must evaluate to zero.
    void check_relations(const QuiverWithPotential& qp) const;

    Representation direct_sum(const Representation& other) const;
    /// The twist R^sigma: dims and matrices pulled back along sigma.
    Representation twist(const Quiver& q, const Involution& sigma) const;

    friend bool operator==(const Representation&, const Representation&) = default;
};

std::string print_representation(const Quiver& q, const Representation& r);
Representation parse_representation(const Quiver& q, std::istream& in);
Representation parse_representation_text(const Quiver& q, const std::string& text);

/// Curve transversal to the triangulation, recorded as the sequence of
/// crossed arcs; each step carries the connecting arrow of the adjacency
/// quiver and whether it is traversed forwards (direct) or backwards.
struct CrossingWord {
    std::vector<int> arcs; // quiver vertex indices
    struct Step {
        int arrow;
        bool forward;
    };
    std::vector<Step> steps; // arcs.size()-1 steps, one more for bands
};

/// Builds a word from arc names, inferring the connecting arrows.  A token
/// may carry an explicit ":<arrow>" disambiguation when the quiver has
/// parallel connections.  Errors: InvalidWord.
CrossingWord make_crossing_word(const AdjacencyResult& ctx, const std::vector<std::string>& tokens,
                                bool cyclic);

/// String module: dimension one per crossing, identity maps along the word.
Representation string_module(const AdjacencyResult& ctx, const CrossingWord& word);

/// Band module: dimension n per crossing, identities along the word and a
/// Jordan block J_n(lambda) on the distinguished direct step out of the
/// base arc.  Errors: NotPrimitive, ZeroLambda, InvalidWord.
Representation band_module(const AdjacencyResult& ctx, const CrossingWord& word, const Rat& lambda,
                           int power = 1);

/// Induction along the skew construction: the doubled space with the skew
/// group action, cut by the basic idempotents and expressed on Q_G.
Representation induce(const SkewResult& ctx, const Representation& r);

/// Restriction from Q_G back to Q; restrict(induce(R)) = R + R^sigma.
Representation restrict(const SkewResult& ctx, const Representation& r);

/// Basis of the space of intertwiners R1 -> R2 (block matrices per vertex).
std::vector<std::vector<QMatrix>> hom_space(const Quiver& q, const Representation& r1,
                                            const Representation& r2);

/// Invertible intertwiner search over a deterministic pseudorandom sample of
/// the solution space; exact at the dimensions that occur here.
bool is_isomorphic(const Quiver& q, const Representation& r1, const Representation& r2,
                   unsigned seed = 1);

/// Splits off generalized eigenspaces of generic endomorphisms, recursing
/// until every summand has local endomorphism algebra.  Errors:
/// DimensionBound above `max_dim`, FieldObstruction when a split needs an
/// irrational eigenvalue (reported with the minimal polynomial).
std::vector<Representation> decompose(const Quiver& q, const Representation& r, unsigned seed = 1,
                                      int max_dim = 24);

/// dim End(R) and dim of its radical (trace-form computation); R is
/// indecomposable iff the quotient is one-dimensional.
struct EndInfo {
    int dim_end;
    int dim_radical;
    bool local() const { return dim_end - dim_radical == 1; }
};
EndInfo end_info(const Quiver& q, const Representation& r);

/// Surface-level functor F: modules over the cover QP to modules over the
/// base QP, via the dual action and the double-skew identification.
Representation induce_to_base(const DoubleCover& cover, const Representation& r);

} // namespace qpskew
