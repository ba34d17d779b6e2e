#pragma once

#include "qpskew/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qpskew {

/// Dual graph of a triangulation: one node per triangle, one edge per
/// internal arc.  The radius of a self-folded triangle dualizes to a loop at
/// its node, flagged as an orbifold generator of order 2.
struct DualGraph {
    struct Edge {
        std::string id; // the arc id
        int u, v;       // endpoint nodes (slots in declaration order)
        bool orb = false;
    };
    std::vector<std::string> node_ids; // triangle ids
    std::vector<Edge> edges;

    int num_nodes() const { return static_cast<int>(node_ids.size()); }
    int other_end(int edge, int node) const;
};

DualGraph dual_graph(const Triangulation& t);

/// Letter: an edge traversed from `from`; orbifold letters are normalized to
/// their forward direction (e_P has order two, so e_P^-1 = e_P).
struct Letter {
    int edge;
    bool fwd;
    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Reduced word in the (orbifold) groupoid of a dual graph, stored in order
/// of traversal.
struct GroupoidWord {
    int start = -1;
    std::vector<Letter> letters;
    friend bool operator==(const GroupoidWord&, const GroupoidWord&) = default;
    friend auto operator<=>(const GroupoidWord&, const GroupoidWord&) = default;
};

int word_end(const DualGraph& g, const GroupoidWord& w);
bool word_valid(const DualGraph& g, const GroupoidWord& w);
GroupoidWord inverse(const DualGraph& g, const GroupoidWord& w);
GroupoidWord concat(const DualGraph& g, const GroupoidWord& a, const GroupoidWord& b);

/// Confluent normal form under x x^-1 -> 1, e_P e_P -> 1 and e_P^-1 -> e_P.
/// Errors: InconsistentEndpoints for ill-chained input.
GroupoidWord reduce(const DualGraph& g, const GroupoidWord& w);

/// Applies the rewriting rules in a caller-seeded random order; used to test
/// confluence against `reduce`.
GroupoidWord reduce_random_order(const DualGraph& g, const GroupoidWord& w, unsigned seed);

/// Conjugacy-canonical cyclic word: cyclically reduced, minimal rotation.
struct CyclicWord {
    std::vector<Letter> letters; // empty means the trivial class
    std::vector<int> nodes;      // node before each letter
    friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
    friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;
};

/// Errors: NotALoop.
CyclicWord cyclic_normal_form(const DualGraph& g, const GroupoidWord& w);
CyclicWord cyclic_inverse(const DualGraph& g, const CyclicWord& c);
bool is_primitive(const DualGraph& g, const CyclicWord& c);
bool conjugate(const DualGraph& g, const CyclicWord& a, const CyclicWord& b);

std::string format_word(const DualGraph& g, const GroupoidWord& w);
std::string format_cyclic(const DualGraph& g, const CyclicWord& c);

/// The two dual graphs of a double cover with the projection/lift data.
struct CoverGraphs {
    DualGraph base;
    DualGraph cover;
    std::vector<int> cover_node_base;   // cover node -> base node
    std::vector<int> cover_node_sheet;  // +1 / -1
    std::vector<int> cover_edge_base;   // cover edge -> base edge (fold arcs -> radius)
    std::vector<int> cover_edge_sigma;  // involution on cover edges
    std::vector<int> cover_node_sigma;  // involution on cover nodes
    std::vector<int> fold_node;         // fold index -> base node of the self-folded triangle
    std::vector<int> fold_loop_edge;    // fold index -> base edge dual to the loop arc
    std::vector<int> fold_orb_edge;     // fold index -> the orbifold loop e_P
    std::vector<int> fold_cover_edge;   // fold index -> cover edge dual to the new arc

    int cover_node(int base_node, int sheet) const;
};

CoverGraphs cover_graphs(const Triangulation& t, const DoubleCover& cover);

GroupoidWord sigma_word(const CoverGraphs& cg, const GroupoidWord& w);
GroupoidWord project(const CoverGraphs& cg, const GroupoidWord& w);

/// Lift starting on the given sheet.  NoLift (= nullopt) exactly when the
/// word starts or ends at a self-folded node, e.g. the bare e_P.
std::optional<GroupoidWord> lift(const CoverGraphs& cg, const GroupoidWord& w, int sheet);

/// Number of crossings of self-folded internal arcs (orbifold letters);
/// loops lift to loops iff this is even.
int orb_crossings(const DualGraph& g, const GroupoidWord& w);

/// Symmetric decomposition gamma = v^-1 e_P v of an order-2 word.
struct SymmetricString {
    int orb_edge;     // the e_P letter
    GroupoidWord v;   // from the start node to the self-folded node
};
std::optional<SymmetricString> symmetric_decomposition(const DualGraph& g, const GroupoidWord& w);

/// String classes of bounded length: {gamma, gamma^-1} pairs plus the
/// symmetric words, which map to tagged arcs e_P^eps v.
struct StringClasses {
    int pair_classes = 0;
    std::vector<GroupoidWord> symmetric; // one word per symmetric class
    int tagged_arcs() const { return 2 * static_cast<int>(symmetric.size()); }
    int total() const { return pair_classes + tagged_arcs(); }
};
StringClasses classify_strings(const DualGraph& g, int max_len);

/// The symmetric-band decomposition [gamma] = [e_P u e_Q u^-1].
struct SymmetricBand {
    int fold_p;
    int fold_q;
    std::vector<Letter> u; // path from the P node to the Q node
    int u_start;
};
std::optional<SymmetricBand> symmetric_band_decomposition(const DualGraph& g, const CyclicWord& c);

/// Band classes of bounded length, sorted into the three families:
/// asymmetric pairs (parameter k*), symmetric classes (parameter
/// k* minus +-1), and symmetric classes with the four taggings.
struct BandClasses {
    int asymmetric_pairs = 0;
    std::vector<CyclicWord> symmetric;
    std::vector<CyclicWord> all; // canonical representative per class
    int in_image_of_psi = 0;     // even orbifold crossings
};
BandClasses classify_bands(const DualGraph& g, int max_len);

/// The tagged-arc word e_P^eps1 u e_Q^eps2 of a symmetric primitive band.
/// Errors: NotSymmetric, NotPrimitive.
GroupoidWord band_to_tagged(const DualGraph& g, const CyclicWord& c, int eps1, int eps2);

/// Inverse of band_to_tagged: w between fold nodes maps back to the class
/// [e_P w e_Q w^-1] plus the taggings read off the ends of w.
struct TaggedBand {
    CyclicWord band;
    int eps1;
    int eps2;
};
TaggedBand tagged_to_band(const DualGraph& g, const GroupoidWord& w);

/// All reduced words of length in [1, max_len], deterministic order.
std::vector<GroupoidWord> enumerate_words(const DualGraph& g, int max_len);

/// True when the node carries an orbifold loop (it dualizes a self-folded
/// triangle).
bool is_fold_node(const DualGraph& g, int node);

} // namespace qpskew
