#include "qpskew/groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qpskew {

int DualGraph::other_end(int edge, int node) const {
    const Edge& e = edges[edge];
    if (e.u == node) return e.v;
    if (e.v == node) return e.u;
    throw Error("InconsistentEndpoints", "edge '" + e.id + "' does not touch the node");
}

DualGraph dual_graph(const Triangulation& t) {
    DualGraph g;
    for (int tri = 0; tri < t.num_triangles(); ++tri) g.node_ids.push_back(t.tri(tri).id);
    for (int e = 0; e < t.num_edges(); ++e) {
        if (t.is_boundary(e)) continue;
        std::vector<int> slots;
        for (int tri = 0; tri < t.num_triangles(); ++tri)
            for (int k = 0; k < 3; ++k)
                if (t.tri(tri).edges[k] == e) slots.push_back(tri);
        if (slots.size() != 2) throw Error("NonManifoldEdge", "arc '" + t.edge_id(e) + "'");
        DualGraph::Edge edge{t.edge_id(e), slots[0], slots[1], false};
        edge.orb = t.fold_of_radius(e) >= 0;
        g.edges.push_back(edge);
    }
    return g;
}

namespace {

int letter_start(const DualGraph& g, const Letter& l) {
    return l.fwd ? g.edges[l.edge].u : g.edges[l.edge].v;
}

int letter_end(const DualGraph& g, const Letter& l) {
    return l.fwd ? g.edges[l.edge].v : g.edges[l.edge].u;
}

Letter normalize(const DualGraph& g, Letter l) {
    if (g.edges[l.edge].orb) l.fwd = true;
    return l;
}

Letter letter_inverse(const DualGraph& g, Letter l) {
    if (g.edges[l.edge].orb) return l;
    l.fwd = !l.fwd;
    return l;
}

bool cancels(const DualGraph& g, const Letter& a, const Letter& b) {
    if (a.edge != b.edge) return false;
    if (g.edges[a.edge].orb) return true; // both normalized forward
    return a.fwd != b.fwd;
}

} // namespace

int word_end(const DualGraph& g, const GroupoidWord& w) {
    int node = w.start;
    for (const Letter& l : w.letters) {
        if (letter_start(g, l) != node)
            throw Error("InconsistentEndpoints", "word letters do not chain");
        node = letter_end(g, l);
    }
    return node;
}

bool word_valid(const DualGraph& g, const GroupoidWord& w) {
    try {
        word_end(g, w);
        return true;
    } catch (const Error&) {
        return false;
    }
}

GroupoidWord inverse(const DualGraph& g, const GroupoidWord& w) {
    GroupoidWord out;
    out.start = word_end(g, w);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back(letter_inverse(g, *it));
    return out;
}

GroupoidWord concat(const DualGraph& g, const GroupoidWord& a, const GroupoidWord& b) {
    if (word_end(g, a) != b.start)
        throw Error("InconsistentEndpoints", "cannot concatenate words");
    GroupoidWord out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

GroupoidWord reduce(const DualGraph& g, const GroupoidWord& w) {
    word_end(g, w);
    GroupoidWord out;
    out.start = w.start;
    for (Letter l : w.letters) {
        l = normalize(g, l);
        if (!out.letters.empty() && cancels(g, out.letters.back(), l))
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

GroupoidWord reduce_random_order(const DualGraph& g, const GroupoidWord& w, unsigned seed) {
    word_end(g, w);
    unsigned long long state = seed * 2862933555777941757ull + 3037000493ull;
    auto next = [&]() {
        state = state * 2862933555777941757ull + 3037000493ull;
        return state >> 16;
    };
    std::vector<Letter> letters;
    for (Letter l : w.letters) letters.push_back(normalize(g, l));
    while (true) {
        std::vector<int> redexes;
        for (size_t k = 0; k + 1 < letters.size(); ++k)
            if (cancels(g, letters[k], letters[k + 1])) redexes.push_back(static_cast<int>(k));
        if (redexes.empty()) break;
        int pick = redexes[next() % redexes.size()];
        letters.erase(letters.begin() + pick, letters.begin() + pick + 2);
    }
    GroupoidWord out;
    out.start = w.start;
    out.letters = std::move(letters);
    return out;
}

CyclicWord cyclic_normal_form(const DualGraph& g, const GroupoidWord& raw) {
    GroupoidWord w = reduce(g, raw);
    if (word_end(g, w) != w.start) throw Error("NotALoop", "cyclic form needs a loop");
    std::vector<Letter> letters = w.letters;
    int start = w.start;
    while (letters.size() >= 2 && cancels(g, letters.back(), letters.front())) {
        start = letter_end(g, letters.front());
        letters.erase(letters.begin());
        letters.pop_back();
    }
    CyclicWord out;
    if (letters.empty()) return out;
    int n = static_cast<int>(letters.size());
    // Minimal rotation.
    int best = 0;
    for (int s = 1; s < n; ++s)
        for (int k = 0; k < n; ++k) {
            const Letter& lhs = letters[(s + k) % n];
            const Letter& rhs = letters[(best + k) % n];
            if (lhs != rhs) {
                if (lhs < rhs) best = s;
                break;
            }
        }
    for (int k = 0; k < n; ++k) out.letters.push_back(letters[(best + k) % n]);
    out.nodes.resize(n);
    int node = start;
    std::vector<int> path_nodes(n);
    for (int k = 0; k < n; ++k) {
        path_nodes[k] = node;
        node = letter_end(g, letters[k]);
    }
    for (int k = 0; k < n; ++k) out.nodes[k] = path_nodes[(best + k) % n];
    return out;
}

CyclicWord cyclic_inverse(const DualGraph& g, const CyclicWord& c) {
    if (c.letters.empty()) return c;
    GroupoidWord w;
    w.start = c.nodes[0];
    w.letters = c.letters;
    return cyclic_normal_form(g, inverse(g, w));
}

bool is_primitive(const DualGraph& g, const CyclicWord& c) {
    int n = static_cast<int>(c.letters.size());
    if (n == 0) return false;
    if (n == 1 && g.edges[c.letters[0].edge].orb) return false; // torsion
    for (int r = 1; r < n; ++r) {
        if (n % r != 0) continue;
        bool periodic = true;
        for (int k = 0; k < n && periodic; ++k)
            if (c.letters[k] != c.letters[(k + r) % n]) periodic = false;
        if (periodic) return false;
    }
    return true;
}

bool conjugate(const DualGraph& g, const CyclicWord& a, const CyclicWord& b) {
    (void)g;
    return a.letters == b.letters;
}

std::string format_word(const DualGraph& g, const GroupoidWord& w) {
    if (w.letters.empty()) return "1_" + g.node_ids[w.start];
    std::string out;
    for (const Letter& l : w.letters) {
        if (!out.empty()) out += " ";
        out += g.edges[l.edge].id;
        if (!l.fwd) out += "'";
    }
    return out;
}

std::string format_cyclic(const DualGraph& g, const CyclicWord& c) {
    if (c.letters.empty()) return "1";
    std::string out = "[";
    for (size_t k = 0; k < c.letters.size(); ++k) {
        if (k) out += " ";
        out += g.edges[c.letters[k].edge].id;
        if (!c.letters[k].fwd) out += "'";
    }
    return out + "]";
}

int CoverGraphs::cover_node(int base_node, int sheet) const {
    for (size_t n = 0; n < cover_node_base.size(); ++n)
        if (cover_node_base[n] == base_node && cover_node_sheet[n] == sheet)
            return static_cast<int>(n);
    throw Error("Internal", "no such cover node");
}

CoverGraphs cover_graphs(const Triangulation& t, const DoubleCover& cover) {
    CoverGraphs cg;
    cg.base = dual_graph(t);
    cg.cover = dual_graph(cover.cover);

    cg.cover_node_base.resize(cg.cover.num_nodes());
    cg.cover_node_sheet.resize(cg.cover.num_nodes());
    for (int n = 0; n < cg.cover.num_nodes(); ++n) {
        cg.cover_node_base[n] = cover.tri_origin[n].first;
        cg.cover_node_sheet[n] = cover.tri_origin[n].second;
    }
    cg.cover_node_sigma.resize(cg.cover.num_nodes());
    for (int n = 0; n < cg.cover.num_nodes(); ++n)
        cg.cover_node_sigma[n] = cg.cover_node(cg.cover_node_base[n], -cg.cover_node_sheet[n]);

    auto base_edge_of_arc = [&](int arc) {
        for (size_t e = 0; e < cg.base.edges.size(); ++e)
            if (cg.base.edges[e].id == t.edge_id(arc)) return static_cast<int>(e);
        throw Error("Internal", "arc has no dual edge");
    };
    auto cover_edge_of_arc = [&](int arc) {
        for (size_t e = 0; e < cg.cover.edges.size(); ++e)
            if (cg.cover.edges[e].id == cover.cover.edge_id(arc)) return static_cast<int>(e);
        throw Error("Internal", "cover arc has no dual edge");
    };

    cg.cover_edge_base.resize(cg.cover.edges.size());
    cg.cover_edge_sigma.resize(cg.cover.edges.size());
    for (size_t e = 0; e < cg.cover.edges.size(); ++e) {
        int arc = cover.cover.edge_index(cg.cover.edges[e].id);
        cg.cover_edge_base[e] = base_edge_of_arc(cover.proj_edge[arc]);
        cg.cover_edge_sigma[e] = cover_edge_of_arc(cover.sigma_edge[arc]);
    }
    for (size_t f = 0; f < t.folds().size(); ++f) {
        const auto& fold = t.folds()[f];
        cg.fold_node.push_back(fold.tri);
        cg.fold_loop_edge.push_back(base_edge_of_arc(fold.loop_edge));
        cg.fold_orb_edge.push_back(base_edge_of_arc(fold.radius_edge));
        cg.fold_cover_edge.push_back(cover_edge_of_arc(cover.fold_arc[f]));
    }
    return cg;
}

namespace {

Letter directed_letter(const DualGraph& g, int edge, int from) {
    if (g.edges[edge].u == from) return Letter{edge, true};
    if (g.edges[edge].v == from) return Letter{edge, false};
    throw Error("InconsistentEndpoints", "letter does not start at the node");
}

} // namespace

GroupoidWord sigma_word(const CoverGraphs& cg, const GroupoidWord& w) {
    GroupoidWord out;
    out.start = cg.cover_node_sigma[w.start];
    int node = out.start;
    int original = w.start;
    for (const Letter& l : w.letters) {
        int next_original = letter_end(cg.cover, l);
        Letter mapped = directed_letter(cg.cover, cg.cover_edge_sigma[l.edge], node);
        out.letters.push_back(mapped);
        node = letter_end(cg.cover, mapped);
        original = next_original;
        if (node != cg.cover_node_sigma[original])
            throw Error("Internal", "sigma word lost track of nodes");
    }
    return out;
}

GroupoidWord project(const CoverGraphs& cg, const GroupoidWord& w) {
    GroupoidWord out;
    out.start = cg.cover_node_base[w.start];
    int base_node = out.start;
    for (const Letter& l : w.letters) {
        int fold = -1;
        for (size_t f = 0; f < cg.fold_cover_edge.size(); ++f)
            if (cg.fold_cover_edge[f] == l.edge) fold = static_cast<int>(f);
        if (fold < 0) {
            Letter mapped = directed_letter(cg.base, cg.cover_edge_base[l.edge], base_node);
            out.letters.push_back(mapped);
            base_node = letter_end(cg.base, mapped);
        } else {
            // Through the puncture: into the self-folded triangle, around the
            // orbifold loop, back out.
            int pnode = cg.fold_node[fold];
            Letter in = directed_letter(cg.base, cg.fold_loop_edge[fold], base_node);
            if (letter_end(cg.base, in) != pnode)
                throw Error("Internal", "loop edge does not reach the fold node");
            out.letters.push_back(in);
            out.letters.push_back(Letter{cg.fold_orb_edge[fold], true});
            out.letters.push_back(letter_inverse(cg.base, in));
            // base node unchanged
        }
    }
    return reduce(cg.base, out);
}

std::optional<GroupoidWord> lift(const CoverGraphs& cg, const GroupoidWord& raw, int sheet) {
    GroupoidWord w = reduce(cg.base, raw);
    auto is_fold_node = [&](int node) {
        return std::find(cg.fold_node.begin(), cg.fold_node.end(), node) != cg.fold_node.end();
    };
    if (is_fold_node(w.start) || is_fold_node(word_end(cg.base, w))) return std::nullopt;
    GroupoidWord out;
    out.start = cg.cover_node(w.start, sheet);
    int base_node = w.start;
    int cur_sheet = sheet;
    size_t k = 0;
    while (k < w.letters.size()) {
        const Letter& l = w.letters[k];
        int fold = -1;
        for (size_t f = 0; f < cg.fold_loop_edge.size(); ++f)
            if (cg.fold_loop_edge[f] == l.edge) fold = static_cast<int>(f);
        if (fold >= 0 && letter_end(cg.base, l) == cg.fold_node[fold]) {
            // Reduced words pass straight through: loop edge in, orbifold
            // letter, loop edge out, flipping the sheet.
            if (k + 2 >= w.letters.size()) return std::nullopt;
            if (w.letters[k + 1].edge != cg.fold_orb_edge[fold]) return std::nullopt;
            if (w.letters[k + 2] != letter_inverse(cg.base, l)) return std::nullopt;
            int cover_edge = cg.fold_cover_edge[fold];
            Letter mapped = directed_letter(cg.cover, cover_edge,
                                            cg.cover_node(base_node, cur_sheet));
            out.letters.push_back(mapped);
            cur_sheet = -cur_sheet;
            k += 3;
            continue;
        }
        if (cg.base.edges[l.edge].orb) return std::nullopt; // bare e_P
        // Ordinary letter: stay on the sheet.  Both sheet copies project to
        // l.edge; pick the one incident to the current cover node and headed
        // the right way.
        int cover_node = cg.cover_node(base_node, cur_sheet);
        int target = letter_end(cg.base, l);
        int cover_edge = -1;
        for (size_t e = 0; e < cg.cover.edges.size(); ++e) {
            if (cg.cover_edge_base[e] != l.edge) continue;
            const auto& edge = cg.cover.edges[e];
            if (edge.u != cover_node && edge.v != cover_node) continue;
            Letter candidate = directed_letter(cg.cover, static_cast<int>(e), cover_node);
            if (cg.cover_node_base[letter_end(cg.cover, candidate)] != target) continue;
            cover_edge = static_cast<int>(e);
            out.letters.push_back(candidate);
            break;
        }
        if (cover_edge < 0) throw Error("Internal", "no lift of an ordinary letter");
        base_node = letter_end(cg.base, l);
        ++k;
    }
    return out;
}

int orb_crossings(const DualGraph& g, const GroupoidWord& w) {
    int count = 0;
    for (const Letter& l : w.letters)
        if (g.edges[l.edge].orb) ++count;
    return count;
}

std::optional<SymmetricString> symmetric_decomposition(const DualGraph& g, const GroupoidWord& raw) {
    GroupoidWord w = reduce(g, raw);
    int n = static_cast<int>(w.letters.size());
    if (n % 2 == 0 || word_end(g, w) != w.start) return std::nullopt;
    int mid = n / 2;
    if (!g.edges[w.letters[mid].edge].orb) return std::nullopt;
    for (int i = 1; i <= mid; ++i)
        if (w.letters[mid + i] != letter_inverse(g, w.letters[mid - i])) return std::nullopt;
    SymmetricString out;
    out.orb_edge = w.letters[mid].edge;
    out.v.start = w.start;
    out.v.letters.assign(w.letters.begin(), w.letters.begin() + mid);
    return out;
}

bool is_fold_node(const DualGraph& g, int node) {
    for (const auto& e : g.edges)
        if (e.orb && e.u == node) return true;
    return false;
}

StringClasses classify_strings(const DualGraph& g, int max_len) {
    // Words with an endpoint at a self-folded node live in the tagged-arc
    // set, reached through the symmetric classes; strings proper have both
    // endpoints at ordinary nodes.
    StringClasses out;
    std::set<std::pair<GroupoidWord, GroupoidWord>> pairs_seen;
    std::set<GroupoidWord> symmetric_seen;
    for (const GroupoidWord& w : enumerate_words(g, max_len)) {
        if (is_fold_node(g, w.start) || is_fold_node(g, word_end(g, w))) continue;
        GroupoidWord inv = reduce(g, inverse(g, w));
        if (w == inv) {
            if (symmetric_seen.insert(w).second) out.symmetric.push_back(w);
        } else {
            auto key = w < inv ? std::make_pair(w, inv) : std::make_pair(inv, w);
            if (pairs_seen.insert(key).second) ++out.pair_classes;
        }
    }
    return out;
}

std::optional<SymmetricBand> symmetric_band_decomposition(const DualGraph& g, const CyclicWord& c) {
    int n = static_cast<int>(c.letters.size());
    if (n < 2 || n % 2 != 0) return std::nullopt;
    for (int rot = 0; rot < n; ++rot) {
        auto at = [&](int k) { return c.letters[(rot + k) % n]; };
        auto node_at = [&](int k) { return c.nodes[(rot + k) % n]; };
        if (!g.edges[at(0).edge].orb) continue;
        int m = n / 2;
        if (!g.edges[at(m).edge].orb) continue;
        bool ok = true;
        for (int i = 1; i < m && ok; ++i)
            if (at(m + i) != letter_inverse(g, at(m - i))) ok = false;
        if (!ok) continue;
        SymmetricBand out;
        out.fold_p = at(0).edge;
        out.fold_q = at(m).edge;
        out.u_start = node_at(1);
        for (int i = 1; i < m; ++i) out.u.push_back(at(i));
        return out;
    }
    return std::nullopt;
}

BandClasses classify_bands(const DualGraph& g, int max_len) {
    BandClasses out;
    std::set<CyclicWord> seen;
    for (const GroupoidWord& w : enumerate_words(g, max_len)) {
        if (w.letters.size() < 2) continue;
        if (word_end(g, w) != w.start) continue;
        CyclicWord c = cyclic_normal_form(g, w);
        if (c.letters.size() != w.letters.size()) continue; // not cyclically reduced
        if (!is_primitive(g, c)) continue;
        seen.insert(c);
    }
    // Representatives modulo inversion.
    for (const CyclicWord& c : seen) {
        CyclicWord inv = cyclic_inverse(g, c);
        if (inv < c) continue; // the partner represents the pair
        out.all.push_back(c);
        if (conjugate(g, c, inv))
            out.symmetric.push_back(c);
        else
            ++out.asymmetric_pairs;
        int orb = 0;
        for (const Letter& l : c.letters)
            if (g.edges[l.edge].orb) ++orb;
        if (orb % 2 == 0) ++out.in_image_of_psi;
    }
    return out;
}

GroupoidWord band_to_tagged(const DualGraph& g, const CyclicWord& c, int eps1, int eps2) {
    if (!is_primitive(g, c)) throw Error("NotPrimitive", "band class is not primitive");
    auto dec = symmetric_band_decomposition(g, c);
    if (!dec) throw Error("NotSymmetric", "band class is not conjugate to its inverse");
    // u runs from the P node to the Q node; the taggings prepend e_P and
    // append e_Q.
    GroupoidWord w;
    w.start = dec->u_start;
    if (eps1) w.letters.push_back(Letter{dec->fold_p, true});
    w.letters.insert(w.letters.end(), dec->u.begin(), dec->u.end());
    if (eps2) w.letters.push_back(Letter{dec->fold_q, true});
    return reduce(g, w);
}

TaggedBand tagged_to_band(const DualGraph& g, const GroupoidWord& raw) {
    GroupoidWord w = reduce(g, raw);
    if (w.letters.empty()) throw Error("NotSymmetric", "trivial tagged word");
    TaggedBand out;
    out.eps1 = g.edges[w.letters.front().edge].orb ? 1 : 0;
    out.eps2 = g.edges[w.letters.back().edge].orb ? 1 : 0;
    std::vector<Letter> u(w.letters.begin() + out.eps1, w.letters.end() - out.eps2);
    int u_start = out.eps1 ? letter_end(g, w.letters.front()) : w.start;
    // The endpoints of the stripped word sit at fold nodes; their orbifold
    // loops close the band [e_P u e_Q u^-1].
    int p_node = u_start;
    GroupoidWord band;
    band.start = p_node;
    int p_edge = -1, q_edge = -1;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (!g.edges[e].orb) continue;
        if (g.edges[e].u == p_node) p_edge = static_cast<int>(e);
    }
    GroupoidWord upath{u_start, u};
    int q_node = word_end(g, upath);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (!g.edges[e].orb) continue;
        if (g.edges[e].u == q_node) q_edge = static_cast<int>(e);
    }
    if (p_edge < 0 || q_edge < 0)
        throw Error("NotSymmetric", "tagged word does not join self-folded nodes");
    band.letters.push_back(Letter{p_edge, true});
    band.letters.insert(band.letters.end(), u.begin(), u.end());
    band.letters.push_back(Letter{q_edge, true});
    GroupoidWord uinv = inverse(g, upath);
    band.letters.insert(band.letters.end(), uinv.letters.begin(), uinv.letters.end());
    out.band = cyclic_normal_form(g, band);
    return out;
}

std::vector<GroupoidWord> enumerate_words(const DualGraph& g, int max_len) {
    std::vector<GroupoidWord> out;
    std::vector<Letter> all_letters;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        all_letters.push_back(Letter{static_cast<int>(e), true});
        if (!g.edges[e].orb) all_letters.push_back(Letter{static_cast<int>(e), false});
    }
    std::sort(all_letters.begin(), all_letters.end());
    struct Frame {
        GroupoidWord word;
        int end;
    };
    std::vector<Frame> frontier;
    for (int n = 0; n < g.num_nodes(); ++n) frontier.push_back({GroupoidWord{n, {}}, n});
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Frame> next;
        for (const Frame& f : frontier) {
            for (const Letter& l : all_letters) {
                if (letter_start(g, l) != f.end) continue;
                if (!f.word.letters.empty() && cancels(g, f.word.letters.back(), l)) continue;
                Frame nf = f;
                nf.word.letters.push_back(l);
                nf.end = letter_end(g, l);
                out.push_back(nf.word);
                next.push_back(std::move(nf));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

} // namespace qpskew
