#include "qpskew/modules.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace qpskew {

Representation Representation::zero(const Quiver& q, std::vector<int> dims) {
    Representation r;
    r.dims = std::move(dims);
    for (int a = 0; a < q.num_arrows(); ++a)
        r.mats.emplace_back(r.dims[q.arrow(a).tgt], r.dims[q.arrow(a).src]);
    return r;
}

Representation Representation::simple(const Quiver& q, int vertex) {
    std::vector<int> dims(q.num_vertices(), 0);
    dims[vertex] = 1;
    return zero(q, std::move(dims));
}

int Representation::total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

QMatrix Representation::evaluate(const Quiver& q, const Path& p) const {
    (void)q;
    if (p.trivial()) return QMatrix::identity(dims[p.base]);
    QMatrix acc = mats[p.arrows[0]];
    for (size_t k = 1; k < p.arrows.size(); ++k) acc = mats[p.arrows[k]] * acc;
    return acc;
}

QMatrix Representation::evaluate(const Quiver& q, const PathExpr& e) const {
    if (e.is_zero()) throw Error("Internal", "evaluate of zero expression needs endpoints");
    const Path& first = e.terms().begin()->first;
    QMatrix acc(dims[first.target(q)], dims[first.source(q)]);
    for (const auto& [p, c] : e.terms()) acc = acc + c * evaluate(q, p);
    return acc;
}

void Representation::check_relations(const QuiverWithPotential& qp) const {
    const Quiver& q = qp.quiver;
    if (static_cast<int>(dims.size()) != q.num_vertices() ||
        static_cast<int>(mats.size()) != q.num_arrows())
        throw Error("ShapeMismatch", "representation does not fit the quiver");
    for (int a = 0; a < q.num_arrows(); ++a)
        if (mats[a].rows() != dims[q.arrow(a).tgt] || mats[a].cols() != dims[q.arrow(a).src])
            throw Error("ShapeMismatch", "matrix of arrow '" + q.arrow(a).id + "' has wrong shape");
    for (int a = 0; a < q.num_arrows(); ++a) {
        PathExpr rel = cyclic_derivative(q, qp.potential, a);
        if (rel.is_zero()) continue;
        if (!evaluate(q, rel).is_zero())
            throw Error("RelationViolated",
                        "cyclic derivative by '" + q.arrow(a).id + "' does not vanish");
    }
}

Representation Representation::direct_sum(const Representation& other) const {
    Representation out;
    out.dims.resize(dims.size());
    for (size_t v = 0; v < dims.size(); ++v) out.dims[v] = dims[v] + other.dims[v];
    for (size_t a = 0; a < mats.size(); ++a)
        out.mats.push_back(QMatrix::block_diag(mats[a], other.mats[a]));
    return out;
}

Representation Representation::twist(const Quiver& q, const Involution& sigma) const {
    Representation out;
    out.dims.resize(dims.size());
    for (int v = 0; v < q.num_vertices(); ++v) out.dims[v] = dims[sigma.vertex(v)];
    out.mats.resize(mats.size());
    for (int a = 0; a < q.num_arrows(); ++a) out.mats[a] = mats[sigma.arrow(a)];
    return out;
}

std::string print_representation(const Quiver& q, const Representation& r) {
    std::ostringstream out;
    for (int v = 0; v < q.num_vertices(); ++v)
        out << "dim " << q.vertex_id(v) << " " << r.dims[v] << "\n";
    for (int a = 0; a < q.num_arrows(); ++a) {
        const QMatrix& m = r.mats[a];
        if (m.is_zero()) continue;
        out << "mat " << q.arrow(a).id << "\n";
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << to_string(m.at(i, j));
            out << "\n";
        }
    }
    return out.str();
}

Representation parse_representation(const Quiver& q, std::istream& in) {
    std::vector<int> dims(q.num_vertices(), 0);
    std::map<int, std::vector<std::vector<Rat>>> raw;
    std::string line;
    int current_arrow = -1;
    std::vector<std::vector<Rat>> current_rows;
    auto flush = [&]() {
        if (current_arrow >= 0) raw[current_arrow] = current_rows;
        current_arrow = -1;
        current_rows.clear();
    };
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ss >> tok) {
            if (tok[0] == '#') break;
            toks.push_back(tok);
        }
        if (toks.empty()) continue;
        if (toks[0] == "dim" && toks.size() == 3) {
            flush();
            dims[q.vertex_index(toks[1])] = std::stoi(toks[2]);
        } else if (toks[0] == "mat" && toks.size() == 2) {
            flush();
            current_arrow = q.arrow_index(toks[1]);
        } else if (current_arrow >= 0) {
            std::vector<Rat> row;
            for (const auto& cell : toks) row.push_back(parse_rational(cell));
            current_rows.push_back(std::move(row));
        } else {
            throw Error("ParseError", "unexpected line in representation: " + line);
        }
    }
    flush();
    Representation r = Representation::zero(q, dims);
    for (const auto& [a, rows] : raw) {
        QMatrix m = QMatrix::from_rows(rows);
        if (m.rows() != r.mats[a].rows() || m.cols() != r.mats[a].cols())
            throw Error("ShapeMismatch", "matrix of arrow '" + q.arrow(a).id + "' has wrong shape");
        r.mats[a] = m;
    }
    return r;
}

Representation parse_representation_text(const Quiver& q, const std::string& text) {
    std::istringstream ss(text);
    return parse_representation(q, ss);
}

namespace {

/// Two-letter relations read off the potential: consecutive arrows of a
/// cycle compose to zero in the Jacobian algebra.  Valid for the gentle
/// algebras the crossing machinery runs on; checked by the caller.
std::vector<std::pair<int, int>> forbidden_pairs(const Quiver& q, const Potential& s) {
    (void)q;
    std::vector<std::pair<int, int>> out;
    for (const auto& [cycle, c] : s.expr().terms()) {
        int n = cycle.length();
        for (int k = 0; k < n; ++k) out.emplace_back(cycle.arrows[k], cycle.arrows[(k + 1) % n]);
    }
    return out;
}

bool is_gentle_enough(const Quiver& q, const Potential& s) {
    for (int a = 0; a < q.num_arrows(); ++a) {
        PathExpr d = cyclic_derivative(q, s, a);
        if (d.num_terms() > 1) return false;
    }
    return true;
}

} // namespace

CrossingWord make_crossing_word(const AdjacencyResult& ctx, const std::vector<std::string>& tokens,
                                bool cyclic) {
    const Quiver& q = ctx.qp.quiver;
    if (!is_gentle_enough(q, ctx.qp.potential))
        throw Error("InvalidWord", "crossing words need a gentle quiver with potential");
    CrossingWord w;
    std::vector<std::string> hints(tokens.size());
    for (const auto& token : tokens) {
        std::string arc = token, hint;
        auto colon = token.find(':');
        if (colon != std::string::npos) {
            arc = token.substr(0, colon);
            hint = token.substr(colon + 1);
        }
        w.arcs.push_back(q.vertex_index(arc));
        hints[w.arcs.size() - 1] = hint;
    }
    if (w.arcs.empty()) throw Error("InvalidWord", "empty word");
    int n = static_cast<int>(w.arcs.size());
    int nsteps = cyclic ? n : n - 1;
    for (int k = 0; k < nsteps; ++k) {
        int u = w.arcs[k];
        int v = w.arcs[(k + 1) % n];
        if (u == v)
            throw Error("InvalidWord", "arc '" + q.vertex_id(u) + "' crossed twice in succession");
        std::vector<CrossingWord::Step> candidates;
        for (int a = 0; a < q.num_arrows(); ++a) {
            if (q.arrow(a).src == u && q.arrow(a).tgt == v) candidates.push_back({a, true});
            if (q.arrow(a).src == v && q.arrow(a).tgt == u) candidates.push_back({a, false});
        }
        const std::string& hint = hints[(k + 1) % n];
        if (!hint.empty()) {
            int want = q.arrow_index(hint);
            std::erase_if(candidates, [&](const auto& s) { return s.arrow != want; });
        }
        if (candidates.empty())
            throw Error("InvalidWord", "arcs '" + q.vertex_id(u) + "' and '" + q.vertex_id(v) +
                                           "' do not share a triangle arrow");
        if (candidates.size() > 1)
            throw Error("InvalidWord", "ambiguous step '" + q.vertex_id(u) + "' to '" +
                                           q.vertex_id(v) + "'; disambiguate with arc:arrow");
        w.steps.push_back(candidates[0]);
    }
    // Letter-pair validity along the word.
    auto pairs = forbidden_pairs(q, ctx.qp.potential);
    auto bad = [&](int first, int second) {
        return std::find(pairs.begin(), pairs.end(), std::make_pair(first, second)) != pairs.end();
    };
    int npairs = cyclic ? nsteps : nsteps - 1;
    for (int k = 0; k < npairs; ++k) {
        const auto& s1 = w.steps[k];
        const auto& s2 = w.steps[(k + 1) % nsteps];
        if (s1.forward && s2.forward && bad(s1.arrow, s2.arrow))
            throw Error("InvalidWord", "word runs through the relation '" +
                                           q.arrow(s1.arrow).id + " then " + q.arrow(s2.arrow).id + "'");
        if (!s1.forward && !s2.forward && bad(s2.arrow, s1.arrow))
            throw Error("InvalidWord", "word runs through the relation '" +
                                           q.arrow(s2.arrow).id + " then " + q.arrow(s1.arrow).id + "'");
        if (s1.forward != s2.forward && s1.arrow == s2.arrow)
            throw Error("InvalidWord", "word backtracks along '" + q.arrow(s1.arrow).id + "'");
    }
    return w;
}

Representation string_module(const AdjacencyResult& ctx, const CrossingWord& word) {
    const Quiver& q = ctx.qp.quiver;
    int n = static_cast<int>(word.arcs.size());
    if (static_cast<int>(word.steps.size()) != n - 1)
        throw Error("InvalidWord", "open word expected");
    std::vector<int> dims(q.num_vertices(), 0);
    std::vector<int> slot(n);
    for (int k = 0; k < n; ++k) slot[k] = dims[word.arcs[k]]++;
    // Crossing k occupies index `offset(vertex) + slot` inside its vertex.
    Representation r = Representation::zero(q, dims);
    for (int k = 0; k < n - 1; ++k) {
        const auto& s = word.steps[k];
        int from = s.forward ? k : k + 1;
        int to = s.forward ? k + 1 : k;
        r.mats[s.arrow].at(slot[to], slot[from]) = 1;
    }
    r.check_relations(ctx.qp);
    return r;
}

namespace {

bool word_is_primitive(const CrossingWord& w) {
    int n = static_cast<int>(w.arcs.size());
    for (int r = 1; r < n; ++r) {
        if (n % r != 0) continue;
        bool periodic = true;
        for (int k = 0; k < n && periodic; ++k) {
            int j = (k + r) % n;
            if (w.arcs[k] != w.arcs[j] || w.steps[k].arrow != w.steps[j].arrow ||
                w.steps[k].forward != w.steps[j].forward)
                periodic = false;
        }
        if (periodic) return false;
    }
    return true;
}

} // namespace

Representation band_module(const AdjacencyResult& ctx, const CrossingWord& word, const Rat& lambda,
                           int power) {
    const Quiver& q = ctx.qp.quiver;
    int n = static_cast<int>(word.arcs.size());
    if (static_cast<int>(word.steps.size()) != n || n < 2)
        throw Error("InvalidWord", "cyclic word expected");
    if (lambda == 0) throw Error("ZeroLambda", "band parameter must be nonzero");
    if (power < 1) throw Error("InvalidWord", "band power must be >= 1");
    if (!word_is_primitive(word)) throw Error("NotPrimitive", "cyclic word is a proper power");
    bool any_fwd = false, any_bwd = false;
    for (const auto& s : word.steps) (s.forward ? any_fwd : any_bwd) = true;
    if (!any_fwd || !any_bwd)
        throw Error("InvalidWord", "cyclic word winds around a marked point");

    // Distinguished arc: crossed first undirectly then directly, smallest
    // arc id wins.  The scalar sits on the outgoing direct step.
    int base = -1;
    for (int k = 0; k < n; ++k) {
        const auto& in = word.steps[(k + n - 1) % n];
        const auto& out = word.steps[k];
        if (!in.forward && out.forward) {
            if (base < 0 || q.vertex_id(word.arcs[k]) < q.vertex_id(word.arcs[base])) base = k;
        }
    }
    if (base < 0) throw Error("InvalidWord", "no distinguished arc exists");

    std::vector<int> dims(q.num_vertices(), 0);
    std::vector<int> slot(n);
    for (int k = 0; k < n; ++k) {
        slot[k] = dims[word.arcs[k]];
        dims[word.arcs[k]] += power;
    }
    Representation r = Representation::zero(q, dims);
    for (int k = 0; k < n; ++k) {
        const auto& s = word.steps[k];
        int from_cross = s.forward ? k : (k + 1) % n;
        int to_cross = s.forward ? (k + 1) % n : k;
        bool scaled = k == base; // base step is forward by construction
        for (int t = 0; t < power; ++t) {
            if (scaled) {
                r.mats[s.arrow].at(slot[to_cross] + t, slot[from_cross] + t) = lambda;
                if (t + 1 < power)
                    r.mats[s.arrow].at(slot[to_cross] + t + 1, slot[from_cross] + t) = 1;
            } else {
                r.mats[s.arrow].at(slot[to_cross] + t, slot[from_cross] + t) = 1;
            }
        }
    }
    r.check_relations(ctx.qp);
    return r;
}

Representation induce(const SkewResult& ctx, const Representation& r) {
    const Quiver& q = ctx.base;
    const Quiver& qg = ctx.quiver_G;
    std::vector<int> dims(qg.num_vertices(), 0);
    for (int v = 0; v < qg.num_vertices(); ++v) {
        const auto& origin = ctx.vertex_origin[v];
        dims[v] = origin.sign == 0
                      ? r.dims[origin.base_vertex] + r.dims[ctx.sigma.vertex(origin.base_vertex)]
                      : r.dims[origin.base_vertex];
    }
    Representation out = Representation::zero(qg, dims);
    const Rat half(1, 2);
    for (int a = 0; a < qg.num_arrows(); ++a) {
        const auto& origin = ctx.arrow_origin[a];
        int rep = origin.rep_arrow;
        int other = ctx.sigma.arrow(rep);
        Rat sign = origin.sign < 0 ? Rat(-1) : Rat(1);
        switch (arrow_case(q, ctx.part, rep)) {
        case ArrowCase::VV:
            out.mats[a] = r.mats[rep];
            break;
        case ArrowCase::VW:
            // M_i -> M_j + M_{sigma j}
            out.mats[a] = QMatrix::vstack(half * r.mats[rep], (sign * half) * r.mats[other]);
            break;
        case ArrowCase::WV:
            // M_i + M_{sigma i} -> M_j
            out.mats[a] = QMatrix::hstack(half * r.mats[rep], (sign * half) * r.mats[other]);
            break;
        case ArrowCase::WW:
            out.mats[a] = QMatrix::block_diag(half * r.mats[rep], half * r.mats[other]);
            break;
        }
    }
    return out;
}

Representation restrict(const SkewResult& ctx, const Representation& r) {
    const Quiver& q = ctx.base;
    std::vector<int> dims(q.num_vertices(), 0);
    auto orbit_vertex = [&](int base_vertex) {
        int rep = ctx.choice.is_w_rep[base_vertex] ? base_vertex : ctx.sigma.vertex(base_vertex);
        return ctx.skew_vertex(rep, 0);
    };
    for (int v = 0; v < q.num_vertices(); ++v) {
        if (ctx.part.in_v(v))
            dims[v] = r.dims[ctx.skew_vertex(v, +1)] + r.dims[ctx.skew_vertex(v, -1)];
        else
            dims[v] = r.dims[orbit_vertex(v)];
    }
    // Normalization: the W-source cases carry a factor 2 so that
    // restrict(induce(M)) equals M + M^sigma on the nose up to the vertexwise
    // base change mixing the two copies over fixed vertices.
    Representation out = Representation::zero(q, dims);
    const Rat two(2);
    for (int a = 0; a < q.num_arrows(); ++a) {
        int rep = ctx.rep_of(a);
        Rat eps = ctx.iota_sign_flips(a) ? Rat(-1) : Rat(1);
        switch (arrow_case(q, ctx.part, a)) {
        case ArrowCase::VV:
            out.mats[a] = QMatrix::block_diag(r.mats[ctx.skew_arrow(rep, +1)],
                                              r.mats[ctx.skew_arrow(rep, -1)]);
            break;
        case ArrowCase::VW:
            out.mats[a] = QMatrix::hstack(r.mats[ctx.skew_arrow(rep, +1)],
                                          eps * r.mats[ctx.skew_arrow(rep, -1)]);
            break;
        case ArrowCase::WV:
            out.mats[a] = two * QMatrix::vstack(r.mats[ctx.skew_arrow(rep, +1)],
                                                eps * r.mats[ctx.skew_arrow(rep, -1)]);
            break;
        case ArrowCase::WW:
            out.mats[a] = two * r.mats[ctx.skew_arrow(rep, 0)];
            break;
        }
    }
    return out;
}

std::vector<std::vector<QMatrix>> hom_space(const Quiver& q, const Representation& r1,
                                            const Representation& r2) {
    int nv = q.num_vertices();
    std::vector<int> offset(nv, 0);
    int unknowns = 0;
    for (int v = 0; v < nv; ++v) {
        offset[v] = unknowns;
        unknowns += r2.dims[v] * r1.dims[v];
    }
    int equations = 0;
    for (int a = 0; a < q.num_arrows(); ++a)
        equations += r2.dims[q.arrow(a).tgt] * r1.dims[q.arrow(a).src];
    QMatrix system(std::max(equations, 1), unknowns);
    int row = 0;
    for (int a = 0; a < q.num_arrows(); ++a) {
        int s = q.arrow(a).src, t = q.arrow(a).tgt;
        // X_t R1(a) - R2(a) X_s = 0, entry (i, j).
        for (int i = 0; i < r2.dims[t]; ++i)
            for (int j = 0; j < r1.dims[s]; ++j) {
                for (int k = 0; k < r1.dims[t]; ++k)
                    system.at(row, offset[t] + i * r1.dims[t] + k) += r1.mats[a].at(k, j);
                for (int l = 0; l < r2.dims[s]; ++l)
                    system.at(row, offset[s] + l * r1.dims[s] + j) -= r2.mats[a].at(i, l);
                ++row;
            }
    }
    QMatrix basis = system.kernel();
    std::vector<std::vector<QMatrix>> out;
    for (int col = 0; col < basis.cols(); ++col) {
        std::vector<QMatrix> blocks;
        for (int v = 0; v < nv; ++v) {
            QMatrix m(r2.dims[v], r1.dims[v]);
            for (int i = 0; i < r2.dims[v]; ++i)
                for (int j = 0; j < r1.dims[v]; ++j)
                    m.at(i, j) = basis.at(offset[v] + i * r1.dims[v] + j, col);
            blocks.push_back(std::move(m));
        }
        out.push_back(std::move(blocks));
    }
    return out;
}

namespace {

/// Small deterministic generator for sampling coefficient vectors.
struct Lcg {
    unsigned long long state;
    explicit Lcg(unsigned seed) : state(seed * 6364136223846793005ull + 1442695040888963407ull) {}
    unsigned long long next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 17;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
};

} // namespace

bool is_isomorphic(const Quiver& q, const Representation& r1, const Representation& r2,
                   unsigned seed) {
    if (r1.dims != r2.dims) return false;
    if (r1 == r2) return true;
    auto basis = hom_space(q, r1, r2);
    if (basis.empty()) return r1.total_dim() == 0;
    auto invertible = [&](const std::vector<QMatrix>& blocks) {
        for (int v = 0; v < q.num_vertices(); ++v)
            if (r1.dims[v] > 0 && !blocks[v].invertible()) return false;
        return true;
    };
    for (const auto& element : basis)
        if (invertible(element)) return true;
    Lcg rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<QMatrix> combo;
        for (int v = 0; v < q.num_vertices(); ++v) combo.emplace_back(r2.dims[v], r1.dims[v]);
        for (const auto& element : basis) {
            Rat c(rng.range(-500, 500));
            if (c == 0) c = 1;
            for (int v = 0; v < q.num_vertices(); ++v) combo[v] = combo[v] + c * element[v];
        }
        if (invertible(combo)) return true;
    }
    return false;
}

namespace {

QMatrix full_matrix(const Quiver& q, const Representation& r, const std::vector<QMatrix>& blocks) {
    int n = r.total_dim();
    QMatrix m(n, n);
    int off = 0;
    for (int v = 0; v < q.num_vertices(); ++v) {
        for (int i = 0; i < r.dims[v]; ++i)
            for (int j = 0; j < r.dims[v]; ++j) m.at(off + i, off + j) = blocks[v].at(i, j);
        off += r.dims[v];
    }
    return m;
}

/// Extracts the subrepresentation spanned by per-vertex column bases; the
/// span must be action-invariant.
Representation subrepresentation(const Quiver& q, const Representation& r,
                                 const std::vector<QMatrix>& bases) {
    Representation out;
    out.dims.resize(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) out.dims[v] = bases[v].cols();
    out = Representation::zero(q, out.dims);
    for (int a = 0; a < q.num_arrows(); ++a) {
        int s = q.arrow(a).src, t = q.arrow(a).tgt;
        QMatrix image = r.mats[a] * bases[s];
        // Solve bases[t] * X = image column by column.
        QMatrix x(bases[t].cols(), image.cols());
        for (int col = 0; col < image.cols(); ++col) {
            std::vector<Rat> rhs(image.rows());
            for (int i = 0; i < image.rows(); ++i) rhs[i] = image.at(i, col);
            auto sol = bases[t].solve(rhs);
            if (sol.empty())
                throw Error("Internal", "subspace is not action-invariant");
            for (int i = 0; i < x.rows(); ++i) x.at(i, col) = sol[0][i];
        }
        out.mats[a] = x;
    }
    return out;
}

std::vector<QMatrix> per_vertex_kernel(const Quiver& q, const Representation& r,
                                       const QMatrix& full) {
    std::vector<QMatrix> out;
    int off = 0;
    for (int v = 0; v < q.num_vertices(); ++v) {
        QMatrix block(r.dims[v], r.dims[v]);
        for (int i = 0; i < r.dims[v]; ++i)
            for (int j = 0; j < r.dims[v]; ++j) block.at(i, j) = full.at(off + i, off + j);
        out.push_back(block.kernel());
        off += r.dims[v];
    }
    return out;
}

void decompose_impl(const Quiver& q, const Representation& r, unsigned seed,
                    std::vector<Representation>& out) {
    if (r.total_dim() == 0) return;
    auto basis = hom_space(q, r, r);
    int dim_end = static_cast<int>(basis.size());
    if (dim_end <= 1) {
        out.push_back(r);
        return;
    }
    std::vector<Rat> obstruction;
    Lcg rng(seed);
    int attempts = dim_end + 32;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::vector<QMatrix> blocks;
        if (attempt < dim_end) {
            blocks = basis[attempt];
        } else {
            for (int v = 0; v < q.num_vertices(); ++v) blocks.emplace_back(r.dims[v], r.dims[v]);
            for (const auto& element : basis) {
                Rat c(rng.range(-9, 9));
                for (int v = 0; v < q.num_vertices(); ++v)
                    blocks[v] = blocks[v] + c * element[v];
            }
        }
        QMatrix theta = full_matrix(q, r, blocks);
        auto mu = minimal_polynomial(theta);
        auto roots = rational_roots(mu);
        int pieces = static_cast<int>(roots.roots.size()) + (roots.remainder.size() > 1 ? 1 : 0);
        std::vector<std::vector<Rat>> factors;
        if (pieces >= 2) {
            for (const auto& [lambda, mult] : roots.roots) {
                std::vector<Rat> f{-lambda, Rat(1)};
                std::vector<Rat> powered{Rat(1)};
                for (int k = 0; k < mult; ++k) {
                    std::vector<Rat> next(powered.size() + 1, Rat(0));
                    for (size_t i = 0; i < powered.size(); ++i) {
                        next[i] += powered[i] * f[0];
                        next[i + 1] += powered[i];
                    }
                    powered = next;
                }
                factors.push_back(powered);
            }
            if (roots.remainder.size() > 1) factors.push_back(roots.remainder);
        } else if (roots.roots.empty() && roots.remainder.size() == 5) {
            auto split = try_split_quartic(roots.remainder);
            if (split.size() == 2 && split[0] != split[1]) factors = split;
        }
        if (factors.size() >= 2) {
            bool split_found = true;
            std::vector<Representation> parts;
            for (const auto& f : factors) {
                // Factors carry their full minpoly multiplicity, so the
                // kernel is the whole generalized component.
                QMatrix fh = evaluate_polynomial(f, theta);
                auto bases = per_vertex_kernel(q, r, fh);
                int dim = 0;
                for (const auto& b : bases) dim += b.cols();
                if (dim == 0 || dim == r.total_dim()) {
                    split_found = false;
                    break;
                }
                parts.push_back(subrepresentation(q, r, bases));
            }
            int dim_sum = 0;
            for (const auto& p : parts) dim_sum += p.total_dim();
            if (split_found && dim_sum == r.total_dim()) {
                for (const auto& p : parts) decompose_impl(q, p, seed + 1, out);
                return;
            }
        }
        if (roots.remainder.size() > 1 && obstruction.empty()) obstruction = roots.remainder;
    }
    // No split found.  Certify indecomposability via End modulo its radical,
    // otherwise report the irrational eigenvalue that blocks the split.
    EndInfo info = end_info(q, r);
    if (info.local()) {
        out.push_back(r);
        return;
    }
    if (!obstruction.empty())
        throw Error("FieldObstruction", "splitting needs an irrational eigenvalue; minimal polynomial " +
                                            format_polynomial(obstruction));
    throw Error("FieldObstruction", "endomorphism algebra is not local but no rational split exists");
}

} // namespace

EndInfo end_info(const Quiver& q, const Representation& r) {
    auto basis = hom_space(q, r, r);
    int n = static_cast<int>(basis.size());
    QMatrix gram(std::max(n, 1), std::max(n, 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat t = 0;
            for (int v = 0; v < q.num_vertices(); ++v) t += (basis[i][v] * basis[j][v]).trace();
            gram.at(i, j) = t;
        }
    EndInfo info;
    info.dim_end = n;
    info.dim_radical = n == 0 ? 0 : n - gram.rank();
    return info;
}

std::vector<Representation> decompose(const Quiver& q, const Representation& r, unsigned seed,
                                      int max_dim) {
    if (r.total_dim() > max_dim)
        throw Error("DimensionBound", "total dimension " + std::to_string(r.total_dim()) +
                                          " exceeds the bound " + std::to_string(max_dim));
    std::vector<Representation> out;
    decompose_impl(q, r, seed, out);
    return out;
}

Representation induce_to_base(const DoubleCover& cover, const Representation& r) {
    const Quiver& cq = cover.cover_qp.qp.quiver;
    auto choice = find_admissible(cq, cover.cover_quiver_sigma);
    if (!choice) throw Error("ChoiceNotAdmissible", "no admissible choice on the cover quiver");
    SkewResult second = skew_quiver(cq, cover.cover_quiver_sigma, *choice);
    Representation induced = induce(second, r);

    // Rename the double-skew quiver back to the base adjacency quiver.
    const Quiver& base = cover.base_qp.qp.quiver;
    const Quiver& dq = second.quiver_G;
    std::vector<int> vmap(dq.num_vertices(), -1);
    auto skew1_vertex_of_cover = [&](int cover_vertex) {
        for (size_t v = 0; v < cover.skew_vertex_to_cover.size(); ++v)
            if (cover.skew_vertex_to_cover[v] == cover_vertex) return static_cast<int>(v);
        throw Error("Internal", "cover vertex without skew counterpart");
    };
    for (int v = 0; v < dq.num_vertices(); ++v) {
        const auto& origin = second.vertex_origin[v];
        int s1v = skew1_vertex_of_cover(origin.base_vertex);
        const auto& o1 = cover.skew.vertex_origin[s1v];
        if (origin.sign == 0) {
            vmap[v] = o1.base_vertex;
        } else {
            vmap[v] = origin.sign > 0 ? o1.base_vertex
                                      : cover.base_qp.sigma.vertex(o1.base_vertex);
        }
    }
    std::vector<int> amap(dq.num_arrows(), -1);
    auto skew1_arrow_of_cover = [&](int cover_arrow) {
        for (size_t a = 0; a < cover.skew_arrow_to_cover.size(); ++a)
            if (cover.skew_arrow_to_cover[a] == cover_arrow) return static_cast<int>(a);
        throw Error("Internal", "cover arrow without skew counterpart");
    };
    for (int a = 0; a < dq.num_arrows(); ++a) {
        const auto& origin = second.arrow_origin[a];
        int s1a = skew1_arrow_of_cover(origin.rep_arrow);
        int base_rep = cover.skew.arrow_origin[s1a].rep_arrow;
        if (origin.sign == 0)
            amap[a] = base_rep;
        else
            amap[a] = origin.sign > 0 ? base_rep : cover.base_qp.sigma.arrow(base_rep);
    }
    Representation out = Representation::zero(base, std::vector<int>(base.num_vertices(), 0));
    for (int v = 0; v < dq.num_vertices(); ++v) out.dims[vmap[v]] = induced.dims[v];
    out = Representation::zero(base, out.dims);
    for (int a = 0; a < dq.num_arrows(); ++a) out.mats[amap[a]] = induced.mats[a];
    // The identification with the base algebra carries the covering-fold
    // factor 2 on arrows whose source is a non-fixed vertex, matching the
    // band parametrization of the worked examples (a gentle-relation
    // preserving rescaling).
    for (int a = 0; a < base.num_arrows(); ++a)
        if (cover.skew.part.in_w[base.arrow(a).src]) out.mats[a] *= Rat(2);
    out.check_relations(cover.base_qp.qp);
    return out;
}

} // namespace qpskew
