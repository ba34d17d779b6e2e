#include "qpskew/skew.hpp"

#include <algorithm>
#include <sstream>

namespace qpskew {

ArrowCase arrow_case(const Quiver& q, const ActionPartition& part, int arrow) {
    const auto& a = q.arrow(arrow);
    bool sw = part.in_w[a.src], tw = part.in_w[a.tgt];
    if (!sw && !tw) return ArrowCase::VV;
    if (!sw && tw) return ArrowCase::VW;
    if (sw && !tw) return ArrowCase::WV;
    return ArrowCase::WW;
}

int SkewResult::skew_vertex(int base_vertex, int sign) const {
    for (int v = 0; v < quiver_G.num_vertices(); ++v)
        if (vertex_origin[v].base_vertex == base_vertex && vertex_origin[v].sign == sign) return v;
    throw Error("Internal", "no such skew vertex");
}

int SkewResult::skew_arrow(int rep_arrow, int sign) const {
    for (int a = 0; a < quiver_G.num_arrows(); ++a)
        if (arrow_origin[a].rep_arrow == rep_arrow && arrow_origin[a].sign == sign) return a;
    throw Error("Internal", "no such skew arrow");
}

int SkewResult::rep_of(int arrow) const {
    if (choice.is_arrow_rep[arrow]) return arrow;
    int other = sigma.arrow(arrow);
    if (!choice.is_arrow_rep[other])
        throw Error("Internal", "orbit of arrow '" + base.arrow(arrow).id + "' has no representative");
    return other;
}

bool SkewResult::iota_sign_flips(int arrow) const {
    return !choice.is_arrow_rep[arrow] && sigma.arrow(arrow) != arrow;
}

SkewResult skew_quiver(const Quiver& q, const Involution& sigma, const OrbitChoice& choice) {
    SkewResult out;
    out.base = q;
    out.sigma = sigma;
    out.part = validate_action(q, sigma);
    out.choice = choice;

    // The choice must cover every orbit exactly once.
    std::vector<int> vertex_seen(q.num_vertices(), 0);
    for (int v : choice.w_reps) {
        if (!out.part.in_w[v]) throw Error("ChoiceIncomplete", "fixed vertex used as representative");
        ++vertex_seen[v];
        ++vertex_seen[sigma.vertex(v)];
    }
    for (int v : out.part.w_list)
        if (vertex_seen[v] != 1)
            throw Error("ChoiceIncomplete",
                        "vertex orbit of '" + q.vertex_id(v) + "' not covered exactly once");
    std::vector<int> arrow_seen(q.num_arrows(), 0);
    for (int a : choice.arrow_reps) {
        ++arrow_seen[a];
        if (sigma.arrow(a) != a) ++arrow_seen[sigma.arrow(a)];
    }
    for (int a = 0; a < q.num_arrows(); ++a)
        if (arrow_seen[a] != 1)
            throw Error("ChoiceIncomplete",
                        "arrow orbit of '" + q.arrow(a).id + "' not covered exactly once");

    // Vertices: i+ and i- per fixed vertex, one per non-fixed orbit.
    for (int v = 0; v < q.num_vertices(); ++v) {
        if (out.part.in_v(v)) {
            out.quiver_G.add_vertex(q.vertex_id(v) + "+");
            out.vertex_origin.push_back({v, +1});
            out.quiver_G.add_vertex(q.vertex_id(v) + "-");
            out.vertex_origin.push_back({v, -1});
        } else if (choice.is_w_rep[v]) {
            out.quiver_G.add_vertex(q.vertex_id(v));
            out.vertex_origin.push_back({v, 0});
        }
    }
    auto vertex_of = [&](int base_vertex, int sign) {
        if (out.part.in_w[base_vertex]) {
            int rep = choice.is_w_rep[base_vertex] ? base_vertex : sigma.vertex(base_vertex);
            return out.skew_vertex(rep, 0);
        }
        return out.skew_vertex(base_vertex, sign);
    };

    for (int r : choice.arrow_reps) {
        const auto& arr = q.arrow(r);
        switch (arrow_case(q, out.part, r)) {
        case ArrowCase::VV:
        case ArrowCase::VW:
        case ArrowCase::WV:
            out.quiver_G.add_arrow(arr.id + "+", vertex_of(arr.src, +1), vertex_of(arr.tgt, +1));
            out.arrow_origin.push_back({r, +1});
            out.quiver_G.add_arrow(arr.id + "-", vertex_of(arr.src, -1), vertex_of(arr.tgt, -1));
            out.arrow_origin.push_back({r, -1});
            break;
        case ArrowCase::WW:
            out.quiver_G.add_arrow(arr.id, vertex_of(arr.src, 0), vertex_of(arr.tgt, 0));
            out.arrow_origin.push_back({r, 0});
            break;
        }
    }
    return out;
}

PathExpr iota_arrow(const SkewResult& ctx, int arrow) {
    int rep = ctx.rep_of(arrow);
    PathExpr out;
    if (arrow_case(ctx.base, ctx.part, rep) == ArrowCase::WW) {
        out.add(Path::of_arrow(ctx.skew_arrow(rep, 0)), 1);
        return out;
    }
    out.add(Path::of_arrow(ctx.skew_arrow(rep, +1)), 1);
    out.add(Path::of_arrow(ctx.skew_arrow(rep, -1)), ctx.iota_sign_flips(arrow) ? Rat(-1) : Rat(1));
    return out;
}

PathExpr iota(const SkewResult& ctx, const Path& w) {
    if (w.trivial()) {
        PathExpr out;
        int v = w.base;
        if (ctx.part.in_v(v)) {
            out.add(Path::trivial_at(ctx.skew_vertex(v, +1)), 1);
            out.add(Path::trivial_at(ctx.skew_vertex(v, -1)), 1);
        } else {
            int rep = ctx.choice.is_w_rep[v] ? v : ctx.sigma.vertex(v);
            out.add(Path::trivial_at(ctx.skew_vertex(rep, 0)), Rat(1, 2));
        }
        return out;
    }
    PathExpr acc = iota_arrow(ctx, w.arrows[0]);
    int s = 0;
    for (size_t k = 1; k < w.arrows.size(); ++k) {
        if (ctx.part.in_w[ctx.base.arrow(w.arrows[k]).src]) ++s;
        acc = mul(ctx.quiver_G, iota_arrow(ctx, w.arrows[k]), acc);
    }
    Rat factor = 1;
    for (int k = 0; k < s; ++k) factor *= 2;
    acc *= factor;
    return acc;
}

PathExpr iota(const SkewResult& ctx, const PathExpr& e) {
    PathExpr out;
    for (const auto& [p, c] : e.terms()) out += c * iota(ctx, p);
    return out;
}

PathExpr iota_sigma(const SkewResult& ctx, const Path& w) {
    int i = w.source(ctx.base);
    int j = w.target(ctx.base);
    PathExpr base = iota(ctx, w);
    PathExpr out;
    for (const auto& [p, c] : base.terms()) {
        Rat sign = 1;
        if (ctx.part.in_v(i) && ctx.vertex_origin[p.source(ctx.quiver_G)].sign == -1) sign = -sign;
        if (ctx.part.in_v(j) && ctx.vertex_origin[p.target(ctx.quiver_G)].sign == -1) sign = -sign;
        out.add(p, sign * c);
    }
    return out;
}

Potential skew_potential(const SkewResult& ctx, const Potential& s) {
    if (!check_potential_invariance(ctx.base, s, ctx.sigma))
        throw Error("NotInvariant", "potential is not sigma-invariant up to rotation");
    PathExpr total;
    for (const auto& [cycle, c] : s.expr().terms()) {
        PathExpr acc = iota_arrow(ctx, cycle.arrows[0]);
        Rat factor = 1;
        for (size_t k = 0; k < cycle.arrows.size(); ++k) {
            if (ctx.part.in_w[ctx.base.arrow(cycle.arrows[k]).src]) factor *= 2;
            if (k > 0) acc = mul(ctx.quiver_G, iota_arrow(ctx, cycle.arrows[k]), acc);
        }
        total += (c * factor) * acc;
    }
    return cyclic_projection(ctx.quiver_G, total);
}

Involution dual_action(const SkewResult& ctx) {
    if (!ctx.choice.admissible)
        throw Error("ChoiceNotAdmissible", "dual action needs an admissible orbit choice");
    std::vector<int> vm(ctx.quiver_G.num_vertices());
    for (int v = 0; v < ctx.quiver_G.num_vertices(); ++v) {
        const auto& origin = ctx.vertex_origin[v];
        vm[v] = origin.sign == 0 ? v : ctx.skew_vertex(origin.base_vertex, -origin.sign);
    }
    std::vector<int> am(ctx.quiver_G.num_arrows());
    for (int a = 0; a < ctx.quiver_G.num_arrows(); ++a) {
        const auto& origin = ctx.arrow_origin[a];
        am[a] = origin.sign == 0 ? a : ctx.skew_arrow(origin.rep_arrow, -origin.sign);
    }
    return Involution(std::move(vm), std::move(am));
}

OrbitChoice canonical_dual_choice(const SkewResult& ctx, const Involution& dual) {
    ActionPartition part = validate_action(ctx.quiver_G, dual);
    std::vector<int> reps;
    for (int v = 0; v < ctx.quiver_G.num_vertices(); ++v)
        if (part.in_w[v] && ctx.vertex_origin[v].sign == +1) reps.push_back(v);
    OrbitChoice choice = make_choice(ctx.quiver_G, dual, part, reps);
    if (!choice.admissible)
        throw Error("ChoiceNotAdmissible", "canonical dual choice is not admissible");
    return choice;
}

DoubleSkewReport double_skew_check(const Quiver& q, const Involution& sigma,
                                   const OrbitChoice& choice, int max_len) {
    DoubleSkewReport report;
    report.first = skew_quiver(q, sigma, choice);
    const SkewResult& s1 = report.first;
    Involution dual = dual_action(s1);
    OrbitChoice dual_choice = canonical_dual_choice(s1, dual);
    report.second = skew_quiver(s1.quiver_G, dual, dual_choice);
    const SkewResult& s2 = report.second;

    // xi: Q_GG -> Q.  Orbit vertices of the double skew come from {i+, i-}
    // pairs over fixed base vertices; split vertices from orbit vertices,
    // with the plus copy landing on the chosen representative.
    std::vector<int> vmap(s2.quiver_G.num_vertices(), -1);
    for (int v = 0; v < s2.quiver_G.num_vertices(); ++v) {
        const auto& o2 = s2.vertex_origin[v];
        const auto& o1 = s1.vertex_origin[o2.base_vertex];
        if (o2.sign == 0) {
            vmap[v] = o1.base_vertex;
        } else {
            vmap[v] = o2.sign == +1 ? o1.base_vertex : sigma.vertex(o1.base_vertex);
        }
    }
    std::vector<int> amap(s2.quiver_G.num_arrows(), -1);
    for (int a = 0; a < s2.quiver_G.num_arrows(); ++a) {
        const auto& o2 = s2.arrow_origin[a];
        const auto& o1 = s1.arrow_origin[o2.rep_arrow];
        int base_rep = o1.rep_arrow;
        if (o2.sign == 0) {
            amap[a] = base_rep; // sigma-fixed base arrow
        } else {
            amap[a] = o2.sign == +1 ? base_rep : sigma.arrow(base_rep);
        }
    }
    for (int v : vmap)
        if (v < 0) throw Error("IsomorphismFailure", "xi not defined on all vertices");
    {
        std::vector<int> seen(q.num_vertices(), 0);
        for (int v : vmap) ++seen[v];
        for (int c : seen)
            if (c != 1) {
                report.ok = false;
                report.detail = "xi is not a vertex bijection";
                return report;
            }
        std::vector<int> aseen(q.num_arrows(), 0);
        for (int a : amap) ++aseen[a];
        for (int c : aseen)
            if (c != 1) {
                report.ok = false;
                report.detail = "xi is not an arrow bijection";
                return report;
            }
    }
    report.xi = QuiverMorphism(s2.quiver_G, q, vmap, amap, {});

    // Endpoint compatibility is enforced by the QuiverMorphism constructor.
    // G-equivariance: xi . (dual of dual) = sigma . xi.
    Involution dual2 = dual_action(s2);
    for (int v = 0; v < s2.quiver_G.num_vertices(); ++v)
        if (vmap[dual2.vertex(v)] != sigma.vertex(vmap[v])) {
            report.ok = false;
            report.detail = "xi is not equivariant on vertex " + s2.quiver_G.vertex_id(v);
            return report;
        }
    for (int a = 0; a < s2.quiver_G.num_arrows(); ++a)
        if (amap[dual2.arrow(a)] != sigma.arrow(amap[a])) {
            report.ok = false;
            report.detail = "xi is not equivariant on arrow " + s2.quiver_G.arrow(a).id;
            return report;
        }

    // Scaling law on all paths of length <= max_len.
    std::vector<Path> frontier;
    for (int a = 0; a < q.num_arrows(); ++a) frontier.push_back(Path::of_arrow(a));
    for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
        for (const Path& w : frontier) {
            ++report.paths_checked;
            PathExpr lifted = report.xi.apply(iota(s2, iota(s1, w)));
            int m = w.length();
            bool start_w = s1.part.in_w[w.source(q)];
            bool end_w = s1.part.in_w[w.target(q)];
            int p = 0;
            for (int a : w.arrows) {
                bool sw = s1.part.in_w[q.arrow(a).src];
                bool tw = s1.part.in_w[q.arrow(a).tgt];
                if (start_w && !sw && tw) ++p;
                if (!start_w && sw && !tw) ++p;
            }
            Rat scale = 1;
            for (int k = 0; k < m + p; ++k) scale *= 2;
            PathExpr expected;
            if (start_w && end_w) {
                expected.add(w, scale / 2);
                expected.add(sigma.apply(w), scale / 2);
            } else {
                expected.add(w, scale);
            }
            if (lifted != expected) {
                report.ok = false;
                report.detail = "scaling law fails on path " + format_path(q, w) + ": got " +
                                format_expr(q, lifted) + ", expected " + format_expr(q, expected);
                return report;
            }
        }
        std::vector<Path> next;
        for (const Path& w : frontier)
            for (int a = 0; a < q.num_arrows(); ++a)
                if (q.arrow(a).src == w.target(q)) {
                    Path ext = w;
                    ext.arrows.push_back(a);
                    next.push_back(ext);
                }
        frontier = std::move(next);
    }
    return report;
}

SkewAlgebraElement SkewAlgebraElement::term(const Path& p, int g, const Rat& c) {
    SkewAlgebraElement out;
    out.add(p, g, c);
    return out;
}

SkewAlgebraElement SkewAlgebraElement::one(const Quiver& q) {
    SkewAlgebraElement out;
    for (int v = 0; v < q.num_vertices(); ++v) out.add(Path::trivial_at(v), 0, 1);
    return out;
}

void SkewAlgebraElement::add(const Path& p, int g, const Rat& c) {
    if (c == 0) return;
    auto key = std::make_pair(p, g);
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SkewAlgebraElement& SkewAlgebraElement::operator+=(const SkewAlgebraElement& other) {
    for (const auto& [key, c] : other.terms_) add(key.first, key.second, c);
    return *this;
}

SkewAlgebraElement SkewAlgebraElement::operator+(const SkewAlgebraElement& other) const {
    SkewAlgebraElement out = *this;
    out += other;
    return out;
}

SkewAlgebraElement SkewAlgebraElement::operator-(const SkewAlgebraElement& other) const {
    SkewAlgebraElement out = *this;
    for (const auto& [key, c] : other.terms_) out.add(key.first, key.second, -c);
    return out;
}

SkewAlgebraElement& SkewAlgebraElement::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, coeff] : terms_) coeff *= c;
    return *this;
}

SkewAlgebraElement mul(const Quiver& q, const Involution& sigma, const SkewAlgebraElement& a,
                       const SkewAlgebraElement& b) {
    SkewAlgebraElement out;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            const auto& [pa, ga] = ka;
            const auto& [pb, gb] = kb;
            Path moved = ga == 0 ? pb : sigma.apply(pb);
            if (moved.target(q) != pa.source(q)) continue;
            out.add(compose(q, pa, moved), (ga + gb) % 2, ca * cb);
        }
    return out;
}

SkewAlgebraElement idempotent(const SkewResult& ctx, int base_vertex, int sign) {
    SkewAlgebraElement out;
    const Rat half(1, 2);
    if (ctx.part.in_v(base_vertex)) {
        out.add(Path::trivial_at(base_vertex), 0, half);
        out.add(Path::trivial_at(base_vertex), 1, sign > 0 ? half : -half);
    } else {
        int other = ctx.sigma.vertex(base_vertex);
        out.add(Path::trivial_at(base_vertex), 0, half);
        out.add(Path::trivial_at(other), 0, half);
        out.add(Path::trivial_at(base_vertex), 1, sign > 0 ? half : -half);
        out.add(Path::trivial_at(other), 1, sign > 0 ? half : -half);
    }
    return out;
}

SkewAlgebraElement epsilon(const SkewResult& ctx) {
    SkewAlgebraElement out;
    for (int v : ctx.part.v_list) out.add(Path::trivial_at(v), 0, 1);
    for (int v : ctx.choice.w_reps) {
        out.add(Path::trivial_at(v), 0, 1);
        out.add(Path::trivial_at(ctx.sigma.vertex(v)), 0, -1);
    }
    return out;
}

SkewAlgebraElement symbolic_arrow(const SkewResult& ctx, int arrow, int sign) {
    const auto& arr = ctx.base.arrow(arrow);
    int ssign = ctx.part.in_w[arr.src] ? +1 : sign;
    int tsign = ctx.part.in_w[arr.tgt] ? +1 : sign;
    SkewAlgebraElement mid = SkewAlgebraElement::term(Path::of_arrow(arrow), 0, 1);
    SkewAlgebraElement left = idempotent(ctx, arr.tgt, tsign);
    SkewAlgebraElement right = idempotent(ctx, arr.src, ssign);
    return mul(ctx.base, ctx.sigma, left, mul(ctx.base, ctx.sigma, mid, right));
}

SkewAlgebraElement substitute(const SkewResult& ctx, const PathExpr& e) {
    SkewAlgebraElement out;
    for (const auto& [p, c] : e.terms()) {
        SkewAlgebraElement acc;
        if (p.trivial()) {
            const auto& origin = ctx.vertex_origin[p.base];
            acc = idempotent(ctx, origin.base_vertex, origin.sign == 0 ? +1 : origin.sign);
        } else {
            const auto& first = ctx.arrow_origin[p.arrows[0]];
            acc = symbolic_arrow(ctx, first.rep_arrow, first.sign == 0 ? +1 : first.sign);
            for (size_t k = 1; k < p.arrows.size(); ++k) {
                const auto& origin = ctx.arrow_origin[p.arrows[k]];
                acc = mul(ctx.base, ctx.sigma,
                          symbolic_arrow(ctx, origin.rep_arrow, origin.sign == 0 ? +1 : origin.sign),
                          acc);
            }
        }
        acc *= c;
        out += acc;
    }
    return out;
}

SkewAlgebraElement iota_symbolic(const SkewResult& ctx, const PathExpr& x) {
    SkewAlgebraElement ebar;
    for (int v : ctx.part.v_list) {
        ebar += idempotent(ctx, v, +1);
        ebar += idempotent(ctx, v, -1);
    }
    for (int v : ctx.choice.w_reps) ebar += idempotent(ctx, v, +1);
    SkewAlgebraElement lifted;
    for (const auto& [p, c] : x.terms()) lifted.add(p, 0, c);
    return mul(ctx.base, ctx.sigma, ebar, mul(ctx.base, ctx.sigma, lifted, ebar));
}

} // namespace qpskew
