#include "qpskew/ginzburg.hpp"

#include <sstream>

namespace qpskew {

int GradedQuiver::original(int base_arrow) const {
    for (size_t a = 0; a < origin.size(); ++a)
        if (origin[a].kind == Kind::Original && origin[a].base == base_arrow)
            return static_cast<int>(a);
    throw Error("Internal", "missing degree-0 arrow");
}

int GradedQuiver::reverse(int base_arrow) const {
    for (size_t a = 0; a < origin.size(); ++a)
        if (origin[a].kind == Kind::Reverse && origin[a].base == base_arrow)
            return static_cast<int>(a);
    throw Error("Internal", "missing degree -1 arrow");
}

int GradedQuiver::loop(int base_vertex) const {
    for (size_t a = 0; a < origin.size(); ++a)
        if (origin[a].kind == Kind::Loop && origin[a].base == base_vertex)
            return static_cast<int>(a);
    throw Error("Internal", "missing degree -2 loop");
}

int GradedQuiver::path_degree(const Path& p) const {
    int d = 0;
    for (int a : p.arrows) d += degree[a];
    return d;
}

GradedQuiver graded_double(const Quiver& q) {
    GradedQuiver g;
    for (int v = 0; v < q.num_vertices(); ++v) g.quiver.add_vertex(q.vertex_id(v));
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& arr = q.arrow(a);
        g.quiver.add_arrow(arr.id, arr.src, arr.tgt);
        g.degree.push_back(0);
        g.origin.push_back({GradedQuiver::Kind::Original, a});
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& arr = q.arrow(a);
        g.quiver.add_arrow(arr.id + "~", arr.tgt, arr.src);
        g.degree.push_back(-1);
        g.origin.push_back({GradedQuiver::Kind::Reverse, a});
    }
    for (int v = 0; v < q.num_vertices(); ++v) {
        g.quiver.add_arrow("t_" + q.vertex_id(v), v, v);
        g.degree.push_back(-2);
        g.origin.push_back({GradedQuiver::Kind::Loop, v});
    }
    return g;
}

PathExpr Differential::apply(const GradedQuiver& gq, const Path& p) const {
    PathExpr out;
    if (p.trivial()) return out;
    int n = p.length();
    for (int k = 0; k < n; ++k) {
        const PathExpr& dk = on_arrow[p.arrows[k]];
        if (dk.is_zero()) continue;
        // Arrows applied after position k sit to the left in writing order
        // and contribute the Leibniz sign.
        int left_degree = 0;
        for (int j = k + 1; j < n; ++j) left_degree += gq.degree[p.arrows[j]];
        Rat sign = left_degree % 2 == 0 ? Rat(1) : Rat(-1);
        Path prefix{p.arrows.empty() ? p.base : -1, {}};
        prefix.arrows.assign(p.arrows.begin(), p.arrows.begin() + k);
        if (prefix.arrows.empty()) prefix.base = gq.quiver.arrow(p.arrows[k]).src;
        Path suffix{-1, {}};
        suffix.arrows.assign(p.arrows.begin() + k + 1, p.arrows.end());
        if (suffix.arrows.empty()) suffix.base = gq.quiver.arrow(p.arrows[k]).tgt;
        for (const auto& [dp, dc] : dk.terms()) {
            Path assembled = compose(gq.quiver, suffix, compose(gq.quiver, dp, prefix));
            out.add(assembled, sign * dc);
        }
    }
    return out;
}

PathExpr Differential::apply(const GradedQuiver& gq, const PathExpr& e) const {
    PathExpr out;
    for (const auto& [p, c] : e.terms()) out += c * apply(gq, p);
    return out;
}

GinzburgData ginzburg(const QuiverWithPotential& qp) {
    const Quiver& q = qp.quiver;
    GinzburgData data;
    data.graded = graded_double(q);
    const GradedQuiver& gq = data.graded;
    data.d.on_arrow.assign(gq.quiver.num_arrows(), PathExpr());

    // Embed a base PathExpr via the degree-0 copies.
    auto embed = [&](const PathExpr& e) {
        PathExpr out;
        for (const auto& [p, c] : e.terms()) {
            Path lifted = p;
            for (int& a : lifted.arrows) a = gq.original(a);
            out.add(lifted, c);
        }
        return out;
    };

    for (int a = 0; a < q.num_arrows(); ++a)
        data.d.on_arrow[gq.reverse(a)] = embed(cyclic_derivative(q, qp.potential, a));
    for (int v = 0; v < q.num_vertices(); ++v) {
        PathExpr image;
        for (int a = 0; a < q.num_arrows(); ++a) {
            const auto& arr = q.arrow(a);
            if (arr.tgt == v) image.add(Path{-1, {gq.reverse(a), gq.original(a)}}, 1);
            if (arr.src == v) image.add(Path{-1, {gq.original(a), gq.reverse(a)}}, -1);
        }
        data.d.on_arrow[gq.loop(v)] = image;
    }

    for (int a = 0; a < gq.quiver.num_arrows(); ++a) {
        PathExpr dd = data.d.apply(gq, data.d.on_arrow[a]);
        if (!dd.is_zero())
            throw Error("DifferentialNotSquareZero",
                        "d^2 != 0 on generator '" + gq.quiver.arrow(a).id + "': " +
                            format_expr(gq.quiver, dd));
        // Degree bookkeeping: d raises degree by exactly one.
        for (const auto& [p, c] : data.d.on_arrow[a].terms())
            if (gq.path_degree(p) != gq.degree[a] + 1)
                throw Error("DifferentialNotSquareZero",
                            "degree mismatch in d('" + gq.quiver.arrow(a).id + "')");
    }
    return data;
}

Involution extend_action_to_ginzburg(const QuiverWithPotential& qp, const GinzburgData& data,
                                     const Involution& sigma) {
    (void)qp;
    const GradedQuiver& gq = data.graded;
    std::vector<int> am(gq.quiver.num_arrows());
    for (int a = 0; a < gq.quiver.num_arrows(); ++a) {
        const auto& origin = gq.origin[a];
        switch (origin.kind) {
        case GradedQuiver::Kind::Original: am[a] = gq.original(sigma.arrow(origin.base)); break;
        case GradedQuiver::Kind::Reverse: am[a] = gq.reverse(sigma.arrow(origin.base)); break;
        case GradedQuiver::Kind::Loop: am[a] = gq.loop(sigma.vertex(origin.base)); break;
        }
    }
    Involution extended(sigma.vertex_map(), std::move(am));
    validate_action(gq.quiver, extended);
    for (int a = 0; a < gq.quiver.num_arrows(); ++a) {
        PathExpr lhs = data.d.on_arrow[extended.arrow(a)];
        PathExpr rhs = extended.apply(data.d.on_arrow[a]);
        if (lhs != rhs)
            throw Error("DoesNotCommuteWithDifferential",
                        "sigma does not commute with d at generator '" +
                            gq.quiver.arrow(a).id + "'");
    }
    return extended;
}

GinzburgCompareReport skew_ginzburg_compare(const QuiverWithPotential& qp, const Involution& sigma,
                                            const OrbitChoice& choice) {
    GinzburgCompareReport report;
    const Quiver& q = qp.quiver;

    GinzburgData gamma = ginzburg(qp);
    Involution graded_sigma = extend_action_to_ginzburg(qp, gamma, sigma);
    const GradedQuiver& gq = gamma.graded;

    // Side A: skew the graded quiver.  The choice extends the base one:
    // same vertex representatives; arrow representatives are the copies and
    // reverses of the base representatives plus the loops at V and at the
    // chosen W vertices.
    ActionPartition gpart = validate_action(gq.quiver, graded_sigma);
    OrbitChoice gchoice = make_choice(gq.quiver, graded_sigma, gpart, choice.w_reps);
    SkewResult skew_graded = skew_quiver(gq.quiver, graded_sigma, gchoice);

    // Side B: Ginzburg of the skew QP.
    report.skew = skew_quiver(q, sigma, choice);
    report.skew.potential_G = skew_potential(report.skew, qp.potential);
    GinzburgData gb = ginzburg(QuiverWithPotential{report.skew.quiver_G, report.skew.potential_G});
    const GradedQuiver& gbq = gb.graded;

    // Identify side-A generators with side-B generators: (a~)^s <-> (a^s)~
    // and (t_i)^s <-> t_(i^s).
    auto side_b_arrow = [&](int skew_graded_arrow) {
        const auto& origin = skew_graded.arrow_origin[skew_graded_arrow];
        const auto& graded_origin = gq.origin[origin.rep_arrow];
        switch (graded_origin.kind) {
        case GradedQuiver::Kind::Original:
            return gbq.original(report.skew.skew_arrow(graded_origin.base, origin.sign));
        case GradedQuiver::Kind::Reverse:
            return gbq.reverse(report.skew.skew_arrow(graded_origin.base, origin.sign));
        case GradedQuiver::Kind::Loop:
            return gbq.loop(report.skew.skew_vertex(graded_origin.base, origin.sign));
        }
        throw Error("Internal", "bad graded origin");
    };
    std::vector<int> a_of_b(gbq.quiver.num_arrows(), -1);
    for (int a = 0; a < skew_graded.quiver_G.num_arrows(); ++a) a_of_b[side_b_arrow(a)] = a;
    // Same for vertices, used to move PathExprs from side A to side B.
    std::vector<int> bvertex_of_a(skew_graded.quiver_G.num_vertices(), -1);
    for (int v = 0; v < skew_graded.quiver_G.num_vertices(); ++v) {
        const auto& origin = skew_graded.vertex_origin[v];
        bvertex_of_a[v] = report.skew.skew_vertex(origin.base_vertex, origin.sign);
    }
    std::vector<int> barrow_of_a(skew_graded.quiver_G.num_arrows(), -1);
    for (int b = 0; b < gbq.quiver.num_arrows(); ++b)
        if (a_of_b[b] >= 0) barrow_of_a[a_of_b[b]] = b;
    QuiverMorphism a_to_b(skew_graded.quiver_G, gbq.quiver, bvertex_of_a, barrow_of_a,
                          std::vector<Rat>(skew_graded.quiver_G.num_arrows(), Rat(1)));

    // zeta scalars on side-B generators.
    auto zeta_scalar = [&](int b_arrow) -> Rat {
        const auto& origin = gbq.origin[b_arrow];
        if (origin.kind == GradedQuiver::Kind::Original) return 1;
        if (origin.kind == GradedQuiver::Kind::Reverse) {
            int rep = report.skew.arrow_origin[origin.base].rep_arrow;
            switch (arrow_case(q, report.skew.part, rep)) {
            case ArrowCase::VV: return 1;
            case ArrowCase::VW:
            case ArrowCase::WV: return 4;
            case ArrowCase::WW: return 8;
            }
        }
        int base_vertex = report.skew.vertex_origin[origin.base].base_vertex;
        return report.skew.part.in_v(base_vertex) ? 1 : 4;
    };
    auto zeta_apply = [&](const PathExpr& e) {
        PathExpr out;
        for (const auto& [p, c] : e.terms()) {
            Rat scale = c;
            for (int a : p.arrows) scale *= zeta_scalar(a);
            out.add(p, scale);
        }
        return out;
    };

    // The skewed differential: d_A(g^s) is the idempotent cut of
    // iota(d(g)) between the endpoints of g^s.
    for (int a = 0; a < skew_graded.quiver_G.num_arrows(); ++a) {
        const auto& arr = skew_graded.quiver_G.arrow(a);
        PathExpr da = iota(skew_graded, gamma.d.on_arrow[skew_graded.arrow_origin[a].rep_arrow]);
        da = da.between(skew_graded.quiver_G, arr.src, arr.tgt);
        PathExpr da_on_b = a_to_b.apply(da);

        int b = barrow_of_a[a];
        PathExpr db = gb.d.on_arrow[b];
        // zeta intertwines: zeta(d_B(h)) = d_A(zeta(h)) = zeta(h) scalar
        // times d_A(h).
        PathExpr lhs = zeta_apply(db);
        PathExpr rhs = zeta_scalar(b) * da_on_b;
        GinzburgCompareEntry entry;
        entry.generator = gbq.quiver.arrow(b).id;
        entry.zeta = zeta_scalar(b);
        entry.skew_side = format_expr(gbq.quiver, rhs);
        entry.ginzburg_side = format_expr(gbq.quiver, lhs);
        entry.match = lhs == rhs;
        report.entries.push_back(entry);
        if (!entry.match && report.ok) {
            report.ok = false;
            report.detail = "MismatchAtGenerator " + entry.generator;
        }
    }
    return report;
}

} // namespace qpskew
