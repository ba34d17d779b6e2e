#include "qpskew/involution.hpp"

#include <algorithm>
#include <numeric>

namespace qpskew {

Involution Involution::identity(const Quiver& q) {
    std::vector<int> vm(q.num_vertices()), am(q.num_arrows());
    std::iota(vm.begin(), vm.end(), 0);
    std::iota(am.begin(), am.end(), 0);
    return Involution(std::move(vm), std::move(am));
}

Involution Involution::from_pairs(
    const Quiver& q, const std::vector<std::pair<std::string, std::string>>& vertices,
    const std::vector<std::pair<std::string, std::string>>& arrows) {
    Involution sigma = identity(q);
    for (const auto& [a, b] : vertices) {
        int i = q.vertex_index(a), j = q.vertex_index(b);
        sigma.vertex_map_[i] = j;
        sigma.vertex_map_[j] = i;
    }
    for (const auto& [a, b] : arrows) {
        int i = q.arrow_index(a), j = q.arrow_index(b);
        sigma.arrow_map_[i] = j;
        sigma.arrow_map_[j] = i;
    }
    return sigma;
}

Path Involution::apply(const Path& p) const {
    if (p.trivial()) return Path::trivial_at(vertex_map_[p.base]);
    Path out;
    out.arrows.reserve(p.arrows.size());
    for (int a : p.arrows) out.arrows.push_back(arrow_map_[a]);
    return out;
}

PathExpr Involution::apply(const PathExpr& e) const {
    PathExpr out;
    for (const auto& [p, c] : e.terms()) out.add(apply(p), c);
    return out;
}

Potential Involution::apply(const Quiver& q, const Potential& s) const {
    return Potential(q, apply(s.expr()));
}

QuiverMorphism Involution::as_morphism(const Quiver& q) const {
    return QuiverMorphism(q, q, vertex_map_, arrow_map_, std::vector<Rat>(q.num_arrows(), Rat(1)));
}

ActionPartition validate_action(const Quiver& q, const Involution& sigma) {
    if (static_cast<int>(sigma.vertex_map().size()) != q.num_vertices() ||
        static_cast<int>(sigma.arrow_map().size()) != q.num_arrows())
        throw Error("NotInvolution", "action not defined on the whole quiver");
    for (int v = 0; v < q.num_vertices(); ++v)
        if (sigma.vertex(sigma.vertex(v)) != v)
            throw Error("NotInvolution", "vertex map is not an involution at '" + q.vertex_id(v) + "'");
    for (int a = 0; a < q.num_arrows(); ++a)
        if (sigma.arrow(sigma.arrow(a)) != a)
            throw Error("NotInvolution", "arrow map is not an involution at '" + q.arrow(a).id + "'");
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& arr = q.arrow(a);
        const auto& img = q.arrow(sigma.arrow(a));
        if (img.src != sigma.vertex(arr.src) || img.tgt != sigma.vertex(arr.tgt))
            throw Error("EndpointsNotRespected",
                        "sigma('" + arr.id + "') does not have the image endpoints");
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& arr = q.arrow(a);
        if (sigma.vertex(arr.src) == arr.src && sigma.vertex(arr.tgt) == arr.tgt &&
            sigma.arrow(a) != a)
            throw Error("FixedArrowViolation",
                        "arrow '" + arr.id + "' joins fixed vertices but is not fixed");
    }
    ActionPartition part;
    part.in_w.resize(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) {
        part.in_w[v] = sigma.vertex(v) != v;
        (part.in_w[v] ? part.w_list : part.v_list).push_back(v);
    }
    return part;
}

OrbitChoice make_choice(const Quiver& q, const Involution& sigma, const ActionPartition& part,
                        const std::vector<int>& w_reps) {
    OrbitChoice probe;
    probe.is_w_rep.assign(q.num_vertices(), false);
    for (int v : w_reps) probe.is_w_rep[v] = true;
    auto allowed = [&](int v) { return part.in_v(v) || probe.is_w_rep[v]; };
    std::vector<int> arrow_reps;
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& arr = q.arrow(a);
        if (allowed(arr.src) && allowed(arr.tgt)) arrow_reps.push_back(a);
    }
    return make_choice(q, sigma, part, w_reps, arrow_reps);
}

OrbitChoice make_choice(const Quiver& q, const Involution& sigma, const ActionPartition& part,
                        const std::vector<int>& w_reps, const std::vector<int>& arrow_reps) {
    OrbitChoice choice;
    choice.w_reps = w_reps;
    choice.is_w_rep.assign(q.num_vertices(), false);
    for (int v : w_reps) choice.is_w_rep[v] = true;
    choice.arrow_reps = arrow_reps;
    choice.is_arrow_rep.assign(q.num_arrows(), false);
    for (int a : arrow_reps) choice.is_arrow_rep[a] = true;
    choice.admissible = is_admissible_choice(q, sigma, part, choice);
    return choice;
}

bool is_admissible_choice(const Quiver& q, const Involution& sigma, const ActionPartition& part,
                          const OrbitChoice& choice) {
    // Exactly one representative per non-fixed vertex orbit.
    std::vector<int> seen(q.num_vertices(), 0);
    for (int v : choice.w_reps) {
        if (!part.in_w[v]) return false;
        ++seen[v];
        ++seen[sigma.vertex(v)];
    }
    for (int v : part.w_list)
        if (seen[v] != 1) return false;
    // Every arrow with an endpoint in o(W) has its other endpoint in V or o(W).
    auto allowed = [&](int v) { return part.in_v(v) || choice.is_w_rep[v]; };
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& arr = q.arrow(a);
        bool touches = (part.in_w[arr.src] && choice.is_w_rep[arr.src]) ||
                       (part.in_w[arr.tgt] && choice.is_w_rep[arr.tgt]);
        if (touches && !(allowed(arr.src) && allowed(arr.tgt))) return false;
    }
    // One arrow per arrow orbit, and exactly the allowed ones.
    std::vector<int> arrow_seen(q.num_arrows(), 0);
    for (int a : choice.arrow_reps) {
        if (!(allowed(q.arrow(a).src) && allowed(q.arrow(a).tgt))) return false;
        ++arrow_seen[a];
        ++arrow_seen[sigma.arrow(a)];
        if (sigma.arrow(a) == a) --arrow_seen[a];
    }
    for (int a = 0; a < q.num_arrows(); ++a)
        if (arrow_seen[a] != 1) return false;
    return true;
}

std::optional<OrbitChoice> find_admissible(const Quiver& q, const Involution& sigma) {
    ActionPartition part = validate_action(q, sigma);
    // Orbits in id order, the smaller vertex id preferred as representative.
    std::vector<std::pair<int, int>> orbits;
    for (int v : part.w_list) {
        int w = sigma.vertex(v);
        if (q.vertex_id(v) < q.vertex_id(w)) orbits.emplace_back(v, w);
    }
    std::sort(orbits.begin(), orbits.end(), [&](const auto& a, const auto& b) {
        return q.vertex_id(a.first) < q.vertex_id(b.first);
    });
    int n = static_cast<int>(orbits.size());
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<int> reps;
        reps.reserve(n);
        for (int k = 0; k < n; ++k)
            reps.push_back((mask >> (n - 1 - k)) & 1 ? orbits[k].second : orbits[k].first);
        OrbitChoice choice = make_choice(q, sigma, part, reps);
        if (choice.admissible) return choice;
    }
    return std::nullopt;
}

bool check_potential_invariance(const Quiver& q, const Potential& s, const Involution& sigma) {
    return cyclically_equivalent(q, s, sigma.apply(q, s));
}

} // namespace qpskew
