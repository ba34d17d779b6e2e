#pragma once

#include "qpskew/involution.hpp"
#include "qpskew/quiver.hpp"
#include "qpskew/surface.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qpskew::testing {

inline std::string data_path(const std::string& name) {
    return std::string(QPSKEW_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Triangulation load_tri(const std::string& name) {
    return parse_triangulation_text(slurp(data_path(name)));
}

inline QuiverFile load_quiver(const std::string& name) {
    return parse_quiver_text(slurp(data_path(name)));
}

inline Involution sigma_of(const QuiverFile& file) {
    return Involution::from_pairs(file.qp.quiver, file.sigma_vertices, file.sigma_arrows);
}

struct Rng {
    unsigned long long state;
    explicit Rng(unsigned seed) : state(seed * 0x9E3779B97F4A7C15ull + 1) {}
    unsigned long long next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
    bool flip() { return next() & 1; }
};

/// Random quiver with an order-2 action satisfying the standing assumption.
struct RandomAction {
    Quiver q;
    Involution sigma;
};

inline RandomAction random_action(Rng& rng, int max_fixed = 3, int max_orbits = 2,
                                  int max_arrow_orbits = 5) {
    Quiver q;
    int nv = rng.range(1, max_fixed);
    int no = rng.range(0, max_orbits);
    for (int i = 0; i < nv; ++i) q.add_vertex("v" + std::to_string(i));
    std::vector<std::pair<int, int>> orbit_pairs;
    for (int i = 0; i < no; ++i) {
        int a = q.add_vertex("w" + std::to_string(i));
        int b = q.add_vertex("w" + std::to_string(i) + "s");
        orbit_pairs.emplace_back(a, b);
    }
    std::vector<int> vmap(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) vmap[v] = v;
    for (auto [a, b] : orbit_pairs) {
        vmap[a] = b;
        vmap[b] = a;
    }
    int na = rng.range(1, max_arrow_orbits);
    std::vector<int> amap;
    for (int k = 0; k < na; ++k) {
        int s = rng.range(0, q.num_vertices() - 1);
        int t = rng.range(0, q.num_vertices() - 1);
        if (vmap[s] == s && vmap[t] == t) {
            int a = q.add_arrow("a" + std::to_string(k), s, t);
            amap.push_back(a);
        } else {
            int a = q.add_arrow("a" + std::to_string(k), s, t);
            int b = q.add_arrow("a" + std::to_string(k) + "s", vmap[s], vmap[t]);
            amap.push_back(b);
            amap.push_back(a);
        }
    }
    return RandomAction{q, Involution(std::move(vmap), std::move(amap))};
}

/// Random cycles for potentials: short closed walks found by depth search.
inline PathExpr random_cycles(Rng& rng, const Quiver& q, int want) {
    PathExpr out;
    int found = 0;
    for (int tries = 0; tries < 200 && found < want; ++tries) {
        int start = rng.range(0, q.num_vertices() - 1);
        Path p = Path::trivial_at(start);
        int node = start;
        int len = rng.range(2, 4);
        bool ok = true;
        for (int k = 0; k < len; ++k) {
            std::vector<int> options;
            for (int a = 0; a < q.num_arrows(); ++a)
                if (q.arrow(a).src == node) options.push_back(a);
            if (options.empty()) {
                ok = false;
                break;
            }
            int a = options[rng.range(0, static_cast<int>(options.size()) - 1)];
            p.arrows.push_back(a);
            node = q.arrow(a).tgt;
        }
        if (!ok || node != start || p.length() < 2) continue;
        out.add(p, rng.range(1, 3));
        ++found;
    }
    return out;
}

} // namespace qpskew::testing
