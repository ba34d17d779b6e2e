#include "qpskew/quiver.hpp"

#include <algorithm>
#include <sstream>

namespace qpskew {

int Quiver::add_vertex(const std::string& id) {
    if (vertex_index_.count(id))
        throw Error("DuplicateVertex", "vertex '" + id + "' declared twice");
    vertices_.push_back(id);
    int idx = static_cast<int>(vertices_.size()) - 1;
    vertex_index_[id] = idx;
    return idx;
}

int Quiver::add_arrow(const std::string& id, const std::string& src, const std::string& tgt) {
    return add_arrow(id, vertex_index(src), vertex_index(tgt));
}

int Quiver::add_arrow(const std::string& id, int src, int tgt) {
    if (arrow_index_.count(id))
        throw Error("DuplicateArrow", "arrow '" + id + "' declared twice");
    if (src < 0 || src >= num_vertices() || tgt < 0 || tgt >= num_vertices())
        throw Error("UnknownVertex", "arrow '" + id + "' has undeclared endpoint");
    arrows_.push_back(Arrow{id, src, tgt});
    int idx = static_cast<int>(arrows_.size()) - 1;
    arrow_index_[id] = idx;
    return idx;
}

int Quiver::vertex_index(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw Error("UnknownVertex", "no vertex '" + id + "'");
    return it->second;
}

int Quiver::arrow_index(const std::string& id) const {
    auto it = arrow_index_.find(id);
    if (it == arrow_index_.end()) throw Error("UnknownArrow", "no arrow '" + id + "'");
    return it->second;
}

std::optional<int> Quiver::find_vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Quiver::find_arrow(const std::string& id) const {
    auto it = arrow_index_.find(id);
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
}

Path compose(const Quiver& q, const Path& p, const Path& r) {
    if (r.target(q) != p.source(q))
        throw Error("CompositionMismatch",
                    "cannot compose " + format_path(q, p) + " after " + format_path(q, r));
    if (p.trivial()) return r;
    if (r.trivial()) return p;
    Path out = r;
    out.arrows.insert(out.arrows.end(), p.arrows.begin(), p.arrows.end());
    out.base = -1;
    return out;
}

void PathExpr::add(const Path& p, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rat PathExpr::coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rat(0) : it->second;
}

PathExpr& PathExpr::operator+=(const PathExpr& other) {
    for (const auto& [p, c] : other.terms_) add(p, c);
    return *this;
}

PathExpr& PathExpr::operator-=(const PathExpr& other) {
    for (const auto& [p, c] : other.terms_) add(p, -c);
    return *this;
}

PathExpr PathExpr::operator+(const PathExpr& other) const {
    PathExpr out = *this;
    out += other;
    return out;
}

PathExpr PathExpr::operator-(const PathExpr& other) const {
    PathExpr out = *this;
    out -= other;
    return out;
}

PathExpr PathExpr::operator-() const {
    PathExpr out;
    for (const auto& [p, c] : terms_) out.terms_.emplace(p, -c);
    return out;
}

PathExpr& PathExpr::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [p, coeff] : terms_) coeff *= c;
    return *this;
}

PathExpr PathExpr::between(const Quiver& q, int src, int tgt) const {
    PathExpr out;
    for (const auto& [p, c] : terms_)
        if (p.source(q) == src && p.target(q) == tgt) out.add(p, c);
    return out;
}

PathExpr mul(const Quiver& q, const PathExpr& a, const PathExpr& b) {
    PathExpr out;
    for (const auto& [pb, cb] : b.terms())
        for (const auto& [pa, ca] : a.terms()) {
            if (pb.target(q) != pa.source(q)) continue;
            out.add(compose(q, pa, pb), ca * cb);
        }
    return out;
}

Path Potential::canonical_rotation(const Path& cycle) {
    const auto& a = cycle.arrows;
    int n = static_cast<int>(a.size());
    int best = 0;
    for (int s = 1; s < n; ++s) {
        for (int k = 0; k < n; ++k) {
            int lhs = a[(s + k) % n];
            int rhs = a[(best + k) % n];
            if (lhs != rhs) {
                if (lhs < rhs) best = s;
                break;
            }
        }
    }
    Path out;
    out.arrows.reserve(n);
    for (int k = 0; k < n; ++k) out.arrows.push_back(a[(best + k) % n]);
    return out;
}

Potential::Potential(const Quiver& q, const PathExpr& e) {
    for (const auto& [p, c] : e.terms()) {
        if (p.length() < 2 || p.source(q) != p.target(q))
            throw Error("NotACycle", "potential term " + format_path(q, p) +
                                          " is not a cycle of length >= 2");
        expr_.add(canonical_rotation(p), c);
    }
}

Potential cyclic_projection(const Quiver& q, const PathExpr& e) {
    PathExpr cycles;
    for (const auto& [p, c] : e.terms())
        if (p.length() >= 2 && p.source(q) == p.target(q)) cycles.add(p, c);
    return Potential(q, cycles);
}

PathExpr cyclic_derivative(const Quiver& q, const Potential& s, int a) {
    if (a < 0 || a >= q.num_arrows()) throw Error("UnknownArrow", "bad arrow index");
    PathExpr out;
    for (const auto& [cycle, c] : s.expr().terms()) {
        const auto& arr = cycle.arrows;
        int n = static_cast<int>(arr.size());
        for (int k = 0; k < n; ++k) {
            if (arr[k] != a) continue;
            // Rotate the cycle so the occurrence comes first, then drop it.
            Path rest;
            rest.arrows.reserve(n - 1);
            for (int j = 1; j < n; ++j) rest.arrows.push_back(arr[(k + j) % n]);
            if (rest.arrows.empty()) rest = Path::trivial_at(q.arrow(a).tgt);
            out.add(rest, c);
        }
    }
    return out;
}

PathExpr cyclic_derivative(const Quiver& q, const Potential& s, const std::string& arrow_id) {
    return cyclic_derivative(q, s, q.arrow_index(arrow_id));
}

bool cyclically_equivalent(const Quiver& q, const Potential& a, const Potential& b) {
    (void)q;
    return a == b;
}

QuiverMorphism::QuiverMorphism(const Quiver& from, const Quiver& to,
                               std::vector<int> vertex_map, std::vector<int> arrow_map,
                               std::vector<Rat> arrow_scalars)
    : vertex_map_(std::move(vertex_map)),
      arrow_map_(std::move(arrow_map)),
      arrow_scalars_(std::move(arrow_scalars)) {
    if (static_cast<int>(vertex_map_.size()) != from.num_vertices() ||
        static_cast<int>(arrow_map_.size()) != from.num_arrows())
        throw Error("InvalidMorphism", "map does not cover the source quiver");
    if (arrow_scalars_.empty()) arrow_scalars_.assign(from.num_arrows(), Rat(1));
    for (int a = 0; a < from.num_arrows(); ++a) {
        const auto& src_arrow = from.arrow(a);
        const auto& dst_arrow = to.arrow(arrow_map_[a]);
        if (dst_arrow.src != vertex_map_[src_arrow.src] ||
            dst_arrow.tgt != vertex_map_[src_arrow.tgt])
            throw Error("InvalidMorphism",
                        "arrow '" + src_arrow.id + "' does not respect endpoints");
        if (arrow_scalars_[a] == 0)
            throw Error("InvalidMorphism", "zero scalar on arrow '" + src_arrow.id + "'");
    }
}

Path QuiverMorphism::map_path(const Path& p) const {
    if (p.trivial()) return Path::trivial_at(vertex_map_[p.base]);
    Path out;
    out.arrows.reserve(p.arrows.size());
    for (int a : p.arrows) out.arrows.push_back(arrow_map_[a]);
    return out;
}

PathExpr QuiverMorphism::apply(const PathExpr& e) const {
    PathExpr out;
    for (const auto& [p, c] : e.terms()) {
        Rat scale = c;
        for (int a : p.arrows) scale *= arrow_scalars_[a];
        out.add(map_path(p), scale);
    }
    return out;
}

Potential QuiverMorphism::apply(const Quiver& to, const Potential& s) const {
    return Potential(to, apply(s.expr()));
}

std::string format_path(const Quiver& q, const Path& p) {
    if (p.trivial()) return "e_" + q.vertex_id(p.base);
    std::string out;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
        if (!out.empty()) out += " ";
        out += q.arrow(*it).id;
    }
    return out;
}

std::string format_expr(const Quiver& q, const PathExpr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [p, c] : e.terms()) {
        if (!out.empty()) out += " + ";
        if (c != 1) out += to_string(c) + " ";
        out += format_path(q, p);
    }
    return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

} // namespace

QuiverFile parse_quiver_file(std::istream& in) {
    QuiverFile file;
    Quiver& q = file.qp.quiver;
    PathExpr potential;
    std::string line;
    int lineno = 0;
    std::vector<std::pair<Rat, std::vector<std::string>>> raw_terms;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kind = toks[0];
        auto want = [&](size_t n) {
            if (toks.size() != n)
                throw Error("ParseError",
                            "line " + std::to_string(lineno) + ": bad '" + kind + "' declaration");
        };
        if (kind == "vertex") {
            want(2);
            q.add_vertex(toks[1]);
        } else if (kind == "arrow") {
            want(4);
            q.add_arrow(toks[1], toks[2], toks[3]);
        } else if (kind == "potential") {
            if (toks.size() < 4)
                throw Error("ParseError", "line " + std::to_string(lineno) +
                                              ": potential needs a coefficient and >= 2 arrows");
            raw_terms.emplace_back(parse_rational(toks[1]),
                                   std::vector<std::string>(toks.begin() + 2, toks.end()));
        } else if (kind == "sigma_vertex") {
            want(3);
            file.sigma_vertices.emplace_back(toks[1], toks[2]);
        } else if (kind == "sigma_arrow") {
            want(3);
            file.sigma_arrows.emplace_back(toks[1], toks[2]);
        } else {
            throw Error("ParseError",
                        "line " + std::to_string(lineno) + ": unknown declaration '" + kind + "'");
        }
    }
    for (const auto& [coeff, ids] : raw_terms) {
        // Arrows are listed leftmost-composes-last, so reverse into
        // application order.
        Path p;
        for (auto it = ids.rbegin(); it != ids.rend(); ++it)
            p.arrows.push_back(q.arrow_index(*it));
        potential.add(p, coeff);
    }
    file.qp.potential = Potential(q, potential);
    return file;
}

QuiverFile parse_quiver_text(const std::string& text) {
    std::istringstream ss(text);
    return parse_quiver_file(ss);
}

std::string print_quiver(const QuiverWithPotential& qp) {
    std::ostringstream out;
    const Quiver& q = qp.quiver;
    for (int v = 0; v < q.num_vertices(); ++v) out << "vertex " << q.vertex_id(v) << "\n";
    for (const auto& a : q.arrows())
        out << "arrow " << a.id << " " << q.vertex_id(a.src) << " " << q.vertex_id(a.tgt) << "\n";
    for (const auto& [p, c] : qp.potential.expr().terms()) {
        out << "potential " << to_string(c);
        for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
            out << " " << q.arrow(*it).id;
        out << "\n";
    }
    return out.str();
}

} // namespace qpskew
