#pragma once

#include "qpskew/quiver.hpp"

#include <optional>
#include <vector>

namespace qpskew {

/// Order-2 action on a quiver: permutations of vertices and arrows that
/// respect endpoints and fix every arrow whose endpoints are both fixed.
class Involution {
public:
    Involution() = default;
    Involution(std::vector<int> vertex_map, std::vector<int> arrow_map)
        : vertex_map_(std::move(vertex_map)), arrow_map_(std::move(arrow_map)) {}

    static Involution identity(const Quiver& q);
    static Involution from_pairs(const Quiver& q,
                                 const std::vector<std::pair<std::string, std::string>>& vertices,
                                 const std::vector<std::pair<std::string, std::string>>& arrows);

    int vertex(int v) const { return vertex_map_[v]; }
    int arrow(int a) const { return arrow_map_[a]; }
    const std::vector<int>& vertex_map() const { return vertex_map_; }
    const std::vector<int>& arrow_map() const { return arrow_map_; }

    Path apply(const Path& p) const;
    PathExpr apply(const PathExpr& e) const;
    Potential apply(const Quiver& q, const Potential& s) const;
    QuiverMorphism as_morphism(const Quiver& q) const;

private:
    std::vector<int> vertex_map_;
    std::vector<int> arrow_map_;
};

/// V = fixed vertices, W = the rest.
struct ActionPartition {
    std::vector<bool> in_w;
    std::vector<int> v_list;
    std::vector<int> w_list;

    bool in_v(int v) const { return !in_w[v]; }
};

/// Checks the standing assumptions (sigma^2 = id, endpoints respected,
/// arrows between fixed vertices fixed) and returns the V/W partition.
/// Errors: NotInvolution, EndpointsNotRespected, FixedArrowViolation.
ActionPartition validate_action(const Quiver& q, const Involution& sigma);

/// One vertex per non-fixed orbit plus one arrow per arrow orbit.  When
/// `admissible` every arrow with an endpoint in o(W) has its other endpoint
/// in V or o(W), and the arrow representatives are exactly the arrows with
/// all endpoints in o(W) union V.
struct OrbitChoice {
    std::vector<int> w_reps;
    std::vector<bool> is_w_rep;
    std::vector<int> arrow_reps;
    std::vector<bool> is_arrow_rep;
    bool admissible = false;
};

/// Deterministic search: orbits in vertex-id order, smaller representative
/// preferred.  Absence of an admissible choice is a value, not an error.
std::optional<OrbitChoice> find_admissible(const Quiver& q, const Involution& sigma);

/// Re-checks a candidate choice against the admissibility definition;
/// independent of the search in find_admissible.
bool is_admissible_choice(const Quiver& q, const Involution& sigma, const ActionPartition& part,
                          const OrbitChoice& choice);

/// Builds a choice from explicit vertex representatives; the arrow
/// representatives default to the arrows with all endpoints in o(W) union V
/// (a transversal exactly when the choice is admissible) and may be
/// overridden with an explicit transversal.
OrbitChoice make_choice(const Quiver& q, const Involution& sigma, const ActionPartition& part,
                        const std::vector<int>& w_reps);
OrbitChoice make_choice(const Quiver& q, const Involution& sigma, const ActionPartition& part,
                        const std::vector<int>& w_reps, const std::vector<int>& arrow_reps);

bool check_potential_invariance(const Quiver& q, const Potential& s, const Involution& sigma);

} // namespace qpskew
