#pragma once

#include "qpskew/involution.hpp"
#include "qpskew/quiver.hpp"
#include "qpskew/skew.hpp"

#include <string>
#include <vector>

namespace qpskew {

/// Graded double quiver of a QP: a degree-0 copy of each arrow, a degree -1
/// reverse <id>~, and a degree -2 loop t_<vertex> per vertex.
struct GradedQuiver {
    Quiver quiver;
    std::vector<int> degree; // per arrow: 0, -1 or -2

    enum class Kind { Original, Reverse, Loop };
    struct Origin {
        Kind kind;
        int base; // arrow index for Original/Reverse, vertex index for Loop
    };
    std::vector<Origin> origin;

    int original(int base_arrow) const;
    int reverse(int base_arrow) const;
    int loop(int base_vertex) const;
    int path_degree(const Path& p) const;
};

GradedQuiver graded_double(const Quiver& q);

/// d(a) = 0, d(a~) = the cyclic derivative by a, d(t_i) = e_i sum_a
/// (a a~ - a~ a) e_i, extended by the Leibniz rule with sign (-1)^deg.
struct Differential {
    std::vector<PathExpr> on_arrow; // image per graded arrow

    PathExpr apply(const GradedQuiver& gq, const Path& p) const;
    PathExpr apply(const GradedQuiver& gq, const PathExpr& e) const;
};

struct GinzburgData {
    GradedQuiver graded;
    Differential d;
};

/// Builds the Ginzburg data and verifies d^2 = 0 on every generator.
/// Errors: DifferentialNotSquareZero with the witness generator.
GinzburgData ginzburg(const QuiverWithPotential& qp);

/// sigma on the graded quiver: sigma(a~) = sigma(a)~, sigma(t_i) =
/// t_sigma(i); verified to commute with the differential on every generator.
/// Errors: DoesNotCommuteWithDifferential.
Involution extend_action_to_ginzburg(const QuiverWithPotential& qp, const GinzburgData& data,
                                     const Involution& sigma);

/// Generator-by-generator comparison of (A) the skew of the Ginzburg data
/// and (B) the Ginzburg data of the skew QP, through the rescaling zeta
/// (1/4/8 on the degree -1 arrows by endpoint case, 1/4 on the loops).
struct GinzburgCompareEntry {
    std::string generator;
    Rat zeta;
    std::string skew_side;     // differential in the skewed dg algebra
    std::string ginzburg_side; // differential in the Ginzburg of the skew QP
    bool match;
};

struct GinzburgCompareReport {
    bool ok = true;
    std::string detail;
    std::vector<GinzburgCompareEntry> entries;
    SkewResult skew; // of the base QP, with potential
};

GinzburgCompareReport skew_ginzburg_compare(const QuiverWithPotential& qp, const Involution& sigma,
                                            const OrbitChoice& choice);

} // namespace qpskew
