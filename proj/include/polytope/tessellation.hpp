#pragma once

// Honeycomb existence conditions, the degenerate 5-D condition and the star
// transform, 3-D honeycomb solving, and statistics against the classical
// crystal-aggregate averages.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "polytope/error.hpp"
#include "polytope/generators4.hpp"
#include "polytope/symbols.hpp"

namespace polytope {

/// Residual (1-e)(1-h) - d of the 3-space honeycomb condition on a degenerate
/// 4-D symbol {m, i, U}; zero iff the symbol tessellates 3-space.
inline double honeycomb3_residual(const ESymbol4& e) {
    return (1.0 - e.epsilon) * (1.0 - e.eta) - e.delta;
}

/// Same residual for a 3-D polytope {m, i} with edge surround count U.
inline double honeycomb3_residual(const ESymbol3& e, double u_count) {
    return honeycomb3_residual(ESymbol4{e.epsilon, e.delta, cos2_pi_over(u_count)});
}

/// Solve cos(pi/i) = sin(pi/m) sin(pi/U) for m.
inline double solve_honeycomb3(double i, double u_count) {
    const double s = std::sin(std::numbers::pi / u_count);
    if (s == 0.0) throw NoRealSolution("solve_honeycomb3: sin(pi/U) vanishes");
    const double ratio = std::cos(std::numbers::pi / i) / s;
    if (std::abs(ratio) > 1.0) {
        throw NoRealSolution("solve_honeycomb3: cos(pi/i)/sin(pi/U) = " + std::to_string(ratio) +
                             " lies outside [-1, 1]");
    }
    return std::numbers::pi / std::asin(ratio);
}

/// E-symbol of a 5-D polytope, [epsilon, delta, eta, nu].
struct ESymbol5 {
    double epsilon = 0.0;
    double delta = 0.0;
    double eta = 0.0;
    double nu = 0.0;
};

/// H-symbol companion of ESymbol5, [alpha, beta, gamma, mu].
struct HSymbol5 {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double mu = 0.0;
};

/// The ratio mu = (5R0)^2/(5R1)^2 of a degenerate 5-D polytope:
/// mu = (1/e)(1 - d(1-nu)/(1-h-nu)). The polytope [e,d,h] tessellates 4-space
/// with star nu exactly when mu = 1.
inline double mu5(const ESymbol5& s) {
    if (s.epsilon == 0.0) throw SingularTransform("mu5: epsilon vanishes");
    const double den = 1.0 - s.eta - s.nu;
    if (den == 0.0) throw SingularTransform("mu5: factor (1 - eta - nu) vanished");
    return (1.0 / s.epsilon) * (1.0 - s.delta * (1.0 - s.nu) / den);
}

struct StarResult {
    ESymbol4 star;
    double mu_residual = 0.0;  // |mu([e, d, h, nu]) - 1|
};

/// Star of tessellation: [e,d,h] -> [d, h, 1 - h(1-e)/(1-e-d)], the exact
/// solution of mu = 1; inverts the vertex reflection A.
inline StarResult star_transform(const ESymbol4& e) {
    const double den = 1.0 - e.epsilon - e.delta;
    if (den == 0.0)
        throw SingularTransform("star_transform: factor (1 - epsilon - delta) vanished");
    StarResult out;
    out.star = {e.delta, e.eta, 1.0 - e.eta * (1.0 - e.epsilon) / den};
    out.mu_residual =
        std::abs(mu5({e.epsilon, e.delta, e.eta, out.star.eta}) - 1.0);
    return out;
}

/// One literature reference for average cell statistics; negative entries
/// mean the source reports no value for that field.
struct LiteratureStats {
    std::string source;
    double vertices = -1.0;
    double edges = -1.0;
    double faces = -1.0;
    double edges_per_face = -1.0;
};

/// Reported averages for random tessellations of 3-space with minimal
/// covering: crystal-growth models and the plasticine-ball experiment.
inline const std::vector<LiteratureStats>& literature_stats() {
    static const std::vector<LiteratureStats> rows = {
        {"Meijering", 22.56, 33.84, 13.28, 5.096},
        {"Coxeter (close packing)", 23.13, 34.69, 13.56, 5.115},
        {"Gilbert / Johnson-Mehl / Miles", 27.07, 40.61, 15.54, 5.23},
        {"Bernal (experiment)", -1.0, -1.0, 13.3, -1.0},
        {"Smith", 22.79, -1.0, -1.0, -1.0},
    };
    return rows;
}

struct LiteratureComparison {
    std::string source;
    // relative differences per field; negative when the source has no value
    double vertices = -1.0;
    double edges = -1.0;
    double faces = -1.0;
    double edges_per_face = -1.0;
};

struct StatsReport {
    HoneycombStats stats;
    double covering_vertex_reflection = 0.0;  // faces n of the initial polytope
    double covering_face_reflection = 0.0;    // vertices y of the initial polytope
    std::vector<LiteratureComparison> comparisons;
};

/// Element counts of the polytope with E-symbol [e, d] plus relative
/// differences against each stored literature constant set.
inline StatsReport stats_report(const ESymbol3& e) {
    const FSymbol f = e_to_f(e);
    StatsReport rep;
    rep.stats = honeycomb_counts(f.entries[0], f.entries[1]);
    rep.covering_vertex_reflection = rep.stats.faces;
    rep.covering_face_reflection = rep.stats.vertices;
    for (const LiteratureStats& lit : literature_stats()) {
        LiteratureComparison cmp;
        cmp.source = lit.source;
        auto rel = [](double computed, double reference) {
            return reference > 0 ? std::abs(computed - reference) / reference : -1.0;
        };
        cmp.vertices = rel(rep.stats.vertices, lit.vertices);
        cmp.edges = rel(rep.stats.edges, lit.edges);
        cmp.faces = rel(rep.stats.faces, lit.faces);
        cmp.edges_per_face = rel(rep.stats.edges_per_face, lit.edges_per_face);
        rep.comparisons.push_back(std::move(cmp));
    }
    return rep;
}

}  // namespace polytope
