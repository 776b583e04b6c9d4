#pragma once

// Tabulated reference values: the H-symbols of the integer regular 4-D
// polytopes (Euclidean-metric and pseudo-Euclidean tables), and the catalog
// of the simplest pseudo-Euclidean eigentopes with finite spin. Tabulated
// closed forms are kept verbatim so recomputation can flag discrepancies;
// the recomputed value is authoritative.

#include <cmath>
#include <string>
#include <vector>

#include "polytope/symbols.hpp"

namespace polytope {

struct HTableRow {
    std::string name;        // e.g. "{3,3,4}"
    FSymbol f;
    double alpha_tabulated;  // published closed-form value
    double beta_tabulated;
    double gamma_tabulated;
};

inline double sqrt5() { return std::sqrt(5.0); }

/// The six integer polytopes with Euclidean metric (alpha > beta > gamma > 1).
/// The {3,3,5} beta entry carries the tabulated value (9/2)(1 - 3 sqrt 5),
/// which recomputation flags; the consistent value is (9 - 3 sqrt 5)/2.
inline const std::vector<HTableRow>& euclidean_h_table() {
    static const std::vector<HTableRow> rows = [] {
        const double s5 = sqrt5();
        return std::vector<HTableRow>{
            {"{3,3,3}", FSymbol{3, 3, 3}, 16.0, 6.0, 8.0 / 3.0},
            {"{4,3,3}", FSymbol{4, 3, 3}, 4.0, 2.0, 4.0 / 3.0},
            {"{3,3,4}", FSymbol{3, 3, 4}, 4.0, 3.0, 2.0},
            {"{3,4,3}", FSymbol{3, 4, 3}, 2.0, 1.5, 4.0 / 3.0},
            {"{5,3,3}", FSymbol{5, 3, 3}, 4.0 * (7.0 - 3.0 * s5), 2.0 * (5.0 - 2.0 * s5),
             4.0 * (1.0 - s5 / 3.0)},
            {"{3,3,5}", FSymbol{3, 3, 5}, 4.0 * (7.0 - 3.0 * s5), 4.5 * (1.0 - 3.0 * s5),
             2.0 * (1.0 - s5 / 5.0)},
        };
    }();
    return rows;
}

/// The four integer polytopes in a pseudo-Euclidean (+---) space.
inline const std::vector<HTableRow>& hyperbolic_h_table() {
    static const std::vector<HTableRow> rows = [] {
        const double s5 = sqrt5();
        return std::vector<HTableRow>{
            {"{5,3,4}", FSymbol{5, 3, 4}, 7.0 - 3.0 * s5, 5.0 - 2.0 * s5, 3.0 - s5},
            {"{4,3,5}", FSymbol{4, 3, 5}, 7.0 - 3.0 * s5, (3.0 - s5) / 2.0, 1.0 - s5 / 5.0},
            {"{3,5,3}", FSymbol{3, 5, 3}, 4.0 * (9.0 - 4.0 * s5), 1.5 * (7.0 - 3.0 * s5),
             2.0 * (1.0 - s5 / 3.0)},
            {"{5,3,5}", FSymbol{5, 3, 5}, 2.0 * (47.0 - 21.0 * s5), (25.0 - 11.0 * s5) / 2.0,
             4.0 * (1.0 - 2.0 * s5 / 5.0)},
        };
    }();
    return rows;
}

struct SpinTableRow {
    int q;
    std::string word;         // ASCII form; a digit repeats the preceding letter
    double epsilon, delta, eta;  // printed to three decimals
    double lambda;            // published scalar of X^q
};

/// The catalog of simplest pseudo-Euclidean eigentopes with finite spin:
/// thirteen rows with lambda > 0 and five with lambda < 0.
inline const std::vector<SpinTableRow>& spin_reference_table() {
    static const std::vector<SpinTableRow> rows = {
        {2, "agdfcF", 0.577, 0.366, 0.366, 0.179},
        {3, "ABaGE", 0.382, 0.382, 0.500, 0.056},
        {3, "ABE2F", 0.293, 0.414, 0.547, -0.071},
        {4, "AGA", 0.500, 0.281, 0.500, 7.507},
        {5, "ADagdE", 0.236, 0.382, 0.567, 1.000},
        {5, "A2FafeC", 0.236, 0.500, 0.433, -0.455},
        {6, "ADGFAC", 0.360, 0.360, 0.500, 0.227},
        {7, "aE2HD", 0.298, 0.537, 0.409, 0.213},
        {7, "aE2aE", 0.298, 0.537, 0.409, -61.7},
        {8, "HAeda", 0.382, 0.553, 0.276, 0.341},
        {9, "ABGDFHCF", 0.420, 0.210, 0.756, 3.1e-9},
        {9, "ABGDFaFF", 0.420, 0.210, 0.756, -1.000},
        {10, "aEGAdg", 0.691, 0.236, 0.618, 0.120},
        {12, "CAeCAgd", 0.366, 0.500, 0.446, 4096.0},
        {13, "aFEGaFEF", 0.652, 0.250, 0.705, 1696.0},
        {13, "aFEGHCEF", 0.652, 0.250, 0.705, -5.099},
        {14, "aHgefgd", 0.555, 0.308, 0.555, 173.1},
        {16, "aeDHDgd", 0.707, 0.185, 0.631, 72.1},
    };
    return rows;
}

/// Named exact constants accepted on the command line in place of decimals.
struct NamedConstant {
    std::string token;
    double value;
    std::string meaning;
};

inline const std::vector<NamedConstant>& named_constants() {
    static const std::vector<NamedConstant> rows = [] {
        const double s5 = sqrt5();
        return std::vector<NamedConstant>{
            {"phi2", (3.0 - s5) / 2.0, "(3 - sqrt 5)/2, the A fixed point coordinate"},
            {"cos2pi5", (3.0 + s5) / 8.0, "cos^2(pi/5)"},
            {"icos", (3.0 - s5) / 8.0, "cos^2(2 pi/5)"},
            {"third", 1.0 / 3.0, "1/3"},
            {"sixth", 1.0 / 6.0, "1/6"},
        };
    }();
    return rows;
}

}  // namespace polytope
