#pragma once

#include <array>
#include <string>
#include <string_view>

#include "hyqgnn/errors.hpp"

namespace hyqgnn::core {

/// Per-element descriptor row.
///
/// Radii are Shannon crystal radii (coordination VI) at the element's common
/// oxidation state; 0 marks "no stable ion of that sign" (or no tabulated
/// radius, e.g. the bare proton). Electronegativity is the Pauling scale;
/// 0 marks elements without a Pauling value (He, Ne, Ar). Electron
/// affinities of elements with unbound anions are 0.
struct ElementProperties {
    std::string_view symbol;
    int atomic_number = 0;
    double electronegativity = 0.0;    // Pauling
    double electron_affinity = 0.0;    // eV
    double first_ionization = 0.0;     // eV
    double cationic_radius = 0.0;      // Angstrom
    double anionic_radius = 0.0;       // Angstrom
    int common_cation_charge = 0;      // most common positive oxidation state, 0 if none
};

inline constexpr std::string_view kElementTableVersion = "1.0.0";

// clang-format off
inline constexpr std::array<ElementProperties, 83> kElementTable{{
    //  sym   Z   chi    EA      IE1     r+     r-    q+
    {"H",   1, 2.20, 0.754, 13.598, 0.00, 1.25, 1},
    {"He",  2, 0.00, 0.000, 24.587, 0.00, 0.00, 0},
    {"Li",  3, 0.98, 0.618,  5.392, 0.90, 0.00, 1},
    {"Be",  4, 1.57, 0.000,  9.323, 0.59, 0.00, 2},
    {"B",   5, 2.04, 0.280,  8.298, 0.41, 0.00, 3},
    {"C",   6, 2.55, 1.262, 11.260, 0.30, 0.00, 4},
    {"N",   7, 3.04, 0.000, 14.534, 0.27, 1.32, 5},
    {"O",   8, 3.44, 1.461, 13.618, 0.00, 1.26, 0},
    {"F",   9, 3.98, 3.401, 17.423, 0.00, 1.19, 0},
    {"Ne", 10, 0.00, 0.000, 21.565, 0.00, 0.00, 0},
    {"Na", 11, 0.93, 0.548,  5.139, 1.16, 0.00, 1},
    {"Mg", 12, 1.31, 0.000,  7.646, 0.86, 0.00, 2},
    {"Al", 13, 1.61, 0.433,  5.986, 0.675, 0.00, 3},
    {"Si", 14, 1.90, 1.390,  8.152, 0.54, 0.00, 4},
    {"P",  15, 2.19, 0.746, 10.487, 0.52, 1.98, 5},
    {"S",  16, 2.58, 2.077, 10.360, 0.43, 1.70, 6},
    {"Cl", 17, 3.16, 3.613, 12.968, 0.41, 1.67, 7},
    {"Ar", 18, 0.00, 0.000, 15.760, 0.00, 0.00, 0},
    {"K",  19, 0.82, 0.501,  4.341, 1.52, 0.00, 1},
    {"Ca", 20, 1.00, 0.025,  6.113, 1.14, 0.00, 2},
    {"Sc", 21, 1.36, 0.188,  6.561, 0.885, 0.00, 3},
    {"Ti", 22, 1.54, 0.079,  6.828, 0.745, 0.00, 4},
    {"V",  23, 1.63, 0.525,  6.746, 0.68, 0.00, 5},
    {"Cr", 24, 1.66, 0.666,  6.767, 0.755, 0.00, 3},
    {"Mn", 25, 1.55, 0.000,  7.434, 0.97, 0.00, 2},
    {"Fe", 26, 1.83, 0.151,  7.902, 0.785, 0.00, 3},
    {"Co", 27, 1.88, 0.662,  7.881, 0.885, 0.00, 2},
    {"Ni", 28, 1.91, 1.156,  7.640, 0.83, 0.00, 2},
    {"Cu", 29, 1.90, 1.235,  7.726, 0.87, 0.00, 2},
    {"Zn", 30, 1.65, 0.000,  9.394, 0.88, 0.00, 2},
    {"Ga", 31, 1.81, 0.430,  5.999, 0.76, 0.00, 3},
    {"Ge", 32, 2.01, 1.233,  7.899, 0.67, 0.00, 4},
    {"As", 33, 2.18, 0.804,  9.789, 0.60, 0.00, 5},
    {"Se", 34, 2.55, 2.021,  9.752, 0.64, 1.84, 4},
    {"Br", 35, 2.96, 3.364, 11.814, 0.45, 1.82, 5},
    {"Kr", 36, 3.00, 0.000, 14.000, 0.00, 0.00, 0},
    {"Rb", 37, 0.82, 0.486,  4.177, 1.66, 0.00, 1},
    {"Sr", 38, 0.95, 0.048,  5.695, 1.32, 0.00, 2},
    {"Y",  39, 1.22, 0.307,  6.217, 1.04, 0.00, 3},
    {"Zr", 40, 1.33, 0.426,  6.634, 0.86, 0.00, 4},
    {"Nb", 41, 1.60, 0.893,  6.759, 0.78, 0.00, 5},
    {"Mo", 42, 2.16, 0.748,  7.092, 0.73, 0.00, 6},
    {"Tc", 43, 1.90, 0.550,  7.280, 0.785, 0.00, 4},
    {"Ru", 44, 2.20, 1.050,  7.361, 0.76, 0.00, 4},
    {"Rh", 45, 2.28, 1.137,  7.459, 0.805, 0.00, 3},
    {"Pd", 46, 2.20, 0.562,  8.337, 1.00, 0.00, 2},
    {"Ag", 47, 1.93, 1.302,  7.576, 1.29, 0.00, 1},
    {"Cd", 48, 1.69, 0.000,  8.994, 1.09, 0.00, 2},
    {"In", 49, 1.78, 0.384,  5.786, 0.94, 0.00, 3},
    {"Sn", 50, 1.96, 1.112,  7.344, 0.83, 0.00, 4},
    {"Sb", 51, 2.05, 1.047,  8.608, 0.74, 0.00, 5},
    {"Te", 52, 2.10, 1.971,  9.010, 1.11, 2.07, 4},
    {"I",  53, 2.66, 3.059, 10.451, 1.09, 2.06, 5},
    {"Xe", 54, 2.60, 0.000, 12.130, 0.00, 0.00, 0},
    {"Cs", 55, 0.79, 0.472,  3.894, 1.81, 0.00, 1},
    {"Ba", 56, 0.89, 0.145,  5.212, 1.49, 0.00, 2},
    {"La", 57, 1.10, 0.470,  5.577, 1.172, 0.00, 3},
    {"Ce", 58, 1.12, 0.628,  5.539, 1.15, 0.00, 3},
    {"Pr", 59, 1.13, 0.109,  5.473, 1.13, 0.00, 3},
    {"Nd", 60, 1.14, 0.097,  5.525, 1.123, 0.00, 3},
    {"Pm", 61, 1.13, 0.129,  5.582, 1.11, 0.00, 3},
    {"Sm", 62, 1.17, 0.162,  5.644, 1.098, 0.00, 3},
    {"Eu", 63, 1.20, 0.116,  5.670, 1.087, 0.00, 3},
    {"Gd", 64, 1.20, 0.137,  6.150, 1.078, 0.00, 3},
    {"Tb", 65, 1.20, 0.110,  5.864, 1.063, 0.00, 3},
    {"Dy", 66, 1.22, 0.352,  5.939, 1.052, 0.00, 3},
    {"Ho", 67, 1.23, 0.338,  6.021, 1.041, 0.00, 3},
    {"Er", 68, 1.24, 0.312,  6.108, 1.03, 0.00, 3},
    {"Tm", 69, 1.25, 1.029,  6.184, 1.02, 0.00, 3},
    {"Yb", 70, 1.10, 0.000,  6.254, 1.008, 0.00, 3},
    {"Lu", 71, 1.27, 0.338,  5.426, 1.001, 0.00, 3},
    {"Hf", 72, 1.30, 0.017,  6.825, 0.85, 0.00, 4},
    {"Ta", 73, 1.50, 0.322,  7.550, 0.78, 0.00, 5},
    {"W",  74, 2.36, 0.816,  7.864, 0.74, 0.00, 6},
    {"Re", 75, 1.90, 0.150,  7.834, 0.67, 0.00, 7},
    {"Os", 76, 2.20, 1.078,  8.438, 0.77, 0.00, 4},
    {"Ir", 77, 2.20, 1.564,  8.967, 0.765, 0.00, 4},
    {"Pt", 78, 2.28, 2.128,  8.959, 0.94, 0.00, 2},
    {"Au", 79, 2.54, 2.309,  9.226, 0.99, 0.00, 3},
    {"Hg", 80, 2.00, 0.000, 10.437, 1.16, 0.00, 2},
    {"Tl", 81, 1.62, 0.377,  6.108, 1.64, 0.00, 1},
    {"Pb", 82, 2.33, 0.364,  7.417, 1.33, 0.00, 2},
    {"Bi", 83, 2.02, 0.942,  7.286, 1.17, 0.00, 3},
}};
// clang-format on

/// Table lookup by chemical symbol. Throws UnknownElement for absent symbols.
inline const ElementProperties& lookup_element_properties(std::string_view symbol) {
    for (const auto& row : kElementTable) {
        if (row.symbol == symbol) {
            return row;
        }
    }
    throw UnknownElement(std::string(symbol));
}

inline const ElementProperties& lookup_element_properties(int atomic_number) {
    if (atomic_number < 1 || atomic_number > static_cast<int>(kElementTable.size())) {
        throw UnknownElement("Z=" + std::to_string(atomic_number));
    }
    return kElementTable[static_cast<std::size_t>(atomic_number - 1)];
}

}  // namespace hyqgnn::core
