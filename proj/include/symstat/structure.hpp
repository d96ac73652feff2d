#pragma once

#include "symstat/common.hpp"
#include "symstat/model.hpp"
#include "symstat/spectral.hpp"

#include <array>
#include <string>
#include <vector>

namespace symstat {

// Strongly connected components of the transition graph of M = A + B, in
// topological order (edges only run from earlier components to later ones),
// with the per-component blocks of A, B, xi, eta. For exactly two components
// the off-diagonal coupling blocks are extracted as well.
struct ComponentStructure {
    std::vector<std::vector<int>> components;  // state indices, 0-based
    std::vector<Matrix> a_blocks;
    std::vector<Matrix> b_blocks;
    std::vector<Vector> xi_blocks;
    std::vector<Vector> eta_blocks;
    std::vector<std::vector<bool>> coupling;   // coupling[i][j]: nonzero block i->j
    Matrix a_coupling;  // m1 x m2, only when components.size() == 2
    Matrix b_coupling;

    Matrix coupling_total() const { return a_coupling + b_coupling; }
};

// Periodicity data of the pair (A_c, B_c) of one irreducible component.
// Every simple cycle contributes an integer vector (length, counted-letter
// count); d generates the intersection of the spanned lattice with the axis
// {0} x Z. d = 1 is the aperiodic case; d = 0 means equal-length cycles never
// differ in count (rank-one lattice). cycle_length_gcd is the index of
// imprimitivity of A_c + B_c. spectral_agrees reports the independent
// eigenvalue-modulus criterion: |mu| < lambda for every eigenvalue of
// A_c e^{it} + B_c sampled over t in (0, 2pi).
struct AperiodicityResult {
    int d = 0;
    std::vector<std::array<long, 2>> lattice_basis;
    bool spectral_agrees = false;
    long cycle_length_gcd = 0;
};

enum class Variant {
    Primitive,
    DominantCommunicating,
    EquipotentCommunicating,
    DominantSum,
    EquipotentSum,
    Unsupported,
};

enum class EquipotentSubcase {
    BetaDiffer,
    BetaEqualGammaDiffer,
    BetaGammaEqual,
};

// Classification outcome: the variant plus everything that was measured on
// the way (per-component constants and periodicity data), so callers can
// print a full report or refuse a law with the failed hypothesis named.
struct ModelClass {
    Variant variant = Variant::Unsupported;
    int dominant = 0;                     // 1 or 2 for the dominant variants
    EquipotentSubcase subcase = EquipotentSubcase::BetaDiffer;
    std::string unsupported_reason;
    std::vector<SpectralConstants> constants;      // one per component
    std::vector<AperiodicityResult> aperiodicity;  // one per component

    bool is_unsupported() const { return variant == Variant::Unsupported; }
    bool is_equipotent() const {
        return variant == Variant::EquipotentCommunicating ||
               variant == Variant::EquipotentSum;
    }
    bool is_dominant() const {
        return variant == Variant::DominantCommunicating ||
               variant == Variant::DominantSum;
    }
};

std::string variant_name(Variant v);
std::string subcase_name(EquipotentSubcase s);

ComponentStructure condensation(const ValidatedModel& model);

// Budget for the simple-cycle enumeration behind the aperiodicity index.
inline constexpr long kCycleBudget = 1'000'000;

AperiodicityResult aperiodicity_index(const Matrix& a_c, const Matrix& b_c);

ModelClass classify(const ValidatedModel& model, double tol_eq = 1e-9);

} // namespace symstat
