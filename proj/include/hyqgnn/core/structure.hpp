#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hyqgnn/core/elements.hpp"
#include "hyqgnn/core/geometry.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::core {

/// One atomic site. Fractional coordinates are wrapped into [0, 1) on
/// construction; oxidation_state is 0 until charges are assigned.
struct Site {
    std::string element;
    Vec3 frac{0, 0, 0};
    int oxidation_state = 0;

    Site() = default;
    Site(std::string element_, const Vec3& frac_, int oxidation_state_ = 0)
        : element(std::move(element_)), frac(wrap_frac(frac_)), oxidation_state(oxidation_state_) {}
};

struct CrystalStructure {
    Lattice lattice;
    std::vector<Site> sites;
    std::optional<double> target_energy;  // eV, absent at inference

    int total_charge() const {
        int q = 0;
        for (const auto& s : sites) q += s.oxidation_state;
        return q;
    }
};

namespace detail {

inline bool is_b_candidate(const ElementProperties& p) {
    return p.common_cation_charge >= 3 && p.common_cation_charge <= 5;
}

}  // namespace detail

/// Validates the ABO3 composition, assigns oxidation states (O = -2, B = its
/// common positive state in {+3,+4,+5}, A = 6 - B) and reorders sites into
/// the canonical [A, B, O, O, O] layout (oxygens keep their input order).
///
/// When both cations qualify as B, the smaller cation takes the B site
/// (B-site octahedra hold the smaller ion in real perovskites).
inline CrystalStructure canonicalize_abo3(const CrystalStructure& in) {
    if (in.sites.size() != 5) {
        throw InvalidComposition("perovskite mode requires exactly 5 sites, got " +
                                 std::to_string(in.sites.size()));
    }
    std::vector<std::size_t> oxygens;
    std::vector<std::size_t> cations;
    for (std::size_t i = 0; i < in.sites.size(); ++i) {
        if (in.sites[i].element == "O") {
            oxygens.push_back(i);
        } else {
            cations.push_back(i);
        }
    }
    if (oxygens.size() != 3 || cations.size() != 2) {
        throw InvalidComposition("ABO3 requires one A cation, one B cation and three O sites");
    }

    const auto& p0 = lookup_element_properties(in.sites[cations[0]].element);
    const auto& p1 = lookup_element_properties(in.sites[cations[1]].element);
    const bool c0 = detail::is_b_candidate(p0);
    const bool c1 = detail::is_b_candidate(p1);
    if (!c0 && !c1) {
        throw InvalidComposition("no cation with a common oxidation state in {+3,+4,+5} to take the B site (" +
                                 std::string(p0.symbol) + ", " + std::string(p1.symbol) + ")");
    }

    std::size_t b_idx;
    if (c0 != c1) {
        b_idx = c0 ? cations[0] : cations[1];
    } else {
        b_idx = (p0.cationic_radius <= p1.cationic_radius) ? cations[0] : cations[1];
    }
    const std::size_t a_idx = (b_idx == cations[0]) ? cations[1] : cations[0];

    const int b_charge = lookup_element_properties(in.sites[b_idx].element).common_cation_charge;
    const int a_charge = 6 - b_charge;
    if (a_charge < 1 || a_charge > 3) {
        throw InvalidComposition("implied A-site charge " + std::to_string(a_charge) +
                                 " outside {+1,+2,+3}");
    }

    CrystalStructure out;
    out.lattice = in.lattice;
    out.target_energy = in.target_energy;
    out.sites.reserve(5);
    Site a = in.sites[a_idx];
    a.oxidation_state = a_charge;
    Site b = in.sites[b_idx];
    b.oxidation_state = b_charge;
    out.sites.push_back(std::move(a));
    out.sites.push_back(std::move(b));
    for (std::size_t oi : oxygens) {
        Site o = in.sites[oi];
        o.oxidation_state = -2;
        out.sites.push_back(std::move(o));
    }
    return out;
}

}  // namespace hyqgnn::core
