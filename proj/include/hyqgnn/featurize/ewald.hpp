#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hyqgnn/core/structure.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::featurize {

/// Coulomb constant e^2 / (4 pi eps0) in eV * Angstrom.
inline constexpr double kCoulombEvAngstrom = 14.399645;

struct EwaldConfig {
    double relative_accuracy = 1e-5;
    double splitting_parameter = 0.0;  // Angstrom^-1; 0 selects the automatic choice

    void validate() const {
        if (!(relative_accuracy > 0.0 && relative_accuracy < 1.0)) {
            throw ConfigError("ewald relative_accuracy must lie in (0, 1)");
        }
        if (splitting_parameter < 0.0) {
            throw ConfigError("ewald splitting_parameter must be >= 0");
        }
    }
};

namespace detail {

/// Automatic splitting parameter: sqrt(pi) * (N / V^2)^(1/6).
inline double auto_splitting_parameter(std::size_t n_sites, double volume) {
    return std::sqrt(M_PI) * std::pow(static_cast<double>(n_sites) / (volume * volume), 1.0 / 6.0);
}

/// Grows `x` in steps of `step` until f(x) <= threshold. Throws past the bound.
template <typename F>
double grow_cutoff(F f, double x, double step, double threshold, double hard_bound, const char* what) {
    while (f(x) > threshold) {
        x += step;
        if (x > hard_bound) {
            throw ConvergenceFailure(std::string("ewald ") + what +
                                     " cutoff exceeded its hard bound before reaching the requested accuracy");
        }
    }
    return x;
}

}  // namespace detail

/// Per-site Ewald energies (eV) of the periodic point-charge array. Pair terms
/// are split half to each endpoint and the self term stays with its own site,
/// so the values sum to the total electrostatic energy of the cell.
inline std::vector<double> ewald_site_energies(const core::CrystalStructure& structure,
                                               const EwaldConfig& cfg = {}) {
    cfg.validate();
    if (structure.total_charge() != 0) {
        throw ChargeNotNeutral("ewald summation requires a charge-neutral cell, got total charge " +
                               std::to_string(structure.total_charge()));
    }

    const std::size_t n = structure.sites.size();
    const double volume = structure.lattice.volume();
    const double acc = cfg.relative_accuracy;
    const double alpha = cfg.splitting_parameter > 0.0
                             ? cfg.splitting_parameter
                             : detail::auto_splitting_parameter(n, volume);

    std::vector<double> charges(n);
    std::vector<core::Vec3> cart(n);
    for (std::size_t i = 0; i < n; ++i) {
        charges[i] = structure.sites[i].oxidation_state;
        cart[i] = structure.lattice.to_cartesian(structure.sites[i].frac);
    }

    // accuracy-driven cutoffs; both tails decay like exp(-x^2)
    const double rcut = detail::grow_cutoff([&](double r) { return std::erfc(alpha * r); },
                                            std::sqrt(-std::log(acc)) / alpha, 0.5, acc, 400.0, "real-space");
    const double kcut = detail::grow_cutoff(
        [&](double k) { return std::exp(-(k * k) / (4.0 * alpha * alpha)); },
        2.0 * alpha * std::sqrt(-std::log(acc)), 0.25, acc, 400.0, "reciprocal-space");

    const core::Mat33 recip = structure.lattice.reciprocal_rows();
    std::vector<double> energy(n, 0.0);

    // real-space sum over neighbor images
    double diag = 0.0;
    for (int ci = 0; ci <= 1; ++ci)
        for (int cj = 0; cj <= 1; ++cj)
            for (int ck = 0; ck <= 1; ++ck)
                diag = std::max(diag, core::norm(structure.lattice.to_cartesian(
                                          {double(ci), double(cj), double(ck)})));
    int nmax[3];
    for (int d = 0; d < 3; ++d) {
        const double spacing = 2.0 * M_PI / core::norm(recip[d]);
        nmax[d] = static_cast<int>(std::ceil((rcut + diag) / spacing));
    }
    for (int nx = -nmax[0]; nx <= nmax[0]; ++nx) {
        for (int ny = -nmax[1]; ny <= nmax[1]; ++ny) {
            for (int nz = -nmax[2]; nz <= nmax[2]; ++nz) {
                const bool home_cell = (nx == 0 && ny == 0 && nz == 0);
                const core::Vec3 shift =
                    structure.lattice.to_cartesian({double(nx), double(ny), double(nz)});
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        if (home_cell && i == j) continue;
                        const double d = core::norm(cart[j] + shift - cart[i]);
                        if (d > rcut) continue;
                        if (d < 1e-9) {
                            throw DegenerateGeometry("coincident sites in ewald real-space sum");
                        }
                        energy[i] += 0.5 * charges[i] * charges[j] * std::erfc(alpha * d) / d;
                    }
                }
            }
        }
    }

    // reciprocal-space sum
    int kmax[3];
    for (int d = 0; d < 3; ++d) {
        kmax[d] = static_cast<int>(std::ceil(kcut / core::norm(recip[d])));
    }
    const double kcut2 = kcut * kcut;
    for (int mx = -kmax[0]; mx <= kmax[0]; ++mx) {
        for (int my = -kmax[1]; my <= kmax[1]; ++my) {
            for (int mz = -kmax[2]; mz <= kmax[2]; ++mz) {
                if (mx == 0 && my == 0 && mz == 0) continue;
                const core::Vec3 k = double(mx) * recip[0] + double(my) * recip[1] + double(mz) * recip[2];
                const double k2 = core::dot(k, k);
                if (k2 > kcut2) continue;
                const double g = std::exp(-k2 / (4.0 * alpha * alpha)) / k2;
                double re = 0.0, im = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double phase = core::dot(k, cart[j]);
                    re += charges[j] * std::cos(phase);
                    im += charges[j] * std::sin(phase);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double phase = core::dot(k, cart[i]);
                    energy[i] += (2.0 * M_PI / volume) * g * charges[i] *
                                 (std::cos(phase) * re + std::sin(phase) * im);
                }
            }
        }
    }

    // self term
    for (std::size_t i = 0; i < n; ++i) {
        energy[i] -= alpha / std::sqrt(M_PI) * charges[i] * charges[i];
    }

    for (double& e : energy) e *= kCoulombEvAngstrom;
    return energy;
}

/// Total Ewald energy of the cell (eV).
inline double ewald_total_energy(const core::CrystalStructure& structure, const EwaldConfig& cfg = {}) {
    double total = 0.0;
    for (double e : ewald_site_energies(structure, cfg)) total += e;
    return total;
}

}  // namespace hyqgnn::featurize
