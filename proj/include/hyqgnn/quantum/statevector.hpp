#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hyqgnn/errors.hpp"

namespace hyqgnn::quantum {

inline constexpr std::size_t kDefaultQubits = 5;

using Complex = std::complex<double>;

/// Exact n-qubit statevector with big-endian index convention: qubit 0 is
/// the most significant bit, so basis index i carries bit (n-1-q) of qubit q.
class StateVector {
public:
    explicit StateVector(std::size_t num_qubits = kDefaultQubits)
        : num_qubits_(num_qubits), amplitudes_(std::size_t{1} << num_qubits, Complex{0.0, 0.0}) {
        if (num_qubits_ == 0 || num_qubits_ > 20) {
            throw ConfigError("qubit count must be in [1, 20], got " + std::to_string(num_qubits_));
        }
        amplitudes_[0] = Complex{1.0, 0.0};
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    std::vector<Complex>& amplitudes() { return amplitudes_; }

    double norm_squared() const {
        double acc = 0.0;
        for (const auto& a : amplitudes_) acc += std::norm(a);
        return acc;
    }

    /// Bit position of qubit q inside a basis index (big-endian).
    std::size_t bit_position(std::size_t q) const {
        if (q >= num_qubits_) {
            throw IndexOutOfRange("qubit " + std::to_string(q) + " out of range for " +
                                  std::to_string(num_qubits_) + " qubits");
        }
        return num_qubits_ - 1 - q;
    }

    /// Applies a 2x2 unitary [[u00, u01], [u10, u11]] to qubit q.
    void apply_single_qubit(std::size_t q, Complex u00, Complex u01, Complex u10, Complex u11) {
        const std::size_t stride = std::size_t{1} << bit_position(q);
        for (std::size_t base = 0; base < amplitudes_.size(); base += 2 * stride) {
            for (std::size_t low = 0; low < stride; ++low) {
                const std::size_t i0 = base + low;
                const std::size_t i1 = i0 + stride;
                const Complex a0 = amplitudes_[i0];
                const Complex a1 = amplitudes_[i1];
                amplitudes_[i0] = u00 * a0 + u01 * a1;
                amplitudes_[i1] = u10 * a0 + u11 * a1;
            }
        }
    }

    void apply_rx(std::size_t q, double theta) {
        const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
        apply_single_qubit(q, {c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0});
    }

    void apply_ry(std::size_t q, double theta) {
        const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
        apply_single_qubit(q, {c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0});
    }

    void apply_rz(std::size_t q, double theta) {
        const Complex lo = std::polar(1.0, -theta / 2.0);
        const Complex hi = std::polar(1.0, theta / 2.0);
        apply_single_qubit(q, lo, {0.0, 0.0}, {0.0, 0.0}, hi);
    }

    void apply_cnot(std::size_t control, std::size_t target) {
        if (control == target) throw IndexOutOfRange("cnot control and target coincide");
        const std::size_t cmask = std::size_t{1} << bit_position(control);
        const std::size_t tmask = std::size_t{1} << bit_position(target);
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            // Swap each |...1_c...0_t...> with its |...1_c...1_t...> partner once.
            if ((i & cmask) != 0 && (i & tmask) == 0) std::swap(amplitudes_[i], amplitudes_[i | tmask]);
        }
    }

private:
    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// <Z_q> = sum_i |a_i|^2 * (+1 if bit q of i is 0 else -1); always in [-1, 1].
inline double pauli_z_expectation(const StateVector& psi, std::size_t q) {
    const std::size_t mask = std::size_t{1} << psi.bit_position(q);
    double acc = 0.0;
    const auto& amps = psi.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += ((i & mask) == 0) ? p : -p;
    }
    return acc;
}

}  // namespace hyqgnn::quantum
