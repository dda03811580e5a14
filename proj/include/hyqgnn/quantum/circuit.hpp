#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "hyqgnn/gnn/genconv.hpp"
#include "hyqgnn/quantum/statevector.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::quantum {

inline constexpr std::size_t kDefaultAnsatzLayers = 2;
inline constexpr double kMinEncodeNorm = 1e-12;

// ---------------------------------------------------------------------------
// Amplitude encoding (data loading).
// ---------------------------------------------------------------------------

/// Loads a real vector as the state's amplitudes: pad with zeros to 2^n,
/// divide by the L2 norm. Index i of x maps to basis state |i> (big-endian).
inline StateVector amplitude_encode(const std::vector<double>& x, std::size_t num_qubits = kDefaultQubits) {
    StateVector psi(num_qubits);
    if (x.size() > psi.dim()) {
        throw TooLong("cannot encode " + std::to_string(x.size()) + " values into " +
                      std::to_string(psi.dim()) + " amplitudes");
    }
    double norm_sq = 0.0;
    for (double v : x) norm_sq += v * v;
    const double norm = std::sqrt(norm_sq);
    if (!(norm >= kMinEncodeNorm)) {
        throw ZeroVector("input norm " + std::to_string(norm) + " below encodable threshold");
    }
    auto& amps = psi.amplitudes();
    amps.assign(psi.dim(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < x.size(); ++i) amps[i] = Complex{x[i] / norm, 0.0};
    return psi;
}

// ---------------------------------------------------------------------------
// Trainable parameter block.
//
// Flat layout for L layers and n qubits:
//   ansatz thetas, layer-major:  L*n values  (layer 0 qubit 0..n-1, ...)
//   readout angles, qubit-major: 3n values   (qubit q: RX, RY, RZ)
//   scale, offset:               2 values
// Total: L*n + 3n + 2.
// ---------------------------------------------------------------------------

struct QuantumParams {
    std::size_t num_qubits = kDefaultQubits;
    std::size_t layers = kDefaultAnsatzLayers;
    std::vector<double> ansatz_thetas;           // layers * num_qubits
    std::vector<std::array<double, 3>> readout;  // per qubit: RX, RY, RZ angle
    double scale = 0.0;
    double offset = 0.0;

    static std::size_t flat_size(std::size_t layers, std::size_t num_qubits) {
        return layers * num_qubits + 3 * num_qubits + 2;
    }

    static QuantumParams from_flat(const std::vector<double>& flat, std::size_t layers = kDefaultAnsatzLayers,
                                   std::size_t num_qubits = kDefaultQubits) {
        if (flat.size() != flat_size(layers, num_qubits)) {
            throw LayoutMismatch("flat vector holds " + std::to_string(flat.size()) + " values, expected " +
                                 std::to_string(flat_size(layers, num_qubits)));
        }
        QuantumParams qp;
        qp.num_qubits = num_qubits;
        qp.layers = layers;
        qp.ansatz_thetas.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(layers * num_qubits));
        qp.readout.resize(num_qubits);
        std::size_t at = layers * num_qubits;
        for (std::size_t q = 0; q < num_qubits; ++q) {
            qp.readout[q] = {flat[at], flat[at + 1], flat[at + 2]};
            at += 3;
        }
        qp.scale = flat[at++];
        qp.offset = flat[at++];
        return qp;
    }

    std::vector<double> to_flat() const {
        std::vector<double> flat;
        flat.reserve(flat_size(layers, num_qubits));
        flat.insert(flat.end(), ansatz_thetas.begin(), ansatz_thetas.end());
        for (const auto& triple : readout) flat.insert(flat.end(), triple.begin(), triple.end());
        flat.push_back(scale);
        flat.push_back(offset);
        return flat;
    }
};

inline std::string quantum_layout_manifest(std::size_t layers = kDefaultAnsatzLayers,
                                           std::size_t num_qubits = kDefaultQubits) {
    std::ostringstream out;
    out << "# quantum parameter layout, layers=" << layers << " qubits=" << num_qubits << "\n";
    out << "# name offset length\n";
    out << "ansatz_thetas 0 " << layers * num_qubits << "\n";
    out << "readout_angles " << layers * num_qubits << " " << 3 * num_qubits << "\n";
    out << "scale " << layers * num_qubits + 3 * num_qubits << " 1\n";
    out << "offset " << layers * num_qubits + 3 * num_qubits + 1 << " 1\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Circuit stages.
// ---------------------------------------------------------------------------

/// Per layer: RY(theta) on every qubit, then a CNOT ring q -> (q+1) mod n.
/// A single qubit has no entangler.
inline void apply_ansatz(StateVector& psi, const std::vector<double>& thetas) {
    const std::size_t n = psi.num_qubits();
    if (thetas.size() % n != 0) {
        throw LayoutMismatch("ansatz angle count " + std::to_string(thetas.size()) +
                             " is not a multiple of qubit count " + std::to_string(n));
    }
    const std::size_t layers = thetas.size() / n;
    for (std::size_t layer = 0; layer < layers; ++layer) {
        for (std::size_t q = 0; q < n; ++q) psi.apply_ry(q, thetas[layer * n + q]);
        if (n > 1) {
            for (std::size_t q = 0; q < n; ++q) psi.apply_cnot(q, (q + 1) % n);
        }
    }
}

/// Per qubit applies RX(a)·RY(b)·RZ(c) — RZ acts first — with the stored
/// (RX, RY, RZ) angle triple. Learns which observable the Z readout measures.
inline void apply_readout(StateVector& psi, const std::vector<std::array<double, 3>>& angles) {
    if (angles.size() != psi.num_qubits()) {
        throw LayoutMismatch("readout angle rows " + std::to_string(angles.size()) + " != qubit count " +
                             std::to_string(psi.num_qubits()));
    }
    for (std::size_t q = 0; q < psi.num_qubits(); ++q) {
        psi.apply_rz(q, angles[q][2]);
        psi.apply_ry(q, angles[q][1]);
        psi.apply_rx(q, angles[q][0]);
    }
}

/// Mean single-qubit Z expectation; always in [-1, 1].
inline double mean_z_expectation(const StateVector& psi) {
    double acc = 0.0;
    for (std::size_t q = 0; q < psi.num_qubits(); ++q) acc += pauli_z_expectation(psi, q);
    return acc / static_cast<double>(psi.num_qubits());
}

/// Full pipeline: unroll W row-major (25 values) -> amplitude encode ->
/// ansatz -> readout -> mean <Z_q> -> scale*mean + offset (eV).
inline double circuit_predict(const gnn::WeightMatrix& w, const QuantumParams& qp) {
    const auto flat = gnn::unroll_weight_matrix(w);
    StateVector psi = amplitude_encode(std::vector<double>(flat.begin(), flat.end()), qp.num_qubits);
    apply_ansatz(psi, qp.ansatz_thetas);
    apply_readout(psi, qp.readout);
    return qp.scale * mean_z_expectation(psi) + qp.offset;
}

// ---------------------------------------------------------------------------
// Diagnostic gate dump.
// ---------------------------------------------------------------------------

struct GateOp {
    std::string name;        // "ry", "rx", "rz", "cnot"
    std::size_t qubit = 0;   // target (single-qubit) or control (cnot)
    std::size_t qubit2 = 0;  // cnot target; unused otherwise
    double angle = 0.0;      // rotation angle; unused for cnot
};

/// Gate list of the trainable portion of the circuit, in application order.
inline std::vector<GateOp> circuit_gate_list(const QuantumParams& qp) {
    std::vector<GateOp> gates;
    const std::size_t n = qp.num_qubits;
    for (std::size_t layer = 0; layer < qp.layers; ++layer) {
        for (std::size_t q = 0; q < n; ++q) gates.push_back({"ry", q, 0, qp.ansatz_thetas[layer * n + q]});
        if (n > 1) {
            for (std::size_t q = 0; q < n; ++q) gates.push_back({"cnot", q, (q + 1) % n, 0.0});
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        gates.push_back({"rz", q, 0, qp.readout[q][2]});
        gates.push_back({"ry", q, 0, qp.readout[q][1]});
        gates.push_back({"rx", q, 0, qp.readout[q][0]});
    }
    return gates;
}

inline std::string render_gate_list(const std::vector<GateOp>& gates) {
    std::ostringstream out;
    out << "# gate qubit(s) angle\n";
    for (const auto& g : gates) {
        if (g.name == "cnot") {
            out << "cnot " << g.qubit << " " << g.qubit2 << "\n";
        } else {
            out << g.name << " " << g.qubit << " " << g.angle << "\n";
        }
    }
    return out.str();
}

}  // namespace hyqgnn::quantum
