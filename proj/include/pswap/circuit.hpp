// Circuit IR: an ordered list of gate instances on an n-qubit register,
// with simulation, unitary extraction, depth, counts, and composition.

#pragma once

#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "pswap/gates.hpp"
#include "pswap/linalg.hpp"

namespace pswap {

struct Circuit {
    int n_qubits = 0;
    std::vector<GateInstance> ops;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {
        if (n < 1) throw std::invalid_argument("circuit needs at least one qubit");
    }

    Circuit& add(GateKind kind, std::vector<int> qubits) {
        GateInstance g(kind, std::move(qubits));
        for (int q : g.qubits)
            if (q >= n_qubits) throw std::invalid_argument("qubit index out of register");
        ops.push_back(std::move(g));
        return *this;
    }

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

// Gates within a layer touch disjoint qubits; concatenating layers in order
// is a valid topological order of ops.
struct LayerSchedule {
    std::vector<std::vector<GateInstance>> layers;
};

/// Embeds a gate into the full 2^n register operator (little-endian:
/// local operand k of the gate lands on register qubit g.qubits[k]).
inline ComplexMatrix embed(const GateInstance& g, int n_qubits) {
    if (n_qubits > kMaxQubits) throw std::invalid_argument("register larger than 10 qubits");
    const ComplexMatrix local = matrix_of(g.kind);
    const std::size_t dim = std::size_t{1} << n_qubits;
    ComplexMatrix full(dim);
    const int k = arity(g.kind.op);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t local_col = 0;
        for (int b = 0; b < k; ++b)
            local_col |= ((col >> g.qubits[b]) & 1u) << b;
        std::size_t base = col;
        for (int b = 0; b < k; ++b) base &= ~(std::size_t{1} << g.qubits[b]);
        for (std::size_t local_row = 0; local_row < local.dim(); ++local_row) {
            const Complex v = local.at(local_row, local_col);
            if (v == Complex{}) continue;
            std::size_t row = base;
            for (int b = 0; b < k; ++b)
                row |= ((local_row >> b) & 1u) << g.qubits[b];
            full.at(row, col) = v;
        }
    }
    return full;
}

/// Product of embedded gate matrices in application order (later gates on
/// the left).
inline ComplexMatrix unitary_of(const Circuit& c) {
    if (c.n_qubits > kMaxQubits) throw std::invalid_argument("register larger than 10 qubits");
    ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << c.n_qubits);
    for (const GateInstance& g : c.ops) u = matmul(embed(g, c.n_qubits), u);
    return u;
}

/// In-place statevector update. This path never builds a register-sized
/// matrix, so it stays independent of unitary_of for cross-checks.
inline void apply_in_place(StateVector& s, const GateInstance& g) {
    const ComplexMatrix m = matrix_of(g.kind);
    if (arity(g.kind.op) == 1) {
        const std::size_t mask = std::size_t{1} << g.qubits[0];
        for (std::size_t i = 0; i < s.dim(); ++i) {
            if (i & mask) continue;
            const Complex a = s.amp(i), b = s.amp(i | mask);
            s.amp(i) = m.at(0, 0) * a + m.at(0, 1) * b;
            s.amp(i | mask) = m.at(1, 0) * a + m.at(1, 1) * b;
        }
    } else {
        const std::size_t m0 = std::size_t{1} << g.qubits[0];
        const std::size_t m1 = std::size_t{1} << g.qubits[1];
        for (std::size_t i = 0; i < s.dim(); ++i) {
            if (i & (m0 | m1)) continue;
            const std::size_t idx[4] = {i, i | m0, i | m1, i | m0 | m1};
            Complex v[4];
            for (int k = 0; k < 4; ++k) v[k] = s.amp(idx[k]);
            for (int r = 0; r < 4; ++r) {
                Complex acc = 0.0;
                for (int k = 0; k < 4; ++k) acc += m.at(r, k) * v[k];
                s.amp(idx[r]) = acc;
            }
        }
    }
}

/// Runs the circuit on a basis input given as a |q_{n-1}...q0> label.
inline StateVector simulate(const Circuit& c, std::string_view label) {
    if (static_cast<int>(label.size()) != c.n_qubits)
        throw std::invalid_argument("basis label length must equal register size");
    StateVector s = StateVector::from_label(label);
    for (const GateInstance& g : c.ops) apply_in_place(s, g);
    return s;
}

/// As-soon-as-possible layering; equals the longest path in the
/// qubit-dependency DAG.
inline LayerSchedule schedule(const Circuit& c) {
    LayerSchedule sched;
    std::vector<int> qubit_layer(static_cast<std::size_t>(c.n_qubits), 0);
    for (const GateInstance& g : c.ops) {
        int layer = 0;
        for (int q : g.qubits) layer = std::max(layer, qubit_layer[static_cast<std::size_t>(q)]);
        ++layer;
        for (int q : g.qubits) qubit_layer[static_cast<std::size_t>(q)] = layer;
        if (static_cast<int>(sched.layers.size()) < layer) sched.layers.resize(static_cast<std::size_t>(layer));
        sched.layers[static_cast<std::size_t>(layer - 1)].push_back(g);
    }
    return sched;
}

inline int depth(const Circuit& c) {
    std::vector<int> qubit_layer(static_cast<std::size_t>(c.n_qubits), 0);
    int d = 0;
    for (const GateInstance& g : c.ops) {
        int layer = 0;
        for (int q : g.qubits) layer = std::max(layer, qubit_layer[static_cast<std::size_t>(q)]);
        ++layer;
        for (int q : g.qubits) qubit_layer[static_cast<std::size_t>(q)] = layer;
        d = std::max(d, layer);
    }
    return d;
}

/// Multiset gate count; RZ instances with different angles aggregate under RZ.
inline std::map<GateOp, int> gate_counts(const Circuit& c) {
    std::map<GateOp, int> counts;
    for (const GateInstance& g : c.ops) ++counts[g.kind.op];
    return counts;
}

inline Circuit compose(const Circuit& a, const Circuit& b) {
    if (a.n_qubits != b.n_qubits) throw std::invalid_argument("compose: register mismatch");
    Circuit out = a;
    out.ops.insert(out.ops.end(), b.ops.begin(), b.ops.end());
    return out;
}

/// Reversed list of gate inverses, entrywise exact for every catalog kind.
/// SX and ISWAP expand (SX^dagger = SX*X, ISWAP^dagger = ISWAP*(Z x Z)).
inline Circuit inverse(const Circuit& c) {
    Circuit out(c.n_qubits);
    for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
        switch (it->kind.op) {
            case GateOp::SX:
                out.add(GateOp::X, it->qubits);
                out.add(GateOp::SX, it->qubits);
                break;
            case GateOp::ISWAP:
                out.add(GateOp::Z, {it->qubits[0]});
                out.add(GateOp::Z, {it->qubits[1]});
                out.add(GateOp::ISWAP, it->qubits);
                break;
            default:
                out.ops.push_back(inverse_of(*it));
        }
    }
    return out;
}

}  // namespace pswap
