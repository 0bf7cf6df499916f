// Shared helpers for the unit and acceptance suites: matrix comparators and
// seeded random circuit generators over the gate catalog.

#pragma once

#include <random>
#include <vector>

#include "pswap/circuit.hpp"
#include "pswap/synth.hpp"

namespace testsupport {

using namespace pswap;

inline bool matrices_close(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-12) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

inline std::vector<int> pick_distinct_pair(std::mt19937& rng, int n_qubits) {
    std::uniform_int_distribution<int> d(0, n_qubits - 1);
    const int a = d(rng);
    int b = d(rng);
    while (b == a) b = d(rng);
    return {a, b};
}

inline double random_angle(std::mt19937& rng) {
    // half arbitrary reals, half exact multiples of pi (exercises the
    // symbolic angle printer)
    if (std::uniform_int_distribution<int>(0, 1)(rng)) {
        return std::uniform_real_distribution<double>(-kPi, kPi)(rng);
    }
    const int k = std::uniform_int_distribution<int>(-8, 8)(rng);
    static const int dens[] = {1, 2, 3, 4, 6, 8, 16};
    const int d = dens[std::uniform_int_distribution<int>(0, 6)(rng)];
    return k * kPi / d;
}

inline Circuit random_circuit(std::mt19937& rng, int n_qubits, int length) {
    static const GateOp kinds[] = {GateOp::I,   GateOp::X,  GateOp::SX,  GateOp::Y,
                                   GateOp::Z,   GateOp::H,  GateOp::S,   GateOp::Sdg,
                                   GateOp::T,   GateOp::Tdg, GateOp::RZ, GateOp::CX,
                                   GateOp::ECR, GateOp::SWAP, GateOp::ISWAP};
    Circuit c(n_qubits);
    // 2-qubit kinds need at least two wires
    std::uniform_int_distribution<int> pick(0, n_qubits >= 2 ? 14 : 10);
    std::uniform_int_distribution<int> qubit(0, n_qubits - 1);
    for (int i = 0; i < length; ++i) {
        const GateOp op = kinds[pick(rng)];
        GateKind kind = op == GateOp::RZ ? GateKind::rz(random_angle(rng)) : GateKind(op);
        if (arity(op) == 1)
            c.add(kind, {qubit(rng)});
        else
            c.add(kind, pick_distinct_pair(rng, n_qubits));
    }
    return c;
}

inline Circuit random_native_circuit(std::mt19937& rng, int n_qubits, int length) {
    static const GateOp kinds[] = {GateOp::X, GateOp::SX, GateOp::RZ, GateOp::ECR};
    Circuit c(n_qubits);
    std::uniform_int_distribution<int> pick(0, n_qubits >= 2 ? 3 : 2);
    std::uniform_int_distribution<int> qubit(0, n_qubits - 1);
    for (int i = 0; i < length; ++i) {
        const GateOp op = kinds[pick(rng)];
        GateKind kind = op == GateOp::RZ ? GateKind::rz(random_angle(rng)) : GateKind(op);
        if (arity(op) == 1)
            c.add(kind, {qubit(rng)});
        else
            c.add(kind, pick_distinct_pair(rng, n_qubits));
    }
    return c;
}

// Random swap circuit dressed with diagonal gates: always a phased
// permutation whose permutation part is the swap.
inline Circuit random_diagonal_dressed_swap(std::mt19937& rng) {
    static const GateOp diag[] = {GateOp::Z, GateOp::S, GateOp::Sdg, GateOp::T, GateOp::Tdg,
                                  GateOp::RZ};
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<int> count(0, 2);
    std::uniform_int_distribution<int> core(0, 2);
    Circuit c(2);
    auto dress = [&]() {
        for (int q = 0; q < 2; ++q) {
            const int reps = count(rng);
            for (int i = 0; i < reps; ++i) {
                const GateOp op = diag[pick(rng)];
                c.add(op == GateOp::RZ ? GateKind::rz(random_angle(rng)) : GateKind(op), {q});
            }
        }
    };
    dress();
    const Circuit cores[] = {standard_swap(), pswap_core(), iswap()};
    for (const GateInstance& g : cores[core(rng)].ops) c.ops.push_back(g);
    dress();
    return c;
}

}  // namespace testsupport
