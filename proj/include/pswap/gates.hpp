// Gate catalog: named gates, parameterized RZ, exact matrices, native-basis
// classification for the ECR-based IBM-style target, and inverses.
//
// Conventions fixed here and inherited by every other header:
//   - little-endian basis ordering |q1 q0> with index = 2*q1 + q0,
//   - for CX/ECR the first operand is the control / first target q0,
//   - RZ(theta) = diag(e^{-i theta/2}, e^{+i theta/2}),
//   - ECR = (1/sqrt2) (X_on_first - X_on_second * Y_on_first).

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pswap/linalg.hpp"

namespace pswap {

enum class GateOp : std::uint8_t {
    I, X, SX, Y, Z, H, S, Sdg, T, Tdg, RZ, CX, ECR, SWAP, ISWAP
};

struct GateKind {
    GateOp op = GateOp::I;
    double theta = 0.0;  // meaningful for RZ only, stored exactly as given

    GateKind() = default;
    GateKind(GateOp o) : op(o) {  // implicit: fixed kinds convert directly
        if (o == GateOp::RZ) throw std::invalid_argument("RZ requires an angle; use GateKind::rz");
    }

    static GateKind rz(double theta) {
        if (!std::isfinite(theta)) throw std::invalid_argument("RZ angle must be finite");
        GateKind k;
        k.op = GateOp::RZ;
        k.theta = theta;
        return k;
    }

    friend bool operator==(const GateKind&, const GateKind&) = default;
};

inline int arity(GateOp op) {
    switch (op) {
        case GateOp::CX:
        case GateOp::ECR:
        case GateOp::SWAP:
        case GateOp::ISWAP:
            return 2;
        default:
            return 1;
    }
}

/// Gate names as they appear in the QASM subset.
inline std::string_view qasm_name(GateOp op) {
    switch (op) {
        case GateOp::I: return "id";
        case GateOp::X: return "x";
        case GateOp::SX: return "sx";
        case GateOp::Y: return "y";
        case GateOp::Z: return "z";
        case GateOp::H: return "h";
        case GateOp::S: return "s";
        case GateOp::Sdg: return "sdg";
        case GateOp::T: return "t";
        case GateOp::Tdg: return "tdg";
        case GateOp::RZ: return "rz";
        case GateOp::CX: return "cx";
        case GateOp::ECR: return "ecr";
        case GateOp::SWAP: return "swap";
        case GateOp::ISWAP: return "iswap";
    }
    throw std::logic_error("unreachable gate op");
}

inline std::optional<GateOp> gate_from_name(std::string_view name) {
    static constexpr GateOp all[] = {
        GateOp::I, GateOp::X, GateOp::SX, GateOp::Y, GateOp::Z, GateOp::H,
        GateOp::S, GateOp::Sdg, GateOp::T, GateOp::Tdg, GateOp::RZ,
        GateOp::CX, GateOp::ECR, GateOp::SWAP, GateOp::ISWAP};
    for (GateOp op : all)
        if (qasm_name(op) == name) return op;
    return std::nullopt;
}

struct GateInstance {
    GateKind kind;
    std::vector<int> qubits;  // one entry for 1-bit kinds, two for 2-bit kinds

    GateInstance(GateKind k, std::vector<int> q) : kind(k), qubits(std::move(q)) {
        if (static_cast<int>(qubits.size()) != arity(kind.op))
            throw std::invalid_argument("gate arity mismatch");
        for (int i : qubits)
            if (i < 0) throw std::invalid_argument("negative qubit index");
        if (qubits.size() == 2 && qubits[0] == qubits[1])
            throw std::invalid_argument("qubit indices must be distinct");
    }

    friend bool operator==(const GateInstance&, const GateInstance&) = default;
};

/// Exact matrix of a catalog gate, in the conventions above.
inline ComplexMatrix matrix_of(const GateKind& kind) {
    const Complex i{0.0, 1.0};
    switch (kind.op) {
        case GateOp::I:
            return ComplexMatrix::identity(2);
        case GateOp::X:
            return ComplexMatrix::from_rows({{0, 1}, {1, 0}});
        case GateOp::SX:
            return ComplexMatrix::from_rows({{0.5 * (1.0 + i), 0.5 * (1.0 - i)},
                                             {0.5 * (1.0 - i), 0.5 * (1.0 + i)}});
        case GateOp::Y:
            return ComplexMatrix::from_rows({{0, -i}, {i, 0}});
        case GateOp::Z:
            return ComplexMatrix::from_rows({{1, 0}, {0, -1}});
        case GateOp::H: {
            const double s = 1.0 / std::sqrt(2.0);
            return ComplexMatrix::from_rows({{s, s}, {s, -s}});
        }
        case GateOp::S:
            return ComplexMatrix::from_rows({{1, 0}, {0, i}});
        case GateOp::Sdg:
            return ComplexMatrix::from_rows({{1, 0}, {0, -i}});
        case GateOp::T:
            return ComplexMatrix::from_rows({{1, 0}, {0, std::polar(1.0, kPi / 4)}});
        case GateOp::Tdg:
            return ComplexMatrix::from_rows({{1, 0}, {0, std::polar(1.0, -kPi / 4)}});
        case GateOp::RZ:
            return ComplexMatrix::from_rows({{std::polar(1.0, -kind.theta / 2), 0},
                                             {0, std::polar(1.0, kind.theta / 2)}});
        case GateOp::CX:
            // control = q0 (first operand): flips q1 when q0 = 1.
            return ComplexMatrix::from_rows({{1, 0, 0, 0},
                                             {0, 0, 0, 1},
                                             {0, 0, 1, 0},
                                             {0, 1, 0, 0}});
        case GateOp::ECR: {
            const double s = 1.0 / std::sqrt(2.0);
            return ComplexMatrix::from_rows({{0, s, 0, i * s},
                                             {s, 0, -i * s, 0},
                                             {0, i * s, 0, s},
                                             {-i * s, 0, s, 0}});
        }
        case GateOp::SWAP:
            return ComplexMatrix::from_rows({{1, 0, 0, 0},
                                             {0, 0, 1, 0},
                                             {0, 1, 0, 0},
                                             {0, 0, 0, 1}});
        case GateOp::ISWAP:
            return ComplexMatrix::from_rows({{1, 0, 0, 0},
                                             {0, 0, i, 0},
                                             {0, i, 0, 0},
                                             {0, 0, 0, 1}});
    }
    throw std::logic_error("unreachable gate op");
}

/// True exactly for the native set { I, X, SX, RZ(theta), ECR }.
inline bool is_native(const GateKind& kind) {
    switch (kind.op) {
        case GateOp::I:
        case GateOp::X:
        case GateOp::SX:
        case GateOp::RZ:
        case GateOp::ECR:
            return true;
        default:
            return false;
    }
}

// Single-gate inverse within the catalog. SX and ISWAP have no catalog kind
// whose matrix equals their dagger entrywise (SX^dagger = SX*X up to nothing,
// but that is two gates); Circuit-level inverse() expands them instead.
inline GateInstance inverse_of(const GateInstance& g) {
    switch (g.kind.op) {
        case GateOp::S: return GateInstance(GateOp::Sdg, g.qubits);
        case GateOp::Sdg: return GateInstance(GateOp::S, g.qubits);
        case GateOp::T: return GateInstance(GateOp::Tdg, g.qubits);
        case GateOp::Tdg: return GateInstance(GateOp::T, g.qubits);
        case GateOp::RZ: return GateInstance(GateKind::rz(-g.kind.theta), g.qubits);
        case GateOp::I:
        case GateOp::X:
        case GateOp::Y:
        case GateOp::Z:
        case GateOp::H:
        case GateOp::CX:
        case GateOp::ECR:
        case GateOp::SWAP:
            return g;  // self-inverse
        case GateOp::SX:
        case GateOp::ISWAP:
            throw std::domain_error("no single-gate catalog inverse; use Circuit inverse()");
    }
    throw std::logic_error("unreachable gate op");
}

}  // namespace pswap
