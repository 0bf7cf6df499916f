// Swap-gate synthesis: standard SWAP, iSWAP, the two-CNOT p-SWAP core, and
// phase-customized p-SWAP circuits built from RZ cofactor gates; plus the
// analyzer that extracts a unitary's phased-permutation semantics and
// certifies the relative phase p on a declared set of transitions.

#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pswap/circuit.hpp"

namespace pswap {

struct NotPhasedPermutation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InconsistentPhases : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// nu = RZ(nu_sign * a * pi / b) on q0, omega = RZ(omega_sign * c * pi / d)
// on q1. a or c equal to zero models an absent gate.
struct Cofactors {
    int nu_sign = 1;
    int a = 0;
    int b = 1;
    int omega_sign = 1;
    int c = 0;
    int d = 1;
};

struct CofactorAngles {
    double nu = 0.0;     // wrapped to (-pi, pi]
    double omega = 0.0;  // wrapped to (-pi, pi]
    bool wrapped = false;
};

inline CofactorAngles cofactor_angles(const Cofactors& cf) {
    if ((cf.nu_sign != 1 && cf.nu_sign != -1) || (cf.omega_sign != 1 && cf.omega_sign != -1))
        throw std::invalid_argument("cofactor signs must be +1 or -1");
    if (cf.a < 0 || cf.c < 0) throw std::invalid_argument("cofactors A and C must be >= 0");
    if (cf.b < 1 || cf.d < 1) throw std::invalid_argument("cofactors B and D must be >= 1");
    const double nu_raw = cf.nu_sign * cf.a * kPi / cf.b;
    const double omega_raw = cf.omega_sign * cf.c * kPi / cf.d;
    CofactorAngles out;
    out.nu = wrap_angle(nu_raw);
    out.omega = wrap_angle(omega_raw);
    out.wrapped = std::abs(out.nu - nu_raw) > 1e-12 || std::abs(out.omega - omega_raw) > 1e-12;
    return out;
}

// One row of the six-concept table: which transitions carry the phase p,
// which RZ angles realize it, and the expected p.
struct SwapConcept {
    int id = 0;
    std::vector<std::string> effected;  // input labels |q1 q0>
    std::optional<double> nu_angle;
    std::optional<double> omega_angle;
    double expected_p = 0.0;
};

inline SwapConcept swap_concept(int id) {
    switch (id) {
        case 1: return {1, {"01", "10"}, kPi / 2, kPi / 2, kPi / 2};
        case 2: return {2, {"00", "11"}, -kPi / 2, -kPi / 2, kPi / 2};
        case 3: return {3, {"00"}, kPi, kPi, kPi};
        case 4: return {4, {"01"}, kPi, std::nullopt, kPi};
        case 5: return {5, {"10"}, std::nullopt, kPi, kPi};
        case 6: return {6, {"11"}, std::nullopt, std::nullopt, kPi};
        default: throw std::invalid_argument("concept id must be in 1..6");
    }
}

/// Three CNOTs: [CX(q0->q1), CX(q1->q0), CX(q0->q1)].
inline Circuit standard_swap() {
    Circuit c(2);
    c.add(GateOp::CX, {0, 1}).add(GateOp::CX, {1, 0}).add(GateOp::CX, {0, 1});
    return c;
}

/// Reference two-CNOT decomposition [S, S, H, CX(q0->q1), CX(q1->q0), H].
inline Circuit iswap() {
    Circuit c(2);
    c.add(GateOp::S, {0}).add(GateOp::S, {1});
    c.add(GateOp::H, {0}).add(GateOp::CX, {0, 1}).add(GateOp::CX, {1, 0}).add(GateOp::H, {1});
    return c;
}

/// The bare two-CNOT swap core [H, CX(q0->q1), CX(q1->q0), H].
inline Circuit pswap_core() {
    Circuit c(2);
    c.add(GateOp::H, {0}).add(GateOp::CX, {0, 1}).add(GateOp::CX, {1, 0}).add(GateOp::H, {1});
    return c;
}

/// Core preceded by the diagonal phase gates; an RZ whose wrapped angle is
/// zero is omitted, so both-zero cofactors reproduce pswap_core exactly.
inline Circuit pswap_from_cofactors(const Cofactors& cf) {
    const CofactorAngles angles = cofactor_angles(cf);
    Circuit c(2);
    if (angles.nu != 0.0) c.add(GateKind::rz(angles.nu), {0});
    if (angles.omega != 0.0) c.add(GateKind::rz(angles.omega), {1});
    c.add(GateOp::H, {0}).add(GateOp::CX, {0, 1}).add(GateOp::CX, {1, 0}).add(GateOp::H, {1});
    return c;
}

struct ConceptCircuit {
    Circuit circuit;
    SwapConcept row;
};

inline ConceptCircuit pswap_from_concept(int id) {
    const SwapConcept k = swap_concept(id);
    Circuit c(2);
    if (k.nu_angle) c.add(GateKind::rz(*k.nu_angle), {0});
    if (k.omega_angle) c.add(GateKind::rz(*k.omega_angle), {1});
    c.add(GateOp::H, {0}).add(GateOp::CX, {0, 1}).add(GateOp::CX, {1, 0}).add(GateOp::H, {1});
    return {std::move(c), k};
}

// A permutation of basis states plus a unit phase per input state; the
// semantic summary of any swap-like unitary. Phases are the raw column
// arguments; reference_phase records what has been subtracted from them.
struct PhasedPermutation {
    std::vector<std::size_t> perm;  // input index -> output index
    std::vector<double> phases;     // arg of the single large entry, per input
    double tol = kDefaultTol;
    double reference_phase = 0.0;

    PhasedPermutation relative_to(std::size_t input_index) const {
        PhasedPermutation out = *this;
        const double ref = phases.at(input_index);
        for (double& p : out.phases) p = wrap_angle(p - ref);
        out.reference_phase = wrap_angle(reference_phase + ref);
        return out;
    }
};

/// Requires every column to hold exactly one entry of modulus ~1; throws
/// NotPhasedPermutation otherwise (e.g. for a circuit cut mid-way through
/// the H/CX core).
inline PhasedPermutation extract_phased_permutation(const ComplexMatrix& u,
                                                    double tol = kDefaultTol) {
    if (!is_unitary(u, tol))
        throw NotPhasedPermutation("matrix is not unitary within tolerance");
    const std::size_t n = u.dim();
    PhasedPermutation pp;
    pp.tol = tol;
    pp.perm.assign(n, 0);
    pp.phases.assign(n, 0.0);
    std::vector<bool> row_used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t hit = n;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::abs(u.at(i, j));
            if (mag >= 1.0 - tol) {
                if (hit != n)
                    throw NotPhasedPermutation("column has multiple large entries");
                hit = i;
            } else if (mag > tol) {
                throw NotPhasedPermutation("column has an intermediate-magnitude entry");
            }
        }
        if (hit == n) throw NotPhasedPermutation("column has no unit-magnitude entry");
        if (row_used[hit]) throw NotPhasedPermutation("row reused; not a permutation");
        row_used[hit] = true;
        pp.perm[j] = hit;
        pp.phases[j] = std::arg(u.at(hit, j));
    }
    return pp;
}

/// Independent statevector route to the same summary: runs every basis
/// input through the circuit gate by gate, never forming the unitary.
inline PhasedPermutation phased_permutation_from_simulation(const Circuit& c,
                                                            double tol = kDefaultTol) {
    const std::size_t n = std::size_t{1} << c.n_qubits;
    PhasedPermutation pp;
    pp.tol = tol;
    pp.perm.assign(n, 0);
    pp.phases.assign(n, 0.0);
    std::vector<bool> row_used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        const StateVector out = simulate(c, index_to_label(j, c.n_qubits));
        std::size_t hit = n;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::abs(out.amp(i));
            if (mag >= 1.0 - tol) {
                if (hit != n)
                    throw NotPhasedPermutation("output has multiple large amplitudes");
                hit = i;
            } else if (mag > tol) {
                throw NotPhasedPermutation("output has an intermediate-magnitude amplitude");
            }
        }
        if (hit == n) throw NotPhasedPermutation("output is not a basis state");
        if (row_used[hit]) throw NotPhasedPermutation("state reused; not a permutation");
        row_used[hit] = true;
        pp.perm[j] = hit;
        pp.phases[j] = std::arg(out.amp(hit));
    }
    return pp;
}

/// Relative phase p between the effected transitions and the complement
/// ("uneffected") reference. Both sets must carry internally uniform
/// phases, else InconsistentPhases. If effected covers every input, the
/// phase of input 0 serves as the reference.
inline double relative_phase(const PhasedPermutation& pp,
                             const std::vector<std::size_t>& effected) {
    const std::size_t n = pp.perm.size();
    if (effected.empty()) throw std::invalid_argument("effected set must be nonempty");
    std::set<std::size_t> eff(effected.begin(), effected.end());
    for (std::size_t i : eff)
        if (i >= n) throw std::invalid_argument("effected index out of range");

    auto uniform_phase = [&](const std::vector<std::size_t>& members, const char* which) {
        const double first = pp.phases[members.front()];
        for (std::size_t m : members)
            if (!angles_close(pp.phases[m], first, pp.tol))
                throw InconsistentPhases(std::string(which) + " set carries non-uniform phases");
        return first;
    };

    std::vector<std::size_t> eff_v(eff.begin(), eff.end());
    std::vector<std::size_t> comp_v;
    for (std::size_t i = 0; i < n; ++i)
        if (!eff.count(i)) comp_v.push_back(i);

    const double phi_eff = uniform_phase(eff_v, "effected");
    const double phi_ref = comp_v.empty() ? pp.phases[0] : uniform_phase(comp_v, "complement");
    return wrap_angle(phi_eff - phi_ref);
}

inline double relative_phase(const PhasedPermutation& pp,
                             const std::vector<std::string>& effected_labels) {
    std::vector<std::size_t> idx;
    idx.reserve(effected_labels.size());
    for (const std::string& l : effected_labels) idx.push_back(label_to_index(l));
    return relative_phase(pp, idx);
}

/// True iff the permutation part is the two-qubit swap, phases disregarded.
inline bool is_boolean_swap(const PhasedPermutation& pp) {
    if (pp.perm.size() != 4) throw std::invalid_argument("expected a 2-qubit analysis");
    return pp.perm[0] == 0 && pp.perm[1] == 2 && pp.perm[2] == 1 && pp.perm[3] == 3;
}

}  // namespace pswap
