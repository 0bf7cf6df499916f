// Lowering to the native basis {X, SX, RZ(theta), ECR}, a phase-exact
// peephole optimizer, and the N1/N2/D/TQC cost metrics with comparison
// reports.

#pragma once

#include <array>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pswap/circuit.hpp"
#include "pswap/synth.hpp"

namespace pswap {

struct SearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonNativeGate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Replacement's unitary equals the pattern's times e^{i*global_phase_delta};
// template qubits are local operand slots (0 = first operand).
struct RewriteRule {
    GateOp pattern;
    std::vector<GateInstance> replacement;
    double global_phase_delta = 0.0;
};

namespace detail {

// Generator encoding for the CX -> ECR search. Code 0 is RZ(0), which only
// ever contributes the identity and is represented by the empty sequence.
inline GateKind generator_kind(int code) {
    switch (code) {
        case 1: return GateKind::rz(kPi / 2);
        case 2: return GateKind::rz(-kPi / 2);
        case 3: return GateKind::rz(kPi);
        case 4: return GateOp::SX;
        case 5: return GateOp::X;
        default: throw std::logic_error("bad generator code");
    }
}

struct LocalSeq {
    std::vector<int> codes;  // generator codes, application order
    ComplexMatrix m;         // product, later generators on the left
};

// Canonical fingerprint of a 2x2 unitary up to global phase.
inline std::array<long long, 8> phase_class_key(const ComplexMatrix& m) {
    Complex scale{1.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
        const Complex v = m.at(i / 2, i % 2);
        if (std::abs(v) > 0.4) {
            scale = v / std::abs(v);
            break;
        }
    }
    std::array<long long, 8> key{};
    for (std::size_t i = 0; i < 4; ++i) {
        const Complex v = m.at(i / 2, i % 2) / scale;
        key[2 * i] = std::llround(v.real() * 1e9);
        key[2 * i + 1] = std::llround(v.imag() * 1e9);
    }
    return key;
}

// Representatives of every distinct (up to phase) single-qubit operator
// reachable with at most three generators, in (length, lexicographic) order
// of the generator encoding; the first sequence reaching a class wins.
inline std::vector<LocalSeq> local_operator_classes() {
    std::vector<LocalSeq> reps;
    std::map<std::array<long long, 8>, bool> seen;
    std::vector<LocalSeq> frontier{{{}, ComplexMatrix::identity(2)}};
    seen[phase_class_key(frontier[0].m)] = true;
    reps.push_back(frontier[0]);
    for (int len = 1; len <= 3; ++len) {
        std::vector<LocalSeq> next;
        for (const LocalSeq& prev : frontier) {
            for (int code = 1; code <= 5; ++code) {
                LocalSeq cur{prev.codes, matmul(matrix_of(generator_kind(code)), prev.m)};
                cur.codes.push_back(code);
                next.push_back(cur);
            }
        }
        // frontier enumeration is already lexicographic per length because
        // shorter prefixes were generated in order
        for (const LocalSeq& cand : next) {
            auto key = phase_class_key(cand.m);
            if (!seen.count(key)) {
                seen[key] = true;
                reps.push_back(cand);
            }
        }
        frontier = std::move(next);
    }
    return reps;
}

inline bool equals_cx_up_to_phase(const ComplexMatrix& u, double tol) {
    // CX has its first nonzero at (0,0); read the phase there.
    const Complex phase = u.at(0, 0);
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    static const ComplexMatrix cx = matrix_of(GateOp::CX);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (std::abs(u.at(r, c) - phase * cx.at(r, c)) > tol) return false;
    return true;
}

inline void append_generators(std::vector<GateInstance>& out, const std::vector<int>& codes,
                              int local_qubit) {
    for (int code : codes) out.emplace_back(generator_kind(code), std::vector<int>{local_qubit});
}

}  // namespace detail

/// Bounded exhaustive search for CX = (L1 x L0) * ECR * (R1 x R0) up to
/// global phase, each local factor a product of at most three generators
/// from {RZ(k*pi/2), SX, X}. Ties break on fewest total gates, then
/// lexicographically over the (L1, L0, R1, R0) generator encoding.
inline RewriteRule derive_cx_to_ecr() {
    const std::vector<detail::LocalSeq> reps = detail::local_operator_classes();
    const ComplexMatrix ecr = matrix_of(GateOp::ECR);

    struct Pair {
        const detail::LocalSeq* hi;  // acts on local q1 (second operand)
        const detail::LocalSeq* lo;  // acts on local q0 (first operand)
        ComplexMatrix m;
    };
    std::vector<Pair> left, right;
    for (const auto& hi : reps)
        for (const auto& lo : reps) {
            ComplexMatrix k = kron(hi.m, lo.m);
            left.push_back({&hi, &lo, matmul(k, ecr)});
            right.push_back({&hi, &lo, std::move(k)});
        }

    using Key = std::tuple<int, std::vector<int>, std::vector<int>, std::vector<int>,
                           std::vector<int>>;
    bool found = false;
    Key best;
    for (const Pair& l : left) {
        for (const Pair& r : right) {
            const ComplexMatrix u = matmul(l.m, r.m);
            if (!detail::equals_cx_up_to_phase(u, kDefaultTol)) continue;
            const int total = static_cast<int>(l.hi->codes.size() + l.lo->codes.size() +
                                               r.hi->codes.size() + r.lo->codes.size());
            Key key{total, l.hi->codes, l.lo->codes, r.hi->codes, r.lo->codes};
            if (!found || key < best) {
                found = true;
                best = std::move(key);
            }
        }
    }
    if (!found)
        throw SearchExhausted("no single-ECR decomposition of CX within the generator bounds");

    const auto& [total, l1, l0, r1, r0] = best;
    RewriteRule rule;
    rule.pattern = GateOp::CX;
    detail::append_generators(rule.replacement, r0, 0);
    detail::append_generators(rule.replacement, r1, 1);
    rule.replacement.emplace_back(GateOp::ECR, std::vector<int>{0, 1});
    detail::append_generators(rule.replacement, l0, 0);
    detail::append_generators(rule.replacement, l1, 1);

    Circuit repl(2);
    for (const GateInstance& g : rule.replacement) repl.ops.push_back(g);
    const auto phi = equal_up_to_global_phase(unitary_of(repl), matrix_of(GateOp::CX), kDefaultTol);
    if (!phi) throw std::logic_error("derived CX rule failed matrix validation");
    rule.global_phase_delta = *phi;
    return rule;
}

namespace detail {

inline GateKind rz(double theta) { return GateKind::rz(theta); }

inline RewriteRule make_rule(GateOp pattern, std::vector<GateInstance> replacement, double delta) {
    RewriteRule rule{pattern, std::move(replacement), delta};
    Circuit repl(arity(pattern));
    for (const GateInstance& g : rule.replacement) repl.ops.push_back(g);
    ComplexMatrix expected = matrix_of(pattern);
    const Complex f = std::polar(1.0, delta);
    for (std::size_t r = 0; r < expected.dim(); ++r)
        for (std::size_t c = 0; c < expected.dim(); ++c)
            expected.at(r, c) *= f;
    if (max_abs_diff(unitary_of(repl), expected) > kDefaultTol)
        throw std::logic_error("rewrite rule failed registration check");
    return rule;
}

inline std::map<GateOp, RewriteRule> build_rewrite_rules() {
    std::map<GateOp, RewriteRule> rules;
    auto reg = [&](RewriteRule r) { rules.emplace(r.pattern, std::move(r)); };

    reg(make_rule(GateOp::H,
                  {{rz(kPi / 2), {0}}, {GateOp::SX, {0}}, {rz(kPi / 2), {0}}}, -kPi / 4));
    reg(make_rule(GateOp::S, {{rz(kPi / 2), {0}}}, -kPi / 4));
    reg(make_rule(GateOp::Sdg, {{rz(-kPi / 2), {0}}}, kPi / 4));
    reg(make_rule(GateOp::Z, {{rz(kPi), {0}}}, -kPi / 2));
    reg(make_rule(GateOp::T, {{rz(kPi / 4), {0}}}, -kPi / 8));
    reg(make_rule(GateOp::Tdg, {{rz(-kPi / 4), {0}}}, kPi / 8));
    reg(make_rule(GateOp::Y, {{rz(kPi), {0}}, {GateOp::X, {0}}}, kPi));
    reg(make_rule(GateOp::SWAP,
                  {{GateOp::CX, {0, 1}}, {GateOp::CX, {1, 0}}, {GateOp::CX, {0, 1}}}, 0.0));
    reg(make_rule(GateOp::ISWAP,
                  {{GateOp::S, {0}},
                   {GateOp::S, {1}},
                   {GateOp::H, {0}},
                   {GateOp::CX, {0, 1}},
                   {GateOp::CX, {1, 0}},
                   {GateOp::H, {1}}},
                  0.0));
    const RewriteRule cx = derive_cx_to_ecr();
    reg(make_rule(cx.pattern, cx.replacement, cx.global_phase_delta));
    return rules;
}

inline const std::map<GateOp, RewriteRule>& rewrite_rules() {
    static const std::map<GateOp, RewriteRule> rules = build_rewrite_rules();
    return rules;
}

inline GateInstance instantiate(const GateInstance& tmpl, const std::vector<int>& qubits) {
    std::vector<int> mapped;
    mapped.reserve(tmpl.qubits.size());
    for (int slot : tmpl.qubits) mapped.push_back(qubits.at(static_cast<std::size_t>(slot)));
    return GateInstance(tmpl.kind, std::move(mapped));
}

inline void lower_into(const GateInstance& g, Circuit& out, double& phase) {
    if (is_native(g.kind)) {
        out.ops.push_back(g);
        return;
    }
    const auto& rules = rewrite_rules();
    const auto it = rules.find(g.kind.op);
    if (it == rules.end()) throw std::invalid_argument("unknown gate kind in decomposition");
    phase += it->second.global_phase_delta;
    for (const GateInstance& tmpl : it->second.replacement)
        lower_into(instantiate(tmpl, g.qubits), out, phase);
}

}  // namespace detail

/// The cached CX -> ECR rule (the bootstrap search runs once).
inline const RewriteRule& cx_to_ecr_rule() {
    return detail::rewrite_rules().at(GateOp::CX);
}

struct NativeCircuit {
    Circuit circuit;
    double global_phase = 0.0;  // output unitary = input unitary * e^{i*phase}
};

inline NativeCircuit decompose_to_native(const Circuit& c) {
    NativeCircuit out;
    out.circuit = Circuit(c.n_qubits);
    double phase = 0.0;
    for (const GateInstance& g : c.ops) detail::lower_into(g, out.circuit, phase);
    out.global_phase = wrap_angle(phase);
    return out;
}

namespace detail {

// RZ(theta) repeats with period 4*pi exactly (RZ(theta + 2*pi) = -RZ(theta)),
// so identity elimination must be modulo 4*pi to keep rewrites phase-exact.
inline double canonical_rz_angle(double theta) {
    return std::remainder(theta, 4.0 * kPi);
}

}  // namespace detail

/// Fixed-point application of phase-exact rules: adjacent same-qubit RZ
/// merge, exact-identity RZ removal, X*X -> (), SX*SX -> X. Gates are
/// adjacent when no intervening gate touches the qubit.
inline Circuit peephole_optimize(const Circuit& c) {
    std::vector<GateInstance> ops = c.ops;
    std::vector<bool> dead;
    bool changed = true;
    while (changed) {
        changed = false;
        dead.assign(ops.size(), false);
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (dead[i]) continue;
            if (ops[i].kind.op == GateOp::RZ &&
                std::abs(detail::canonical_rz_angle(ops[i].kind.theta)) <= 1e-12) {
                dead[i] = true;
                changed = true;
                continue;
            }
            if (arity(ops[i].kind.op) != 1) continue;
            const int q = ops[i].qubits[0];
            std::size_t j = i + 1;
            for (; j < ops.size(); ++j) {
                if (dead[j]) continue;
                bool touches = false;
                for (int x : ops[j].qubits) touches |= (x == q);
                if (touches) break;
            }
            if (j >= ops.size() || arity(ops[j].kind.op) != 1) continue;
            const GateOp a = ops[i].kind.op, b = ops[j].kind.op;
            if (a == GateOp::RZ && b == GateOp::RZ) {
                const double merged =
                    detail::canonical_rz_angle(ops[i].kind.theta + ops[j].kind.theta);
                dead[i] = true;
                if (std::abs(merged) <= 1e-12)
                    dead[j] = true;
                else
                    ops[j] = GateInstance(GateKind::rz(merged), ops[j].qubits);
                changed = true;
            } else if (a == GateOp::X && b == GateOp::X) {
                dead[i] = dead[j] = true;
                changed = true;
            } else if (a == GateOp::SX && b == GateOp::SX) {
                dead[i] = true;
                ops[j] = GateInstance(GateOp::X, ops[j].qubits);
                changed = true;
            }
        }
        std::vector<GateInstance> kept;
        kept.reserve(ops.size());
        for (std::size_t i = 0; i < ops.size(); ++i)
            if (!dead[i]) kept.push_back(std::move(ops[i]));
        ops = std::move(kept);
    }
    Circuit out(c.n_qubits);
    out.ops = std::move(ops);
    return out;
}

struct TranspileReport {
    int n1 = 0;
    int n2 = 0;
    int depth = 0;
    int tqc = 0;
};

inline TranspileReport metrics(const Circuit& c) {
    TranspileReport r;
    for (const GateInstance& g : c.ops) {
        if (!is_native(g.kind))
            throw NonNativeGate(std::string("non-native gate: ") + std::string(qasm_name(g.kind.op)));
        switch (g.kind.op) {
            case GateOp::X:
            case GateOp::SX:
            case GateOp::RZ:
                ++r.n1;
                break;
            case GateOp::ECR:
                ++r.n2;
                break;
            default:
                break;  // I is native but counts toward neither N1 nor N2
        }
    }
    r.depth = depth(c);
    r.tqc = r.n1 + r.n2 + r.depth;
    return r;
}

enum class ReportFormat { Text, Markdown };

/// Transpiles every named circuit and tabulates N1, N2, D, TQC, with
/// pairwise percentage reductions (a-b)/a in the footer.
inline std::string compare_report(const std::vector<std::pair<std::string, Circuit>>& named,
                                  ReportFormat format = ReportFormat::Text) {
    std::vector<std::pair<std::string, TranspileReport>> rows;
    rows.reserve(named.size());
    std::size_t widest = 4;
    for (const auto& [name, circuit] : named) {
        rows.emplace_back(name, metrics(peephole_optimize(decompose_to_native(circuit).circuit)));
        widest = std::max(widest, name.size());
    }

    std::string out;
    char buf[160];
    if (format == ReportFormat::Markdown) {
        out += "| gate | N1 | N2 | D | TQC |\n";
        out += "| --- | ---: | ---: | ---: | ---: |\n";
        for (const auto& [name, r] : rows) {
            std::snprintf(buf, sizeof buf, "| %s | %d | %d | %d | %d |\n", name.c_str(), r.n1,
                          r.n2, r.depth, r.tqc);
            out += buf;
        }
    } else {
        std::snprintf(buf, sizeof buf, "%-*s  %4s  %4s  %4s  %5s\n",
                      static_cast<int>(widest), "gate", "N1", "N2", "D", "TQC");
        out += buf;
        for (const auto& [name, r] : rows) {
            std::snprintf(buf, sizeof buf, "%-*s  %4d  %4d  %4d  %5d\n",
                          static_cast<int>(widest), name.c_str(), r.n1, r.n2, r.depth, r.tqc);
            out += buf;
        }
    }

    auto percent = [](int a, int b) -> std::string {
        if (a == 0) return "n/a";
        char p[32];
        std::snprintf(p, sizeof p, "%.1f%%", 100.0 * (a - b) / a);
        return p;
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            std::snprintf(buf, sizeof buf, "TQC reduction (%s -> %s): %s\n",
                          rows[i].first.c_str(), rows[j].first.c_str(),
                          percent(rows[i].second.tqc, rows[j].second.tqc).c_str());
            out += buf;
            std::snprintf(buf, sizeof buf, "depth reduction (%s -> %s): %s\n",
                          rows[i].first.c_str(), rows[j].first.c_str(),
                          percent(rows[i].second.depth, rows[j].second.depth).c_str());
            out += buf;
        }
    }
    return out;
}

}  // namespace pswap
