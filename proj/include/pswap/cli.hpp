// Command surface: synth, simulate, verify, transpile, compare, plot.
// Exit codes: 0 success, 1 verification failed, 2 usage error, 3 input
// error. Output files are written whole or not at all.

#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pswap/bloch.hpp"
#include "pswap/qasm.hpp"
#include "pswap/synth.hpp"
#include "pswap/transpile.hpp"

namespace pswap::cli {

namespace detail {

inline std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    out.flush();
    return out.good();
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline bool valid_label(const std::string& l, int n_qubits) {
    if (static_cast<int>(l.size()) != n_qubits) return false;
    for (char c : l)
        if (c != '0' && c != '1') return false;
    return true;
}

// Emits to --out when given, stdout otherwise; never leaves partial files.
inline int deliver(const std::string& content, const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
    if (out_path.empty()) {
        out << content;
        return 0;
    }
    if (!write_file(out_path, content)) {
        err << "error: cannot write " << out_path << "\n";
        return 3;
    }
    return 0;
}

inline int parse_cofactor_entry(const std::string& text, bool sign_slot) {
    int v = 0;
    try {
        std::size_t used = 0;
        v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("--cofactors expects s,A,B,s,C,D with integer entries");
    }
    if (sign_slot && v != 1 && v != -1)
        throw std::invalid_argument("cofactor signs must be +1 or -1");
    return v;
}

}  // namespace detail

/// Runs one command line (without the program name); returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-SWAP synthesis, simulation, verification and transpilation toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "construct a swap-family circuit as QASM");
    std::string synth_gate, synth_cofactors, synth_out;
    int synth_concept = 0;
    synth->add_option("--gate", synth_gate, "swap, iswap, or pswap")
        ->required()
        ->check(CLI::IsMember({"swap", "iswap", "pswap"}));
    synth->add_option("--concept", synth_concept, "table concept id (1..6)")->check(CLI::Range(1, 6));
    synth->add_option("--cofactors", synth_cofactors, "sextuple s,A,B,s,C,D for nu and omega");
    synth->add_option("--out", synth_out, "output QASM path (stdout if omitted)");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "run a circuit on a basis input");
    std::string sim_file, sim_input;
    simulate_cmd->add_option("file", sim_file, "QASM input")->required();
    simulate_cmd->add_option("--input", sim_input, "basis label |q_{n-1}..q0>")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "check a circuit's relative phase p");
    std::string ver_file, ver_effected, ver_expect;
    verify->add_option("file", ver_file, "QASM input")->required();
    verify->add_option("--effected", ver_effected, "comma-separated input labels")->required();
    verify->add_option("--expect-p", ver_expect, "expected phase (QASM angle expression)")
        ->required();

    // transpile
    auto* transpile = app.add_subcommand("transpile", "lower to the native basis and optimize");
    std::string tr_file, tr_out;
    bool tr_report = false;
    transpile->add_option("file", tr_file, "QASM input")->required();
    transpile->add_option("--out", tr_out, "output QASM path (stdout if omitted)");
    transpile->add_flag("--report", tr_report, "print the N1/N2/D/TQC report");

    // compare
    auto* compare = app.add_subcommand("compare", "tabulate transpilation cost of circuits");
    bool cmp_builtin = false;
    std::string cmp_format = "text";
    std::vector<std::string> cmp_named;
    compare->add_flag("--builtin", cmp_builtin, "compare SWAP, iSWAP and the concept-1 p-SWAP");
    compare->add_option("--format", cmp_format, "text or markdown")
        ->check(CLI::IsMember({"text", "markdown"}));
    compare->add_option("circuits", cmp_named, "NAME=FILE pairs");

    // plot
    auto* plot = app.add_subcommand("plot", "render XY-plane snapshots of a run");
    std::string plot_file, plot_input, plot_format = "svg", plot_out, plot_effected;
    plot->add_option("file", plot_file, "QASM input")->required();
    plot->add_option("--input", plot_input, "basis label")->required();
    plot->add_option("--format", plot_format, "svg or ascii")
        ->check(CLI::IsMember({"svg", "ascii"}));
    plot->add_option("--out", plot_out, "output path (stdout if omitted)");
    plot->add_option("--effected", plot_effected,
                     "input labels whose relative phase colors the final snapshot");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto load_circuit = [&](const std::string& path, Circuit& c) -> int {
        const auto text = detail::read_file(path);
        if (!text) {
            err << "error: cannot read " << path << "\n";
            return 3;
        }
        try {
            c = qasm::parse(*text);
        } catch (const qasm::SourceError& e) {
            err << "error: " << path << ":" << e.what() << "\n";
            return 3;
        }
        return 0;
    };

    try {
        if (app.got_subcommand(synth)) {
            Circuit circuit;
            std::string metadata;
            const bool has_concept = synth->count("--concept") > 0;
            const bool has_cofactors = !synth_cofactors.empty();
            if (synth_gate != "pswap" && (has_concept || has_cofactors)) {
                err << "error: --concept/--cofactors apply to --gate pswap only\n";
                return 2;
            }
            if (synth_gate == "swap") {
                circuit = standard_swap();
            } else if (synth_gate == "iswap") {
                circuit = iswap();
            } else {
                if (has_concept == has_cofactors) {
                    err << "error: pswap needs exactly one of --concept or --cofactors\n";
                    return 2;
                }
                if (has_concept) {
                    const ConceptCircuit cc = pswap_from_concept(synth_concept);
                    circuit = cc.circuit;
                    metadata = "effected:";
                    for (std::size_t i = 0; i < cc.row.effected.size(); ++i)
                        metadata += (i ? "," : " ") + cc.row.effected[i];
                    metadata += "\nexpected p: " + qasm::format_angle(cc.row.expected_p) + "\n";
                } else {
                    const auto parts = detail::split(synth_cofactors, ',');
                    if (parts.size() != 6) {
                        err << "error: --cofactors expects s,A,B,s,C,D\n";
                        return 2;
                    }
                    Cofactors cf;
                    try {
                        cf.nu_sign = detail::parse_cofactor_entry(parts[0], true);
                        cf.a = detail::parse_cofactor_entry(parts[1], false);
                        cf.b = detail::parse_cofactor_entry(parts[2], false);
                        cf.omega_sign = detail::parse_cofactor_entry(parts[3], true);
                        cf.c = detail::parse_cofactor_entry(parts[4], false);
                        cf.d = detail::parse_cofactor_entry(parts[5], false);
                        const CofactorAngles angles = cofactor_angles(cf);
                        if (angles.wrapped)
                            err << "warning: cofactor angle wrapped to (-pi, pi]\n";
                        circuit = pswap_from_cofactors(cf);
                    } catch (const std::invalid_argument& e) {
                        err << "error: " << e.what() << "\n";
                        return 2;
                    }
                }
            }
            out << metadata;
            return detail::deliver(qasm::emit(circuit), synth_out, out, err);
        }

        if (app.got_subcommand(simulate_cmd)) {
            Circuit circuit;
            if (const int rc = load_circuit(sim_file, circuit)) return rc;
            if (!detail::valid_label(sim_input, circuit.n_qubits)) {
                err << "error: input label must be " << circuit.n_qubits << " binary digits\n";
                return 3;
            }
            const StateVector s = simulate(circuit, sim_input);
            char buf[128];
            for (std::size_t i = 0; i < s.dim(); ++i) {
                const Complex a = s.amp(i);
                const double prob = std::norm(a);
                const std::string phase =
                    prob > 1e-18 ? qasm::format_angle(std::arg(a)) : std::string("0");
                std::snprintf(buf, sizeof buf, "|%s>  %+.9f%+.9fi  prob=%.9f  phase=%s\n",
                              index_to_label(i, circuit.n_qubits).c_str(), a.real(), a.imag(),
                              prob, phase.c_str());
                out << buf;
            }
            return 0;
        }

        if (app.got_subcommand(verify)) {
            std::vector<std::string> labels = detail::split(ver_effected, ',');
            for (const std::string& l : labels) {
                if (!detail::valid_label(l, 2)) {
                    err << "error: bad effected label '" << l << "'\n";
                    return 2;
                }
            }
            double expected = 0.0;
            try {
                expected = qasm::parse_angle_expr(ver_expect);
            } catch (const qasm::SourceError& e) {
                err << "error: --expect-p: " << e.what() << "\n";
                return 2;
            }
            Circuit circuit;
            if (const int rc = load_circuit(ver_file, circuit)) return rc;
            if (circuit.n_qubits != 2) {
                err << "error: verify requires a 2-qubit circuit\n";
                return 3;
            }
            PhasedPermutation pp;
            try {
                pp = extract_phased_permutation(unitary_of(circuit));
            } catch (const NotPhasedPermutation& e) {
                err << "error: not a phased permutation of swap form (" << e.what() << ")\n";
                return 3;
            }
            if (!is_boolean_swap(pp)) {
                err << "error: not a phased permutation of swap form\n";
                return 3;
            }
            double actual = 0.0;
            try {
                actual = relative_phase(pp, labels);
            } catch (const InconsistentPhases& e) {
                out << "FAIL reason=inconsistent-phases detail=\"" << e.what() << "\"\n";
                return 1;
            }
            if (angles_close(actual, expected, kDefaultTol)) {
                out << "PASS p=" << qasm::format_angle(actual) << " effected=" << ver_effected
                    << "\n";
                return 0;
            }
            out << "FAIL reason=phase-mismatch expected=" << qasm::format_angle(expected)
                << " actual=" << qasm::format_angle(actual) << "\n";
            return 1;
        }

        if (app.got_subcommand(transpile)) {
            Circuit circuit;
            if (const int rc = load_circuit(tr_file, circuit)) return rc;
            const NativeCircuit lowered = decompose_to_native(circuit);
            const Circuit optimized = peephole_optimize(lowered.circuit);
            if (const int rc = detail::deliver(qasm::emit(optimized), tr_out, out, err)) return rc;
            if (tr_report) {
                const TranspileReport r = metrics(optimized);
                out << "N1=" << r.n1 << " N2=" << r.n2 << " D=" << r.depth << " TQC=" << r.tqc
                    << "\n";
                out << "global_phase=" << qasm::format_angle(lowered.global_phase) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(compare)) {
            std::vector<std::pair<std::string, Circuit>> named;
            if (cmp_builtin == !cmp_named.empty()) {
                err << "error: pass either --builtin or NAME=FILE pairs\n";
                return 2;
            }
            if (cmp_builtin) {
                named.emplace_back("SWAP", standard_swap());
                named.emplace_back("iSWAP", iswap());
                named.emplace_back("p-SWAP", pswap_from_concept(1).circuit);
            } else {
                for (const std::string& entry : cmp_named) {
                    const std::size_t eq = entry.find('=');
                    if (eq == std::string::npos || eq == 0 || eq + 1 >= entry.size()) {
                        err << "error: expected NAME=FILE, got '" << entry << "'\n";
                        return 2;
                    }
                    Circuit circuit;
                    if (const int rc = load_circuit(entry.substr(eq + 1), circuit)) return rc;
                    named.emplace_back(entry.substr(0, eq), std::move(circuit));
                }
            }
            const ReportFormat fmt =
                cmp_format == "markdown" ? ReportFormat::Markdown : ReportFormat::Text;
            out << compare_report(named, fmt);
            return 0;
        }

        if (app.got_subcommand(plot)) {
            Circuit circuit;
            if (const int rc = load_circuit(plot_file, circuit)) return rc;
            if (!detail::valid_label(plot_input, circuit.n_qubits)) {
                err << "error: input label must be " << circuit.n_qubits << " binary digits\n";
                return 3;
            }
            std::vector<LayerSnapshot> snaps = snapshot_layers(circuit, plot_input);
            if (!plot_effected.empty()) {
                std::vector<std::string> labels = detail::split(plot_effected, ',');
                for (const std::string& l : labels) {
                    if (!detail::valid_label(l, circuit.n_qubits)) {
                        err << "error: bad effected label '" << l << "'\n";
                        return 2;
                    }
                }
                try {
                    const PhasedPermutation pp = extract_phased_permutation(unitary_of(circuit));
                    annotate_final_phase(snaps, relative_phase(pp, labels));
                } catch (const NotPhasedPermutation& e) {
                    err << "error: cannot annotate phases: " << e.what() << "\n";
                    return 3;
                } catch (const InconsistentPhases& e) {
                    err << "error: cannot annotate phases: " << e.what() << "\n";
                    return 3;
                }
            }
            const PlotFormat fmt = plot_format == "ascii" ? PlotFormat::Ascii : PlotFormat::Svg;
            return detail::deliver(render(snaps, fmt), plot_out, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace pswap::cli
