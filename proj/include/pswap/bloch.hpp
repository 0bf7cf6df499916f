// XY-plane inspection of circuit runs: per-qubit reduced states at every
// layer, segment classification of RZ angles, and deterministic SVG/ASCII
// snapshot rendering.
//
// Interior layers of swap circuits entangle basis inputs, so the planes
// plot reduced (partial-trace) states with the arrow shrinking toward the
// center as purity drops; the rendered legend states this.

#pragma once

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pswap/circuit.hpp"
#include "pswap/qasm.hpp"

namespace pswap {

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double purity = 1.0;
};

/// Partial-traces the register state down to one qubit.
/// x = 2 Re(rho01), y = 2 Im(rho10), z = rho00 - rho11, purity = tr(rho^2).
inline BlochVector reduced_bloch(const StateVector& s, int qubit) {
    const std::size_t mask = std::size_t{1} << qubit;
    if (mask >= s.dim()) throw std::invalid_argument("qubit index out of range");
    double rho00 = 0.0, rho11 = 0.0;
    Complex rho01 = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (i & mask) continue;
        const Complex a0 = s.amp(i), a1 = s.amp(i | mask);
        rho00 += std::norm(a0);
        rho11 += std::norm(a1);
        rho01 += a0 * std::conj(a1);
    }
    BlochVector v;
    v.x = 2.0 * rho01.real();
    v.y = -2.0 * rho01.imag();  // = 2 Im(rho10)
    v.z = rho00 - rho11;
    v.purity = rho00 * rho00 + rho11 * rho11 + 2.0 * std::norm(rho01);
    return v;
}

struct XYProjection {
    double x = 0.0;
    double y = 0.0;
    double angle = 0.0;   // wrapped to (-pi, pi]; 0 by convention at the poles
    double radius = 0.0;
};

inline XYProjection xy_projection(const BlochVector& v) {
    XYProjection p;
    p.x = v.x;
    p.y = v.y;
    p.radius = std::hypot(v.x, v.y);
    p.angle = p.radius <= kDefaultTol ? 0.0 : wrap_angle(std::atan2(v.y, v.x));
    return p;
}

// XY-plane segment taxonomy of an RZ magnitude: semicircle (pi),
// quadrant (pi/2), octant (pi/4), otherwise generic.
enum class Segment { Semicircle, Quadrant, Octant, Generic };

struct SegmentClass {
    Segment kind = Segment::Generic;
    double angle = 0.0;  // |theta| wrapped to [0, pi]
};

inline SegmentClass classify_segment(double theta) {
    const double m = std::abs(wrap_angle(theta));
    SegmentClass out;
    out.angle = m;
    if (std::abs(m - kPi) <= kDefaultTol)
        out.kind = Segment::Semicircle;
    else if (std::abs(m - kPi / 2) <= kDefaultTol)
        out.kind = Segment::Quadrant;
    else if (std::abs(m - kPi / 4) <= kDefaultTol)
        out.kind = Segment::Octant;
    return out;
}

struct LayerSnapshot {
    int layer_index = 0;
    std::vector<BlochVector> per_qubit;
    StateVector state{1};
    std::optional<double> phase_hint;  // colors the snapshot's planes when set
};

/// Runs the circuit layer by layer on a basis input; snapshot count is
/// depth + 1 (the initial state plus one per layer).
inline std::vector<LayerSnapshot> snapshot_layers(const Circuit& c, std::string_view label) {
    if (static_cast<int>(label.size()) != c.n_qubits)
        throw std::invalid_argument("basis label length must equal register size");
    StateVector s = StateVector::from_label(label);
    std::vector<LayerSnapshot> snaps;
    auto take = [&](int layer_index) {
        LayerSnapshot snap;
        snap.layer_index = layer_index;
        snap.state = s;
        for (int q = 0; q < c.n_qubits; ++q) snap.per_qubit.push_back(reduced_bloch(s, q));
        snaps.push_back(std::move(snap));
    };
    take(0);
    const LayerSchedule sched = schedule(c);
    for (std::size_t l = 0; l < sched.layers.size(); ++l) {
        for (const GateInstance& g : sched.layers[l]) apply_in_place(s, g);
        take(static_cast<int>(l) + 1);
    }
    return snaps;
}

/// Marks the final snapshot with a relative phase so render() can color it
/// per the blue/pink/red palette.
inline void annotate_final_phase(std::vector<LayerSnapshot>& snaps, double p) {
    if (snaps.empty()) throw std::invalid_argument("no snapshots to annotate");
    snaps.back().phase_hint = p;
}

enum class PlotFormat { Svg, Ascii };

namespace detail {

inline const char* phase_color(const std::optional<double>& hint) {
    if (!hint) return "black";
    const double h = wrap_angle(*hint);
    if (std::abs(h) <= kDefaultTol) return "blue";
    if (std::abs(h - kPi / 2) <= kDefaultTol) return "pink";
    if (std::abs(h - kPi) <= kDefaultTol) return "red";
    return "gray";
}

constexpr std::string_view kLegend =
    "arrows are per-qubit reduced states; arrow length is the XY-plane radius "
    "(entangled qubits shrink toward the center); colors: blue=0, pink=+pi/2, red=+pi";

inline std::string render_ascii(const std::vector<LayerSnapshot>& snaps) {
    std::string out = "bloch xy-plane snapshots: ";
    out += kLegend;
    out += "\n";
    char buf[160];
    const int n_qubits = static_cast<int>(snaps.front().per_qubit.size());
    for (const LayerSnapshot& snap : snaps) {
        for (int q = 0; q < n_qubits; ++q) {
            const XYProjection p = xy_projection(snap.per_qubit[static_cast<std::size_t>(q)]);
            std::snprintf(buf, sizeof buf,
                          "-- plane qubit=%d layer=%d color=%s angle=%s radius=%.3f purity=%.3f\n",
                          q, snap.layer_index, phase_color(snap.phase_hint),
                          qasm::format_angle(p.angle).c_str(), p.radius,
                          snap.per_qubit[static_cast<std::size_t>(q)].purity);
            out += buf;
            char grid[21][21];
            for (auto& row : grid)
                for (char& ch : row) ch = ' ';
            for (int r = 0; r < 21; ++r)
                for (int col = 0; col < 21; ++col) {
                    const double d = std::hypot(col - 10.0, r - 10.0);
                    if (std::llround(d) == 10) grid[r][col] = '.';
                }
            grid[10][10] = '+';
            const double px = p.x * 10.0, py = p.y * 10.0;
            if (p.radius > kDefaultTol) {
                for (int step = 1; step <= 20; ++step) {
                    const double t = step / 20.0;
                    const int col = 10 + static_cast<int>(std::llround(px * t));
                    const int row = 10 - static_cast<int>(std::llround(py * t));
                    grid[row][col] = '*';
                }
            }
            grid[10 - std::llround(py)][10 + std::llround(px)] = '@';
            for (const auto& row : grid) {
                out.append(row, 21);
                out += '\n';
            }
        }
    }
    return out;
}

inline std::string render_svg(const std::vector<LayerSnapshot>& snaps) {
    const int n_qubits = static_cast<int>(snaps.front().per_qubit.size());
    const int cols = static_cast<int>(snaps.size());
    const int width = cols * 130 + 10;
    const int height = n_qubits * 130 + 40;
    char buf[320];
    std::string out;
    std::snprintf(buf, sizeof buf,
                  "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "viewBox=\"0 0 %d %d\">\n",
                  width, height);
    out += buf;
    for (int q = 0; q < n_qubits; ++q) {
        for (int s = 0; s < cols; ++s) {
            const LayerSnapshot& snap = snaps[static_cast<std::size_t>(s)];
            const XYProjection p = xy_projection(snap.per_qubit[static_cast<std::size_t>(q)]);
            const char* color = phase_color(snap.phase_hint);
            std::snprintf(buf, sizeof buf, "<g class=\"plane\" transform=\"translate(%d,%d)\">\n",
                          s * 130 + 10, q * 130 + 10);
            out += buf;
            out += "<circle cx=\"60\" cy=\"60\" r=\"50\" fill=\"none\" stroke=\"black\"/>\n";
            out += "<line x1=\"10\" y1=\"60\" x2=\"110\" y2=\"60\" stroke=\"lightgray\"/>\n";
            out += "<line x1=\"60\" y1=\"10\" x2=\"60\" y2=\"110\" stroke=\"lightgray\"/>\n";
            const double tx = 60.0 + 50.0 * p.x;
            const double ty = 60.0 - 50.0 * p.y;
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"60\" y1=\"60\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                          "stroke-width=\"2\"/>\n",
                          tx, ty, color);
            out += buf;
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n",
                          tx, ty, color);
            out += buf;
            std::snprintf(buf, sizeof buf,
                          "<text x=\"60\" y=\"122\" text-anchor=\"middle\" font-size=\"10\">"
                          "q%d layer %d purity %.3f</text>\n",
                          q, snap.layer_index, snap.per_qubit[static_cast<std::size_t>(q)].purity);
            out += buf;
            out += "</g>\n";
        }
    }
    std::snprintf(buf, sizeof buf, "<text x=\"10\" y=\"%d\" font-size=\"10\">", height - 12);
    out += buf;
    out += kLegend;
    out += "</text>\n</svg>\n";
    return out;
}

}  // namespace detail

/// Deterministic text output: one XY-plane per qubit per snapshot.
inline std::string render(const std::vector<LayerSnapshot>& snaps, PlotFormat format) {
    if (snaps.empty()) throw std::invalid_argument("no snapshots to render");
    return format == PlotFormat::Ascii ? detail::render_ascii(snaps) : detail::render_svg(snaps);
}

}  // namespace pswap
