// Dense complex matrices and state vectors sized for small quantum
// registers, plus the equivalence notions (unitarity, global-phase
// equality) everything else builds on.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pswap {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDefaultTol = 1e-9;
inline constexpr int kMaxQubits = 10;

/// Wraps an angle to (-pi, pi]; +pi is representable, -pi maps to +pi.
inline double wrap_angle(double theta) {
    double w = std::fmod(theta + kPi, 2.0 * kPi);
    if (w <= 0.0) w += 2.0 * kPi;
    return w - kPi;
}

/// Difference of two angles wrapped to (-pi, pi].
inline double angle_diff(double a, double b) { return wrap_angle(a - b); }

inline bool angles_close(double a, double b, double tol = kDefaultTol) {
    return std::abs(angle_diff(a, b)) <= tol;
}

// Square dense complex matrix, row-major. dim is 2^n when the matrix
// represents an operator on n qubits.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim)
        : dim_(dim), a_(dim * dim) {
        if (dim == 0) throw std::invalid_argument("matrix dimension must be positive");
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        ComplexMatrix m(rows.size());
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != m.dim_) throw std::invalid_argument("ragged matrix literal");
            std::size_t c = 0;
            for (const Complex& v : row) {
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw std::invalid_argument("non-finite matrix entry");
                m.at(r, c++) = v;
            }
            ++r;
        }
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& at(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_;
    std::vector<Complex> a_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matmul: dimension mismatch");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a.at(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

/// Kronecker product; the first factor acts on the more significant qubits.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a.at(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    out.at(i * nb + k, j * nb + l) = aij * b.at(k, l);
        }
    return out;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            out.at(i, j) = std::conj(a.at(j, i));
    return out;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    return m;
}

/// True iff ||a^dagger a - I||_max <= tol.
inline bool is_unitary(const ComplexMatrix& a, double tol = kDefaultTol) {
    return max_abs_diff(matmul(dagger(a), a), ComplexMatrix::identity(a.dim())) <= tol;
}

/// If a == e^{i phi} b within tol, returns phi wrapped to (-pi, pi].
/// phi is read off the first entry of b with modulus > tol.
inline std::optional<double> equal_up_to_global_phase(const ComplexMatrix& a,
                                                      const ComplexMatrix& b,
                                                      double tol = kDefaultTol) {
    if (a.dim() != b.dim()) return std::nullopt;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            const Complex ref = b.at(i, j);
            if (std::abs(ref) <= tol) continue;
            const double phi = std::arg(a.at(i, j) / ref);
            const Complex factor = std::polar(1.0, phi);
            for (std::size_t r = 0; r < b.dim(); ++r)
                for (std::size_t c = 0; c < b.dim(); ++c)
                    if (std::abs(a.at(r, c) - factor * b.at(r, c)) > tol) return std::nullopt;
            return wrap_angle(phi);
        }
    }
    return std::nullopt;  // b is (numerically) zero
}

// Complex amplitudes over computational basis states, little-endian:
// basis index i has qubit q in bit q of i.
class StateVector {
public:
    explicit StateVector(std::size_t dim) : dim_(dim), amp_(dim) {
        if (dim == 0) throw std::invalid_argument("state dimension must be positive");
    }

    static StateVector basis(int n_qubits, std::size_t index) {
        if (n_qubits < 1 || n_qubits > kMaxQubits)
            throw std::invalid_argument("register size out of range");
        StateVector s(std::size_t{1} << n_qubits);
        if (index >= s.dim_) throw std::invalid_argument("basis index out of range");
        s.amp_[index] = 1.0;
        return s;
    }

    // Label reads |q_{n-1} ... q_1 q_0>, most significant qubit first.
    static StateVector from_label(std::string_view label) {
        if (label.empty()) throw std::invalid_argument("empty basis label");
        std::size_t index = 0;
        for (char ch : label) {
            if (ch != '0' && ch != '1') throw std::invalid_argument("basis label must be 0/1");
            index = (index << 1) | static_cast<std::size_t>(ch - '0');
        }
        return basis(static_cast<int>(label.size()), index);
    }

    std::size_t dim() const { return dim_; }
    Complex& amp(std::size_t i) { return amp_[i]; }
    const Complex& amp(std::size_t i) const { return amp_[i]; }

    double norm() const {
        double s = 0.0;
        for (const Complex& v : amp_) s += std::norm(v);
        return std::sqrt(s);
    }

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    std::size_t dim_;
    std::vector<Complex> amp_;
};

inline std::string index_to_label(std::size_t index, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q)
        if (index & (std::size_t{1} << q)) s[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
    return s;
}

inline std::size_t label_to_index(std::string_view label) {
    std::size_t index = 0;
    for (char ch : label) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("basis label must be 0/1");
        index = (index << 1) | static_cast<std::size_t>(ch - '0');
    }
    return index;
}

inline StateVector apply(const ComplexMatrix& a, const StateVector& s) {
    if (a.dim() != s.dim()) throw std::invalid_argument("apply: dimension mismatch");
    StateVector out(s.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < a.dim(); ++j) acc += a.at(i, j) * s.amp(j);
        out.amp(i) = acc;
    }
    return out;
}

}  // namespace pswap
