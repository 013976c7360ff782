#include "seqrac/qubit.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace seqrac {

double BlochVector::norm() const {
    return std::sqrt(dot(*this));
}

BlochVector BlochVector::normalized() const {
    double n = norm();
    if (n == 0.0) {
        throw std::domain_error("cannot normalize the zero Bloch vector");
    }
    return *this * (1.0 / n);
}

std::ostream &operator<<(std::ostream &out, const BlochVector &v) {
    return out << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

Operator2 Operator2::adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

bool Operator2::is_hermitian(double tolerance) const {
    return max_abs_diff(adjoint()) <= tolerance;
}

std::array<double, 2> Operator2::hermitian_eigenvalues() const {
    // Eigenvalues of [[a, c], [c*, d]] with a, d real: mean +- sqrt(half_gap^2 + |c|^2).
    double a = m_[0].real();
    double d = m_[3].real();
    Complex c = 0.5 * (m_[1] + std::conj(m_[2]));
    double mean = 0.5 * (a + d);
    double half_gap = 0.5 * (a - d);
    double radius = std::hypot(half_gap, std::abs(c));
    return {mean - radius, mean + radius};
}

bool Operator2::is_positive(double tolerance) const {
    return is_hermitian(tol::kHermitian) && hermitian_eigenvalues()[0] >= -tolerance;
}

double Operator2::max_abs_diff(const Operator2 &other) const {
    double worst = 0.0;
    for (size_t k = 0; k < 4; k++) {
        worst = std::max(worst, std::abs(m_[k] - other.m_[k]));
    }
    return worst;
}

Operator2 Operator2::operator+(const Operator2 &o) const {
    return {m_[0] + o.m_[0], m_[1] + o.m_[1], m_[2] + o.m_[2], m_[3] + o.m_[3]};
}

Operator2 Operator2::operator-(const Operator2 &o) const {
    return {m_[0] - o.m_[0], m_[1] - o.m_[1], m_[2] - o.m_[2], m_[3] - o.m_[3]};
}

Operator2 Operator2::operator*(const Operator2 &o) const {
    return {
        m_[0] * o.m_[0] + m_[1] * o.m_[2],
        m_[0] * o.m_[1] + m_[1] * o.m_[3],
        m_[2] * o.m_[0] + m_[3] * o.m_[2],
        m_[2] * o.m_[1] + m_[3] * o.m_[3],
    };
}

Operator2 Operator2::operator*(Complex s) const {
    return {m_[0] * s, m_[1] * s, m_[2] * s, m_[3] * s};
}

Operator2 &Operator2::operator+=(const Operator2 &o) {
    for (size_t k = 0; k < 4; k++) {
        m_[k] += o.m_[k];
    }
    return *this;
}

std::ostream &operator<<(std::ostream &out, const Operator2 &op) {
    return out << "[[" << op(0, 0) << ", " << op(0, 1) << "], [" << op(1, 0) << ", " << op(1, 1) << "]]";
}

const Operator2 &pauli_x() {
    static const Operator2 x(0.0, 1.0, 1.0, 0.0);
    return x;
}

const Operator2 &pauli_y() {
    static const Operator2 y(0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0);
    return y;
}

const Operator2 &pauli_z() {
    static const Operator2 z(1.0, 0.0, 0.0, -1.0);
    return z;
}

Operator2 pauli_dot(const BlochVector &v) {
    return {v.z, Complex(v.x, -v.y), Complex(v.x, v.y), -v.z};
}

BlochVector pauli_expectations(const Operator2 &op) {
    return {
        (op(0, 1) + op(1, 0)).real(),
        (Complex(0.0, 1.0) * (op(0, 1) - op(1, 0))).real(),
        (op(0, 0) - op(1, 1)).real(),
    };
}

QubitState QubitState::from_operator(const Operator2 &op) {
    if (std::abs(op.trace() - 1.0) > tol::kTrace) {
        throw std::invalid_argument("density operator must have unit trace");
    }
    if (!op.is_hermitian()) {
        throw std::invalid_argument("density operator must be Hermitian");
    }
    if (!op.is_positive()) {
        throw std::invalid_argument("density operator must be positive semidefinite");
    }
    return QubitState(op);
}

BlochVector QubitState::bloch() const {
    return pauli_expectations(op_);
}

double QubitState::purity() const {
    return (op_ * op_).trace().real();
}

QubitState bloch_to_state(const BlochVector &v) {
    double n = v.norm();
    if (!(n <= 1.0 + tol::kBlochNorm)) {
        throw std::invalid_argument("Bloch vector norm exceeds 1: " + std::to_string(n));
    }
    BlochVector w = n > 1.0 ? v * (1.0 / n) : v;
    return QubitState((Operator2::identity() + pauli_dot(w)) * 0.5);
}

Operator2 psd_sqrt(const Operator2 &op) {
    if (!op.is_hermitian()) {
        throw std::domain_error("psd_sqrt requires a Hermitian operator");
    }
    auto [lo, hi] = op.hermitian_eigenvalues();
    if (lo < -tol::kPositive) {
        throw std::domain_error("psd_sqrt requires a positive semidefinite operator");
    }
    double s_lo = std::sqrt(std::max(lo, 0.0));
    double s_hi = std::sqrt(std::max(hi, 0.0));
    if (s_lo + s_hi == 0.0) {
        return {};
    }
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) {
        // Scalar multiple of identity.
        return Operator2::identity() * s_hi;
    }
    // sqrt(A) = s_lo P_lo + s_hi P_hi with P_hi = (A - lo)/(hi - lo).
    Operator2 centered = op - Operator2::identity() * lo;
    Operator2 p_hi = centered * (1.0 / (hi - lo));
    Operator2 p_lo = Operator2::identity() - p_hi;
    return p_lo * s_lo + p_hi * s_hi;
}

double fidelity(const QubitState &a, const QubitState &b) {
    double overlap = (a.op() * b.op()).trace().real();
    double det_product = std::max(0.0, a.op().det().real()) * std::max(0.0, b.op().det().real());
    return std::clamp(overlap + 2.0 * std::sqrt(det_product), 0.0, 1.0);
}

double bloch_fidelity(const BlochVector &a, const BlochVector &b) {
    double mixed_a = std::max(0.0, 1.0 - a.dot(a));
    double mixed_b = std::max(0.0, 1.0 - b.dot(b));
    return std::clamp(0.5 * (1.0 + a.dot(b) + std::sqrt(mixed_a * mixed_b)), 0.0, 1.0);
}

Observable::Observable(double bias, const BlochVector &n) : bias_(bias), n_(n) {
    double eta = n.norm();
    if (!(eta <= 1.0 + tol::kBlochNorm)) {
        throw std::invalid_argument("observable Bloch vector norm exceeds 1");
    }
    if (!(std::abs(bias) <= 1.0 - eta + tol::kBlochNorm)) {
        throw std::invalid_argument("observable bias violates |alpha| <= 1 - |n|");
    }
}

Operator2 Observable::matrix() const {
    return Operator2::identity() * bias_ + pauli_dot(n_);
}

Operator2 Observable::effect(int outcome) const {
    double sign = outcome == 0 ? 1.0 : -1.0;
    return (Operator2::identity() + matrix() * sign) * 0.5;
}

}  // namespace seqrac
