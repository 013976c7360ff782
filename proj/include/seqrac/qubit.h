#ifndef SEQRAC_QUBIT_H
#define SEQRAC_QUBIT_H

#include <array>
#include <complex>
#include <iosfwd>

#include "seqrac/tolerances.h"

namespace seqrac {

using Complex = std::complex<double>;

/// Real 3-vector in the Bloch ball (states) or Bloch representation of an
/// observable's traceless part.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double dot(const BlochVector &other) const {
        return x * other.x + y * other.y + z * other.z;
    }
    double norm() const;
    BlochVector normalized() const;

    BlochVector operator+(const BlochVector &o) const { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector &o) const { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator-() const { return {-x, -y, -z}; }
    BlochVector operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const BlochVector &o) const = default;
};

inline BlochVector operator*(double s, const BlochVector &v) { return v * s; }
std::ostream &operator<<(std::ostream &out, const BlochVector &v);

/// 2x2 complex matrix stored row-major. Carries states, effects and Kraus
/// operators alike; Hermiticity and positivity are checked on demand.
class Operator2 {
   public:
    Operator2() = default;
    Operator2(Complex m00, Complex m01, Complex m10, Complex m11) : m_{m00, m01, m10, m11} {}

    static Operator2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    const Complex &operator()(int row, int col) const { return m_[2 * row + col]; }
    Complex &operator()(int row, int col) { return m_[2 * row + col]; }

    Operator2 adjoint() const;
    Complex trace() const { return m_[0] + m_[3]; }
    Complex det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

    bool is_hermitian(double tolerance = tol::kHermitian) const;
    /// Hermitian and both eigenvalues >= -tolerance.
    bool is_positive(double tolerance = tol::kPositive) const;
    /// Eigenvalues of the Hermitian part, ascending. Closed form.
    std::array<double, 2> hermitian_eigenvalues() const;

    /// Largest entrywise |a_ij - b_ij|.
    double max_abs_diff(const Operator2 &other) const;

    Operator2 operator+(const Operator2 &o) const;
    Operator2 operator-(const Operator2 &o) const;
    Operator2 operator*(const Operator2 &o) const;
    Operator2 operator*(Complex s) const;
    Operator2 &operator+=(const Operator2 &o);

   private:
    std::array<Complex, 4> m_{};
};

inline Operator2 operator*(Complex s, const Operator2 &op) { return op * s; }
std::ostream &operator<<(std::ostream &out, const Operator2 &op);

const Operator2 &pauli_x();
const Operator2 &pauli_y();
const Operator2 &pauli_z();

/// v . sigma
Operator2 pauli_dot(const BlochVector &v);
/// (Re Tr(sigma_x A), Re Tr(sigma_y A), Re Tr(sigma_z A)).
BlochVector pauli_expectations(const Operator2 &op);

/// Density operator. Construction validates unit trace, Hermiticity and
/// positivity, so every instance is a physical state.
class QubitState {
   public:
    static QubitState from_operator(const Operator2 &op);
    static QubitState maximally_mixed() { return QubitState(Operator2::identity() * 0.5); }

    const Operator2 &op() const { return op_; }
    BlochVector bloch() const;
    double purity() const;

   private:
    explicit QubitState(const Operator2 &op) : op_(op) {}
    friend QubitState bloch_to_state(const BlochVector &v);
    Operator2 op_;
};

/// rho = (1 + v.sigma)/2. Norms in (1, 1 + 1e-9] are clamped to the sphere;
/// larger norms throw std::invalid_argument.
QubitState bloch_to_state(const BlochVector &v);
inline BlochVector state_to_bloch(const QubitState &s) { return s.bloch(); }

/// Principal square root of a Hermitian PSD operator via its closed-form
/// spectral decomposition. Throws std::domain_error on a non-Hermitian input
/// or an eigenvalue below -1e-9.
Operator2 psd_sqrt(const Operator2 &op);

/// F(a, b) = Tr(ab) + 2 sqrt(det a det b), the squared Uhlmann fidelity for qubits.
double fidelity(const QubitState &a, const QubitState &b);
/// Same quantity for the states with Bloch vectors a and b.
double bloch_fidelity(const BlochVector &a, const BlochVector &b);

/// Dichotomic observable B = bias * 1 + n . sigma with |bias| <= 1 - |n|.
class Observable {
   public:
    Observable(double bias, const BlochVector &n);
    static Observable unbiased(const BlochVector &n) { return Observable(0.0, n); }

    double bias() const { return bias_; }
    const BlochVector &bloch() const { return n_; }
    double sharpness() const { return n_.norm(); }

    Operator2 matrix() const;
    /// Effect for outcome b: (1 + (-1)^b B) / 2.
    Operator2 effect(int outcome) const;

   private:
    double bias_;
    BlochVector n_;
};

}  // namespace seqrac

#endif
