// Dense complex linear algebra over qubit registers: aliases, predicates,
// named constants (Paulis, Bell states, magic basis) and small utilities
// shared by every other header.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace netlocc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;   // row-major semantics are irrelevant; Eigen default storage
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using RealMatrix = Eigen::MatrixXd;

// Module-wide default tolerance for predicate checks; the math is exact,
// tolerances are purely numerical.
inline constexpr double kDefaultTol = 1e-9;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Bad user input (CLI exit code 2).
struct ValidationError : Error {
    using Error::Error;
};
// Broken internal invariant (CLI exit code 3).
struct InternalError : Error {
    using Error::Error;
};

struct NotInvertible : ValidationError { using ValidationError::ValidationError; };
struct NotPositiveDefinite : ValidationError { using ValidationError::ValidationError; };
struct NotBellDiagonal : ValidationError { using ValidationError::ValidationError; };
struct NotOrthogonal : ValidationError { using ValidationError::ValidationError; };
struct PremiseViolated : ValidationError { using ValidationError::ValidationError; };
struct ConvergenceFailure : Error { using Error::Error; };
struct GaugeFailure : Error { using Error::Error; };
struct ParameterConstraintViolated : ValidationError { using ValidationError::ValidationError; };
struct CorrectionNotUnitary : Error { using Error::Error; };
struct PovmInvalid : ValidationError { using ValidationError::ValidationError; };
struct NotACycle : ValidationError { using ValidationError::ValidationError; };
struct EmptyCandidateSet : ValidationError { using ValidationError::ValidationError; };

// ---------------------------------------------------------------------------
// Predicates

inline double matrix_norm(const Matrix& a) { return a.norm(); }

inline bool is_hermitian(const Matrix& a, double tol = kDefaultTol) {
    return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

inline bool is_unitary(const Matrix& a, double tol = kDefaultTol) {
    Matrix g = a.adjoint() * a;
    g -= Matrix::Identity(a.cols(), a.cols());
    return g.norm() <= tol * std::max(1.0, static_cast<double>(a.cols()));
}

// Proportional to a unitary (projective unitarity).
inline bool is_unitary_up_to_scale(const Matrix& a, double tol = kDefaultTol) {
    Matrix g = a.adjoint() * a;
    double s = g.trace().real() / static_cast<double>(a.cols());
    if (s <= 0) return false;
    g -= s * Matrix::Identity(a.cols(), a.cols());
    return g.norm() <= tol * s * static_cast<double>(a.cols());
}

inline bool is_positive_definite(const Matrix& a, double tol = kDefaultTol) {
    if (!is_hermitian(a, std::max(tol, 1e-10))) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    return es.eigenvalues().minCoeff() > tol * std::max(1.0, a.norm());
}

inline bool is_invertible(const Matrix& a, double tol = 1e-12) {
    Eigen::JacobiSVD<Matrix> svd(a);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    return smax > 0 && smin > tol * smax;
}

// |<a,b>| / (||a|| ||b||) -> 1 iff equal up to a complex scalar.
inline bool proportional(const Matrix& a, const Matrix& b, double tol = kDefaultTol) {
    double na = a.norm(), nb = b.norm();
    if (na == 0 || nb == 0) return na == nb;
    Complex ip = (a.adjoint() * b).trace();
    return std::abs(std::abs(ip) / (na * nb) - 1.0) <= tol;
}

// Least-squares factor c minimizing ||b - c a|| together with the relative residual.
struct Proportionality {
    Complex factor;
    double residual;  // ||b - factor*a|| / ||b||
};

inline Proportionality proportionality_factor(const Matrix& a, const Matrix& b) {
    Complex ip = (a.adjoint() * b).trace();
    double na2 = a.squaredNorm();
    if (na2 == 0) return {Complex(0, 0), b.norm() == 0 ? 0.0 : 1.0};
    Complex c = ip / na2;
    double nb = b.norm();
    double res = (b - c * a).norm() / (nb > 0 ? nb : 1.0);
    return {c, res};
}

// ---------------------------------------------------------------------------
// Constants

inline const Matrix2& pauli(int i) {
    static const Matrix2 s[4] = {
        (Matrix2() << 1, 0, 0, 1).finished(),
        (Matrix2() << 0, 1, 1, 0).finished(),
        (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
        (Matrix2() << 1, 0, 0, -1).finished()};
    return s[i];
}

inline Matrix2 sigma_x() { return pauli(1); }
inline Matrix2 sigma_y() { return pauli(2); }
inline Matrix2 sigma_z() { return pauli(3); }

// Z(phi) = diag(e^{i phi}, e^{-i phi})
inline Matrix2 phase_rotation(double phi) {
    Matrix2 m = Matrix2::Zero();
    m(0, 0) = std::polar(1.0, phi);
    m(1, 1) = std::polar(1.0, -phi);
    return m;
}

// X(alpha) = e^{i alpha sigma_x}
inline Matrix2 x_rotation(double alpha) {
    Matrix2 m;
    m << std::cos(alpha), Complex(0, std::sin(alpha)),
         Complex(0, std::sin(alpha)), std::cos(alpha);
    return m;
}

// eps = [[0,1],[-1,0]];  X eps X^T = det(X) eps.
inline Matrix2 epsilon() {
    Matrix2 m;
    m << 0, 1, -1, 0;
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Bell kets in the order used throughout: Phi+, Phi-, Psi-, Psi+.
inline Vector bell_state(int which) {
    Vector v = Vector::Zero(4);
    const double s = 1.0 / std::sqrt(2.0);
    switch (which) {
        case 0: v(0) = s; v(3) = s; break;    // Phi+
        case 1: v(0) = s; v(3) = -s; break;   // Phi-
        case 2: v(1) = s; v(2) = -s; break;   // Psi-
        case 3: v(1) = s; v(2) = s; break;    // Psi+
        default: throw ValidationError("bell_state: index out of range");
    }
    return v;
}

// The fixed 4x4 magic-basis unitary
//   U = |Phi+><00| - i|Phi-><01| + |Psi-><10| - i|Psi+><11|.
// Conjugation by U maps product operators X (x) Y with unit determinant to
// complex-orthogonal matrices and Bell-diagonal operators to diagonal ones
// (diagonal order Phi+, Phi-, Psi-, Psi+).
inline const Matrix4& magic_basis() {
    static const Matrix4 u = [] {
        Matrix4 m = Matrix4::Zero();
        const Complex mi(0, -1);
        m.col(0) = bell_state(0);
        m.col(1) = mi * bell_state(1);
        m.col(2) = bell_state(2);
        m.col(3) = mi * bell_state(3);
        return m;
    }();
    return u;
}

// ---------------------------------------------------------------------------
// 2x2 helpers

inline Complex det2(const Matrix2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// Rescale to unit determinant; returns the removed scalar s with m = s * result.
inline Matrix2 normalize_det(const Matrix2& m, Complex* scalar = nullptr) {
    Complex d = det2(m);
    if (std::abs(d) < 1e-300) throw NotInvertible("normalize_det: singular matrix");
    Complex s = std::sqrt(d);
    if (scalar) *scalar = s;
    return m / s;
}

// Principal square root of a Hermitian positive-definite matrix.
inline Matrix sqrt_psd(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.eigenvalues().minCoeff() <= 0)
        throw NotPositiveDefinite("sqrt_psd: matrix is not positive definite");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

inline Matrix inv_sqrt_psd(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.eigenvalues().minCoeff() <= 0)
        throw NotPositiveDefinite("inv_sqrt_psd: matrix is not positive definite");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// Pauli coefficient picture for 4x4 Hermitian operators:
//   H = sum_{mu,nu} T[mu][nu] sigma_mu (x) sigma_nu,  T real.

inline Eigen::Matrix4d pauli_coefficients(const Matrix4& h) {
    Eigen::Matrix4d t;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            Matrix4 p = kron(pauli(mu), pauli(nu));
            t(mu, nu) = ((p * h).trace() / 4.0).real();
        }
    return t;
}

inline Matrix4 from_pauli_coefficients(const Eigen::Matrix4d& t) {
    Matrix4 h = Matrix4::Zero();
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (t(mu, nu) != 0.0) h += t(mu, nu) * kron(pauli(mu), pauli(nu));
    return h;
}

// Pauli transfer matrix of conjugation: X^dag sigma_mu X = sum_nu R[mu][nu] sigma_nu.
// Real for any invertible X (X^dag sigma X is Hermitian); orthogonal 1(+)SO(3)
// block form when X is unitary with unit determinant.
inline Eigen::Matrix4d pauli_transfer(const Matrix2& x) {
    Eigen::Matrix4d r;
    for (int mu = 0; mu < 4; ++mu) {
        Matrix2 m = x.adjoint() * pauli(mu) * x;
        for (int nu = 0; nu < 4; ++nu) r(mu, nu) = ((pauli(nu) * m).trace() / 2.0).real();
    }
    return r;
}

// ---------------------------------------------------------------------------
// Random sampling (deterministic given the engine)

using Rng = std::mt19937_64;

inline Matrix random_ginibre(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

inline Matrix2 random_sl2(Rng& rng) {
    for (;;) {
        Matrix2 m = random_ginibre(2, 2, rng);
        Complex d = det2(m);
        if (std::abs(d) > 1e-3) return m / std::sqrt(d);
    }
}

inline Matrix random_unitary(int n, Rng& rng) {
    Matrix m = random_ginibre(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        Complex d = r(i, i);
        q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : 1.0);
    }
    return q;
}

// Random positive-definite 4x4 H = g^dag g from a Ginibre root, spectrum clamped
// away from zero, normalized to trace 4.
inline Matrix4 random_positive_definite4(Rng& rng, double min_eig_ratio = 0.05) {
    for (;;) {
        Matrix g = random_ginibre(4, 4, rng);
        Matrix4 h = (g.adjoint() * g);
        Eigen::SelfAdjointEigenSolver<Matrix4> es(h);
        double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
        if (lo > min_eig_ratio * hi) return 4.0 * h / h.trace().real();
    }
}

// ---------------------------------------------------------------------------
// Single-qubit Clifford group (24 elements, projective), generated by H and S.

namespace detail {
inline bool projectively_equal2(const Matrix2& a, const Matrix2& b, double tol = 1e-9) {
    Complex ip = (a.adjoint() * b).trace();
    return std::abs(std::abs(ip) / (a.norm() * b.norm()) - 1.0) <= tol;
}
}  // namespace detail

inline const std::vector<Matrix2>& clifford_group_1q() {
    static const std::vector<Matrix2> group = [] {
        const double s = 1.0 / std::sqrt(2.0);
        Matrix2 h;
        h << s, s, s, -s;
        Matrix2 sgate;
        sgate << 1, 0, 0, Complex(0, 1);
        std::vector<Matrix2> out{Matrix2::Identity()};
        for (size_t i = 0; i < out.size(); ++i) {
            for (const Matrix2* g : {&h, &sgate}) {
                Matrix2 cand = normalize_det(Matrix2(*g * out[i]));
                bool found = false;
                for (const auto& e : out)
                    if (detail::projectively_equal2(cand, e)) { found = true; break; }
                if (!found) out.push_back(cand);
            }
        }
        if (out.size() != 24) throw InternalError("clifford_group_1q: expected 24 elements");
        return out;
    }();
    return group;
}

}  // namespace netlocc
