#include <catch2/catch_amalgamated.hpp>

#include "netlocc/core.hpp"

using namespace netlocc;

TEST_CASE("kron basics") {
    Matrix i2 = Matrix2::Identity();
    REQUIRE((kron(i2, i2) - Matrix::Identity(4, 4)).norm() < 1e-15);

    Matrix zz = kron(sigma_z(), sigma_z());
    Vector d(4);
    d << 1, -1, -1, 1;
    REQUIRE((zz - Matrix(d.asDiagonal())).norm() < 1e-15);
}

TEST_CASE("sigma_y (x) sigma_y negates Phi+") {
    Vector phi = bell_state(0);
    Vector out = kron(sigma_y(), sigma_y()) * phi;
    REQUIRE((out + phi).norm() < 1e-15);
}

TEST_CASE("Bell eigenvalues of the Pauli pairs") {
    // oracle: direct application of sigma_i (x) sigma_i to each Bell ket
    const int xx_expected[4] = {+1, -1, -1, +1};
    const int yy_expected[4] = {-1, +1, -1, +1};
    const int zz_expected[4] = {+1, +1, -1, -1};
    for (int b = 0; b < 4; ++b) {
        Vector v = bell_state(b);
        REQUIRE((kron(sigma_x(), sigma_x()) * v - double(xx_expected[b]) * v).norm() < 1e-15);
        REQUIRE((kron(sigma_y(), sigma_y()) * v - double(yy_expected[b]) * v).norm() < 1e-15);
        REQUIRE((kron(sigma_z(), sigma_z()) * v - double(zz_expected[b]) * v).norm() < 1e-15);
    }
}

TEST_CASE("magic basis is unitary and diagonalizes sigma_z (x) sigma_z") {
    const Matrix4& u = magic_basis();
    REQUIRE((u.adjoint() * u - Matrix4::Identity()).norm() < 1e-14);

    Matrix4 d = u.adjoint() * kron(sigma_z(), sigma_z()) * u;
    Vector expect(4);
    expect << 1, 1, -1, -1;  // zz Bell eigenvalues in magic order Phi+, Phi-, Psi-, Psi+
    REQUIRE((d - Matrix(expect.asDiagonal())).norm() < 1e-13);
}

TEST_CASE("magic conjugation maps SL(2)x SL(2) to complex orthogonal") {
    Rng rng(7);
    const Matrix4& u = magic_basis();
    for (int trial = 0; trial < 50; ++trial) {
        Matrix2 x = random_sl2(rng), y = random_sl2(rng);
        Matrix o = u.adjoint() * kron(x, y) * u;
        REQUIRE((o.transpose() * o - Matrix4::Identity()).norm() < 1e-10);
    }
}

TEST_CASE("magic conjugation diagonalizes Bell-diagonal combinations") {
    Rng rng(11);
    std::uniform_real_distribution<double> c(-0.2, 0.2);
    const Matrix4& u = magic_basis();
    for (int trial = 0; trial < 20; ++trial) {
        Matrix4 h = Matrix4::Identity();
        h += c(rng) * kron(sigma_x(), sigma_x());
        h += c(rng) * kron(sigma_y(), sigma_y());
        h += c(rng) * kron(sigma_z(), sigma_z());
        Matrix4 d = u.adjoint() * h * u;
        Matrix4 off = d;
        off.diagonal().setZero();
        REQUIRE(off.norm() < 1e-12);
        REQUIRE(d.diagonal().imag().norm() < 1e-13);
    }
}

TEST_CASE("predicates") {
    REQUIRE(is_hermitian(Matrix(kron(sigma_x(), sigma_x()))));
    REQUIRE(is_unitary(Matrix(magic_basis())));
    REQUIRE(is_positive_definite(Matrix4::Identity() + 0.4 * kron(sigma_z(), sigma_z())));
    REQUIRE_FALSE(is_positive_definite(Matrix(kron(sigma_z(), sigma_z()))));
    REQUIRE(is_unitary_up_to_scale(Matrix(Complex(0, 2.0) * sigma_y())));
    REQUIRE_FALSE(is_unitary_up_to_scale(Matrix((Matrix2() << 1, 0, 0, 2).finished())));
}

TEST_CASE("pauli coefficient round trip") {
    Rng rng(3);
    Matrix4 h = random_positive_definite4(rng);
    auto t = pauli_coefficients(h);
    REQUIRE((from_pauli_coefficients(t) - h).norm() < 1e-12);
}

TEST_CASE("pauli transfer matrix of a unitary is orthogonal with trivial first row") {
    Rng rng(5);
    Matrix2 v = random_unitary(2, rng);
    auto r = pauli_transfer(v);
    REQUIRE((r * r.transpose() - Eigen::Matrix4d::Identity()).norm() < 1e-12);
    REQUIRE(std::abs(r(0, 0) - 1.0) < 1e-12);
    REQUIRE(r.row(0).tail(3).norm() < 1e-12);
    REQUIRE(r.col(0).tail(3).norm() < 1e-12);
}

TEST_CASE("clifford group has 24 projective elements") {
    const auto& g = clifford_group_1q();
    REQUIRE(g.size() == 24);
    for (const auto& c : g) REQUIRE(std::abs(det2(c) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("phase and x rotations") {
    Matrix2 z = phase_rotation(0.3);
    REQUIRE(std::abs(z(0, 0) - std::polar(1.0, 0.3)) < 1e-15);
    Matrix2 x = x_rotation(0.4);
    REQUIRE((x * x.adjoint() - Matrix2::Identity()).norm() < 1e-14);
    REQUIRE(std::abs(det2(x) - Complex(1, 0)) < 1e-14);
}
