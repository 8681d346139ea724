#include <catch2/catch_amalgamated.hpp>

#include "netlocc/core.hpp"
#include "netlocc/register.hpp"

using namespace netlocc;

namespace {
QubitRegister two() { return QubitRegister({"e1^1", "e1^2"}); }
}

TEST_CASE("register rejects duplicates and unknown labels") {
    REQUIRE_THROWS_AS(QubitRegister({"a", "a"}), ValidationError);
    REQUIRE_THROWS_AS(two().position("zz"), ValidationError);
}

TEST_CASE("embed single-qubit operator") {
    Matrix m = embed(sigma_x(), {"e1^1"}, two());
    REQUIRE((m - kron(sigma_x(), Matrix2::Identity())).norm() < 1e-15);
    m = embed(sigma_x(), {"e1^2"}, two());
    REQUIRE((m - kron(Matrix2::Identity(), sigma_x())).norm() < 1e-15);
}

TEST_CASE("embed respects label order") {
    Matrix a = embed(kron(sigma_x(), sigma_y()), {"e1^2", "e1^1"}, two());
    Matrix b = embed(kron(sigma_y(), sigma_x()), {"e1^1", "e1^2"}, two());
    REQUIRE((a - b).norm() < 1e-15);
}

TEST_CASE("embed errors") {
    REQUIRE_THROWS_AS(embed(sigma_x(), {"nope"}, two()), ValidationError);
    REQUIRE_THROWS_AS(embed(Matrix::Identity(4, 4), {"e1^1"}, two()), ValidationError);
}

TEST_CASE("embed then multiply equals multiply then embed on disjoint supports") {
    Rng rng(17);
    QubitRegister reg({"q0", "q1", "q2"});
    for (int t = 0; t < 20; ++t) {
        Matrix a = random_ginibre(2, 2, rng), b = random_ginibre(2, 2, rng);
        Matrix ea = embed(a, {"q0"}, reg), eb = embed(b, {"q2"}, reg);
        REQUIRE((ea * eb - eb * ea).norm() < 1e-12);
        REQUIRE((ea * eb - embed(kron(a, b), {"q0", "q2"}, reg)).norm() < 1e-12);
    }
}

TEST_CASE("apply_local agrees with embed") {
    Rng rng(23);
    QubitRegister reg({"q0", "q1", "q2"});
    Vector amps = random_ginibre(8, 1, rng).col(0);
    amps.normalize();
    Matrix op = random_ginibre(4, 4, rng);
    PureState s(reg, amps);
    apply_local(s, op, {"q2", "q0"});
    Vector direct = embed(op, {"q2", "q0"}, reg) * amps;
    REQUIRE((s.amplitudes - direct).norm() < 1e-12);
}

TEST_CASE("partial trace basics") {
    QubitRegister reg = two();
    Matrix r = partial_trace(Matrix::Identity(4, 4), {"e1^1"}, reg);
    REQUIRE((r - 2.0 * Matrix2::Identity()).norm() < 1e-14);

    Vector phi = bell_state(0);
    Matrix proj = phi * phi.adjoint();
    for (const char* q : {"e1^1", "e1^2"}) {
        Matrix red = partial_trace(proj, {q}, reg);
        REQUIRE((red - 0.5 * Matrix2::Identity()).norm() < 1e-14);
    }

    Matrix h = Matrix::Identity(4, 4) + 0.4 * kron(sigma_z(), sigma_z());
    REQUIRE((partial_trace(h, {"e1^1"}, reg) - 2.0 * Matrix2::Identity()).norm() < 1e-14);
}

TEST_CASE("partial trace commutes with operators outside the traced qubits") {
    Rng rng(31);
    QubitRegister reg({"q0", "q1", "q2"});
    for (int t = 0; t < 10; ++t) {
        Matrix rho = random_ginibre(8, 8, rng);
        rho = rho * rho.adjoint();
        Matrix v = random_unitary(4, rng);  // acts on q0,q1; trace out q2
        Matrix big = embed(v, {"q0", "q1"}, reg);
        Matrix lhs = partial_trace(big * rho * big.adjoint(), {"q2"}, reg);
        Matrix rhs = v * partial_trace(rho, {"q2"}, reg) * v.adjoint();
        REQUIRE((lhs - rhs).norm() / rhs.norm() < 1e-10);
    }
}

TEST_CASE("partial transpose") {
    QubitRegister reg = two();
    Rng rng(41);
    Matrix m = random_ginibre(4, 4, rng);
    Matrix twice = partial_transpose(partial_transpose(m, {"e1^2"}, reg), {"e1^2"}, reg);
    REQUIRE((twice - m).norm() < 1e-14);

    Matrix sy = embed(sigma_y(), {"e1^1"}, reg);
    REQUIRE((partial_transpose(sy, {"e1^1"}, reg) + sy).norm() < 1e-14);

    Vector phi = bell_state(0);
    Matrix pt = partial_transpose(Matrix(phi * phi.adjoint()), {"e1^2"}, reg);
    Eigen::SelfAdjointEigenSolver<Matrix> es(pt);
    REQUIRE(std::abs(es.eigenvalues().minCoeff() + 0.5) < 1e-12);
}

TEST_CASE("reorder permutes amplitudes consistently") {
    Rng rng(43);
    QubitRegister reg({"a", "b", "c"});
    Vector amps = random_ginibre(8, 1, rng).col(0);
    PureState s(reg, amps);
    PureState r = reorder(s, QubitRegister({"c", "a", "b"}));
    // amplitude of |a=1,b=0,c=1> must be preserved under relabeling
    // index in (a,b,c): 101 -> 5 ; in (c,a,b): 110 -> 6
    REQUIRE(std::abs(r.amplitudes(6) - amps(5)) < 1e-15);
    PureState back = reorder(r, reg);
    REQUIRE((back.amplitudes - amps).norm() < 1e-15);
}

TEST_CASE("states_equal_up_to_phase") {
    QubitRegister reg = two();
    PureState a(reg, bell_state(0));
    PureState b(reg, std::polar(1.0, 0.7) * bell_state(0));
    double fid = 0;
    REQUIRE(states_equal_up_to_phase(a, b, 1e-10, &fid));
    REQUIRE(std::abs(fid - 1.0) < 1e-12);

    PureState c(reg, bell_state(2));
    REQUIRE_FALSE(states_equal_up_to_phase(a, c, 1e-10, &fid));
    REQUIRE(fid < 1e-12);
}
