#include <catch2/catch_amalgamated.hpp>

#include "netlocc/standard_form.hpp"

using namespace netlocc;

namespace {
Matrix4 xxyy(double a1, double a2) {
    return Matrix4::Identity() + a1 * kron(sigma_x(), sigma_x()) +
           a2 * kron(sigma_y(), sigma_y());
}
}

TEST_CASE("to_magic on simple Bell-diagonal operators") {
    REQUIRE((to_magic(Matrix4::Identity()) - Eigen::Vector4d::Ones()).norm() < 1e-14);

    const double c = 0.3;
    Eigen::Vector4d zz = to_magic(Matrix4::Identity() + c * kron(sigma_z(), sigma_z()));
    Eigen::Vector4d zz_expect(1 + c, 1 + c, 1 - c, 1 - c);
    REQUIRE((zz - zz_expect).norm() < 1e-13);

    const double a1 = 0.2, a2 = 0.4;
    Eigen::Vector4d v = to_magic(xxyy(a1, a2));
    Eigen::Vector4d expect(1 + a1 - a2, 1 - a1 + a2, 1 - a1 - a2, 1 + a1 + a2);
    REQUIRE((v - expect).norm() < 1e-13);

    REQUIRE_THROWS_AS(to_magic(Matrix4(kron(sigma_z(), Matrix2::Identity()))), NotBellDiagonal);
}

TEST_CASE("classify patterns") {
    auto c = classify(Eigen::Vector4d(1, 1, 1, 1));
    REQUIRE(c.cls == DegClass::FullyDegenerate);

    c = classify(Eigen::Vector4d(0.8, 1.2, 1.6, 0.4));
    REQUIRE(c.cls == DegClass::NonDegenerate);
    // canonical order descending
    Eigen::Vector4d in(0.8, 1.2, 1.6, 0.4);
    for (int i = 0; i + 1 < 4; ++i) REQUIRE(in(c.perm[i]) >= in(c.perm[i + 1]));

    c = classify(Eigen::Vector4d(1.4, 0.6, 1.4, 0.6));
    REQUIRE(c.cls == DegClass::TwoDouble);
    Eigen::Vector4d tw(1.4, 0.6, 1.4, 0.6);
    REQUIRE(tw(c.perm[0]) == tw(c.perm[1]));
    REQUIRE(tw(c.perm[2]) == tw(c.perm[3]));
    REQUIRE(tw(c.perm[0]) > tw(c.perm[2]));

    c = classify(Eigen::Vector4d(1.0, 2.0, 1.0, 0.5));
    REQUIRE(c.cls == DegClass::DoublePlusTwo);
    c = classify(Eigen::Vector4d(1.0, 1.0, 1.0, 0.5));
    REQUIRE(c.cls == DegClass::Triple);
}

TEST_CASE("classify is invariant under input permutations") {
    Eigen::Vector4d base(0.8, 0.8, 1.3, 0.4);
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end());
    do {
        Eigen::Vector4d p;
        for (int i = 0; i < 4; ++i) p(i) = base(idx[i]);
        auto c = classify(p);
        REQUIRE(c.cls == DegClass::DoublePlusTwo);
        Eigen::Vector4d canon;
        for (int i = 0; i < 4; ++i) canon(i) = p(c.perm[i]);
        REQUIRE(canon(0) == canon(1));
    } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST_CASE("classify's permutation unitary really permutes the magic diagonal") {
    Rng rng(307);
    std::uniform_real_distribution<double> u(0.3, 1.7);
    for (int t = 0; t < 25; ++t) {
        Eigen::Vector4d eigs(u(rng), u(rng), u(rng), u(rng));
        auto c = classify(eigs);
        Matrix4 h = bell_diagonal(eigs);
        Matrix4 moved = c.perm_unitary.adjoint() * h * c.perm_unitary;
        Eigen::Vector4d got = to_magic(moved, 1e-8);
        Eigen::Vector4d want;
        for (int i = 0; i < 4; ++i) want(i) = eigs(c.perm[i]);
        REQUIRE((got - want).norm() < 1e-10);
    }
}

TEST_CASE("bell_diagonalize identity") {
    auto sf = bell_diagonalize(Matrix4::Identity());
    REQUIRE(sf.cls == DegClass::FullyDegenerate);
    REQUIRE((sf.eigs - Eigen::Vector4d::Ones()).norm() < 1e-12);
    REQUIRE(proportional(sf.m_filter, Matrix2::Identity(), 1e-9));
    REQUIRE(proportional(sf.mbar_filter, Matrix2::Identity(), 1e-9));
}

TEST_CASE("bell_diagonalize of I + 0.4 zz short-circuits with identity filters") {
    Matrix4 h = Matrix4::Identity() + 0.4 * kron(sigma_z(), sigma_z());
    auto sf = bell_diagonalize(h);
    REQUIRE(sf.cls == DegClass::TwoDouble);
    REQUIRE((sf.eigs - Eigen::Vector4d(1.4, 1.4, 0.6, 0.6)).norm() < 1e-12);
    REQUIRE(proportional(sf.m_filter, Matrix2::Identity(), 1e-9));
    REQUIRE(proportional(sf.mbar_filter, Matrix2::Identity(), 1e-9));
    REQUIRE(sf.reconstruction_residual < 1e-10);
}

TEST_CASE("bell_diagonalize recovers a filtered nondegenerate operator") {
    Rng rng(311);
    const Eigen::Vector4d base(0.8, 1.2, 0.4, 1.6);  // magic diag of I+0.2xx+0.4yy
    for (int t = 0; t < 25; ++t) {
        Matrix2 k = random_sl2(rng), l = random_sl2(rng);
        Matrix4 kl = kron(k, l);
        Matrix4 h = kl.adjoint() * xxyy(0.2, 0.4) * kl;
        auto sf = bell_diagonalize(h);
        REQUIRE(sf.cls == DegClass::NonDegenerate);
        Eigen::Vector4d sorted_base = base, got = sf.eigs;
        std::sort(sorted_base.data(), sorted_base.data() + 4);
        std::sort(got.data(), got.data() + 4);
        REQUIRE((sorted_base - got).norm() < 1e-8);
        REQUIRE(sf.bell_residual < 1e-9);
        REQUIRE(sf.reconstruction_residual < 1e-8);
    }
}

TEST_CASE("bell_diagonalize round trips random positive definite operators") {
    Rng rng(313);
    for (int t = 0; t < 100; ++t) {
        Matrix4 h = random_positive_definite4(rng);
        auto sf = bell_diagonalize(h);
        REQUIRE(sf.bell_residual < 1e-8);
        REQUIRE(sf.reconstruction_residual < 1e-8);
        REQUIRE(sf.eigs.minCoeff() > 0);
    }
}

TEST_CASE("bell_diagonalize rejects bad input") {
    REQUIRE_THROWS_AS(bell_diagonalize(Matrix4(kron(sigma_z(), sigma_z()))),
                      NotPositiveDefinite);
    Matrix4 nh = Matrix4::Zero();
    nh(0, 1) = 1;
    REQUIRE_THROWS_AS(bell_diagonalize(nh), NotPositiveDefinite);
}

TEST_CASE("commutant probe") {
    REQUIRE(commutant_probe(Eigen::Vector4d(0.8, 1.2, 1.6, 0.4), Matrix4::Identity()).ok());

    const Matrix4& u = magic_basis();
    Matrix4 o = u.adjoint() * kron(sigma_x(), sigma_x()) * u;
    auto probe = commutant_probe(Eigen::Vector4d(0.8, 1.2, 1.6, 0.4), o);
    REQUIRE(probe.ok());
    REQUIRE(std::abs(probe.factor - Complex(1, 0)) < 1e-10);

    // generic rotation in the (1,2) plane does not commute with a distinct diagonal
    Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
    const double th = 0.3;
    rot(0, 0) = std::cos(th); rot(0, 1) = -std::sin(th);
    rot(1, 0) = std::sin(th); rot(1, 1) = std::cos(th);
    auto probe2 = commutant_probe(Eigen::Vector4d(0.8, 1.2, 1.6, 0.4),
                                  Matrix4(rot.cast<Complex>()));
    REQUIRE_FALSE(probe2.ok());
    REQUIRE(probe2.commutator_norm > 1e-3);

    Matrix4 notorth = Matrix4::Identity();
    notorth(0, 1) = 1.0;
    REQUIRE_THROWS_AS(commutant_probe(Eigen::Vector4d::Ones(), notorth), NotOrthogonal);
}
