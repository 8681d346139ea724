#include <catch2/catch_amalgamated.hpp>

#include "netlocc/reachability.hpp"

using namespace netlocc;

namespace {

TargetSpec twice_measuring_triangle_phiplus(double a1 = 0.2, double a2 = 0.4,
                                            double c = 0.5, double alpha1 = M_PI / 8) {
    TargetSpec spec;
    spec.graph = cycle_graph(3, SourceKind::PhiPlus);
    Matrix4 hxy = Matrix4::Identity() + a1 * kron(sigma_x(), sigma_x()) +
                  a2 * kron(sigma_y(), sigma_y());
    spec.party_h[1] = hxy;
    spec.party_h[2] = hxy;
    Matrix2 u1 = x_rotation(alpha1);
    Matrix4 uu = kron(u1, u1);
    spec.party_h[3] =
        uu.adjoint() * (Matrix4::Identity() + c * kron(sigma_z(), sigma_z())) * uu;
    return spec;
}

}  // namespace

TEST_CASE("identity targets are simple-reachable") {
    TargetSpec spec;
    spec.graph = cycle_graph(3, SourceKind::PsiMinus);
    auto v = check_simple_reachable(spec);
    REQUIRE(v.status == ReachStatus::SimpleReachable);
    REQUIRE(v.party_k == 1);  // smallest k wins
}

TEST_CASE("zz triangle target is simple-reachable at party 1") {
    TargetSpec spec;
    spec.graph = cycle_graph(3, SourceKind::PsiMinus);
    spec.party_h[1] = Matrix4::Identity() + 0.3 * kron(sigma_z(), sigma_z());
    auto v = check_simple_reachable(spec);
    REQUIRE(v.status == ReachStatus::SimpleReachable);
    REQUIRE(v.party_k == 1);
    REQUIRE(v.mixing.has_value());
    REQUIRE(v.mixing->residual < 1e-8);
}

TEST_CASE("twice-measuring triangle is not simple-reachable") {
    auto v = check_simple_reachable(twice_measuring_triangle_phiplus());
    REQUIRE(v.status == ReachStatus::NotSimpleReachable);
}

TEST_CASE("phi+ and psi- conventions agree on verdicts") {
    TargetSpec spec;
    spec.graph = cycle_graph(3, SourceKind::PhiPlus);
    spec.party_h[2] = Matrix4::Identity() + 0.25 * kron(sigma_z(), sigma_z());
    auto v = check_simple_reachable(spec);
    REQUIRE(v.status == ReachStatus::SimpleReachable);
    REQUIRE(v.party_k == 2);
}

TEST_CASE("decide_reachability applies the trace certificate first") {
    TargetSpec spec;
    spec.graph = cycle_graph(3, SourceKind::PsiMinus);
    for (int p = 1; p <= 3; ++p)
        spec.party_h[p] = 0.25 * Matrix4::Identity() + 0.1 * kron(sigma_z(), sigma_z());
    auto v = decide_reachability(spec);
    REQUIRE(v.status == ReachStatus::Unreachable);
    REQUIRE(v.residuals.at("alpha_product") > 0);

    // flipping one sign silences the certificate
    spec.party_h[2] = 0.25 * Matrix4::Identity() - 0.1 * kron(sigma_z(), sigma_z());
    auto v2 = decide_reachability(spec);
    REQUIRE(v2.status != ReachStatus::Unreachable);
}

TEST_CASE("4-cycle certificate instance") {
    TargetSpec spec;
    spec.graph = cycle_graph(4, SourceKind::PsiMinus);
    std::vector<double> alphas = {0.2, 0.2, 0.05, 0.05};
    for (int p = 1; p <= 4; ++p)
        spec.party_h[p] =
            0.25 * Matrix4::Identity() + alphas[p - 1] * kron(sigma_z(), sigma_z());
    auto v = decide_reachability(spec);
    REQUIRE(v.status == ReachStatus::Unreachable);
}

TEST_CASE("non-cycle graphs are rejected") {
    TargetSpec spec;
    spec.graph = NetworkGraph({1, 2, 3}, {{1, 1, 2, SourceKind::PsiMinus},
                                          {2, 2, 3, SourceKind::PsiMinus}});
    REQUIRE_THROWS_AS(check_simple_reachable(spec), NotACycle);
}
