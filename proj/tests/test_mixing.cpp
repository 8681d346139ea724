#include <catch2/catch_amalgamated.hpp>

#include "netlocc/mixing.hpp"

using namespace netlocc;

namespace {

MixingElement pair_element(const Matrix2& fwd, const Matrix2& bwd) {
    MixingElement el;
    el.x_forward = normalize_det(fwd);
    el.x_backward = normalize_det(bwd);
    return el;
}

TargetSpec twice_measuring_triangle(double a1 = 0.2, double a2 = 0.4, double c = 0.5,
                                    double alpha1 = M_PI / 8) {
    TargetSpec spec;
    spec.graph = cycle_graph(3, SourceKind::PsiMinus);
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

TEST_CASE("solve_mixing trivial identity") {
    Matrix4 h = Matrix4::Identity() + 0.25 * kron(sigma_x(), sigma_x());
    auto sol = solve_mixing(h, {pair_element(Matrix2::Identity(), Matrix2::Identity())},
                            h, 1);
    REQUIRE(sol.has_value());
    REQUIRE(std::abs(sol->probabilities(0) - 1.0) < 1e-10);
    REQUIRE(std::abs(sol->r - 1.0) < 1e-10);
    REQUIRE(sol->residual < 1e-10);
}

TEST_CASE("solve_mixing flips away the zz component") {
    Matrix4 h = Matrix4::Identity() + 0.3 * kron(sigma_z(), sigma_z());
    std::vector<MixingElement> cols = {
        pair_element(Matrix2::Identity(), Matrix2::Identity()),
        pair_element(Matrix2::Identity(), sigma_y())};
    auto sol = solve_mixing(h, cols, Matrix4::Identity(), 1);
    REQUIRE(sol.has_value());
    REQUIRE(sol->probabilities.size() == 2);
    REQUIRE(std::abs(sol->probabilities(0) - 0.5) < 1e-8);
    REQUIRE(std::abs(sol->probabilities(1) - 0.5) < 1e-8);
    REQUIRE(std::abs(sol->r - 1.0) < 1e-8);
    REQUIRE(sol->residual < 1e-9);

    // no mixture of these two candidates reaches a different product target
    Matrix2 p = (Matrix2() << 1.2, 0, 0, 1.0 / 1.2).finished();
    auto bad = solve_mixing(h, cols, Matrix4(kron(Matrix2(p * p), Matrix2::Identity())), 1);
    REQUIRE_FALSE(bad.has_value());
}

TEST_CASE("check_not_proportional") {
    Matrix4 id = Matrix4::Identity();
    std::vector<MixingElement> cols = {
        pair_element(Matrix2::Identity(), Matrix2::Identity()),
        pair_element(sigma_x(), sigma_y())};
    REQUIRE_FALSE(check_not_proportional(id, cols));

    Matrix4 h = Matrix4::Identity() + 0.3 * kron(sigma_z(), sigma_z());
    std::vector<MixingElement> cols2 = {
        pair_element(Matrix2::Identity(), Matrix2::Identity()),
        pair_element(Matrix2::Identity(), sigma_y())};
    REQUIRE(check_not_proportional(h, cols2));
}

TEST_CASE("pauli pairs move the rotated two-double operator") {
    // the (sigma_y, sigma_y) pair flips the cross terms of w (x) w, so the
    // twice-measuring family at party 3 does violate proportionality
    TargetSpec spec = twice_measuring_triangle();
    Matrix4 h3 = spec.party_h[3];
    std::vector<MixingElement> pauli_cols;
    for (int a = 0; a < 4; ++a) pauli_cols.push_back(pair_element(pauli(a), pauli(a)));
    REQUIRE(check_not_proportional(h3, pauli_cols));
    REQUIRE(stabilizer_residual(h3, sigma_x(), sigma_x()) < 1e-12);
    REQUIRE(stabilizer_residual(h3, sigma_y(), sigma_y()) > 1e-3);
}

TEST_CASE("decide_party: zz target against free parties is feasible with G = 1") {
    TargetSpec spec;
    spec.graph = cycle_graph(3, SourceKind::PsiMinus);
    spec.party_h[1] = Matrix4::Identity() + 0.3 * kron(sigma_z(), sigma_z());
    auto fam = final_round_candidates(spec, 1);
    auto dec = decide_party(spec, 1, fam);
    REQUIRE(dec.kind == PartyDecision::Kind::Feasible);
    REQUIRE(proportional(dec.g, Matrix4::Identity(), 1e-7));
    REQUIRE(dec.mixing.residual < 1e-8);
    REQUIRE(std::abs(dec.mixing.probabilities.sum() - 1.0) < 1e-10);
    // defining equation holds
    Matrix4 mixed = Matrix4::Zero();
    for (size_t i = 0; i < dec.mixing.elements.size(); ++i) {
        Matrix4 s = kron(dec.mixing.elements[i].x_forward,
                         dec.mixing.elements[i].x_backward);
        mixed += dec.mixing.probabilities(i) *
                 (s.adjoint() * spec.party_h[1] * s);
    }
    REQUIRE((mixed - dec.mixing.r * dec.g).norm() / mixed.norm() < 1e-8);
}

TEST_CASE("decide_party: trivial product targets") {
    Rng rng(811);
    TargetSpec spec;
    spec.graph = cycle_graph(3, SourceKind::PsiMinus);
    Matrix2 c = random_sl2(rng), d = random_sl2(rng);
    spec.party_h[1] = kron(Matrix2(c.adjoint() * c), Matrix2(d.adjoint() * d));
    auto fam = final_round_candidates(spec, 1);
    auto dec = decide_party(spec, 1, fam);
    REQUIRE(dec.kind == PartyDecision::Kind::Feasible);
    REQUIRE(proportional(dec.g, spec.party_h[1], 1e-6));
}

TEST_CASE("decide_party certifies the twice-measuring triangle at every k") {
    TargetSpec spec = twice_measuring_triangle();
    for (int k = 1; k <= 3; ++k) {
        auto fam = final_round_candidates(spec, k);
        auto dec = decide_party(spec, k, fam);
        INFO("party " << k << ": " << dec.note);
        REQUIRE(dec.kind == PartyDecision::Kind::CertifiedInfeasible);
        REQUIRE(dec.certificate_margin > 0);
    }
}

TEST_CASE("bell correlation diagonal") {
    // I + a1 xx + a2 yy has magic eigs (1+a1-a2, 1-a1+a2, 1-a1-a2, 1+a1+a2)
    Eigen::Vector4d eigs(0.8, 1.2, 0.4, 1.6);
    Eigen::Vector3d tau = bell_correlation_diagonal(eigs);
    REQUIRE(std::abs(tau(0) - 0.2) < 1e-12);
    REQUIRE(std::abs(tau(1) - 0.4) < 1e-12);
    REQUIRE(std::abs(tau(2) - 0.0) < 1e-12);
}

TEST_CASE("trig poly lower bound is safe") {
    bool ok = false;
    auto g1 = [](const double* a) { return 2.0 + std::cos(2 * a[0]); };
    double lb = cert::trig_poly_lower_bound(g1, 1, 2, &ok);
    REQUIRE(ok);
    REQUIRE(lb > 0.99);
    REQUIRE(lb <= 1.0 + 1e-9);

    auto g2 = [](const double* a) { return 0.5 - std::cos(4 * a[0]); };
    lb = cert::trig_poly_lower_bound(g2, 1, 4, &ok);
    REQUIRE(ok);
    REQUIRE(lb <= -0.5 + 1e-6);

    // wrong assumed degree is detected
    auto g3 = [](const double* a) { return std::cos(6 * a[0]); };
    lb = cert::trig_poly_lower_bound(g3, 1, 4, &ok);
    REQUIRE_FALSE(ok);
}
