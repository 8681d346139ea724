// Local standard form of a positive-definite two-qubit operator H: invertible
// local filters M, Mbar with (M (x) Mbar)^dag H (M (x) Mbar) Bell diagonal,
// the magic-basis diagonal arranged into one of five canonical degeneracy
// patterns:
//   NonDegenerate  diag(a,b,c,d)   descending
//   DoublePlusTwo  diag(a,a,b,c)
//   TwoDouble      diag(a,a,b,b)
//   Triple         diag(a,a,a,b)
//   FullyDegenerate diag(a,a,a,a)
//
// Construction is two-stage. Stage 1 alternates unit-determinant local
// filters rho_A^{-1/2}, rho_B^{-1/2} until both reduced operators are
// proportional to the identity (geometric convergence for full-rank H).
// Stage 2: the filtered operator is real symmetric in the magic basis; a real
// orthogonal congruence diagonalizes it, and SO(4) = SU(2) (x) SU(2) lets the
// orthogonal matrix be absorbed into refined local unitaries. Canonical
// reordering is realized by a pair of single-qubit Cliffords found by finite
// search.
#pragma once

#include <array>
#include <map>

#include "netlocc/core.hpp"
#include "netlocc/factorize.hpp"

namespace netlocc {

enum class DegClass { NonDegenerate, DoublePlusTwo, TwoDouble, Triple, FullyDegenerate };

inline std::string to_string(DegClass c) {
    switch (c) {
        case DegClass::NonDegenerate: return "NonDegenerate";
        case DegClass::DoublePlusTwo: return "DoublePlusTwo";
        case DegClass::TwoDouble: return "TwoDouble";
        case DegClass::Triple: return "Triple";
        case DegClass::FullyDegenerate: return "FullyDegenerate";
    }
    return "?";
}

inline DegClass deg_class_from_string(const std::string& s) {
    for (DegClass c : {DegClass::NonDegenerate, DegClass::DoublePlusTwo, DegClass::TwoDouble,
                       DegClass::Triple, DegClass::FullyDegenerate})
        if (to_string(c) == s) return c;
    throw ValidationError("unknown degeneracy class '" + s + "'");
}

// Default relative tolerance for grouping nearly equal eigenvalues. The
// classification is discontinuous, so this is surfaced as a CLI flag.
inline constexpr double kDegeneracyTol = 1e-6;

// ---------------------------------------------------------------------------
// 2-qubit partial traces without register machinery

inline Matrix2 trace_out_second(const Matrix4& h) {
    Matrix2 r = Matrix2::Zero();
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap)
            for (int b = 0; b < 2; ++b) r(a, ap) += h(2 * a + b, 2 * ap + b);
    return r;
}

inline Matrix2 trace_out_first(const Matrix4& h) {
    Matrix2 r = Matrix2::Zero();
    for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
            for (int a = 0; a < 2; ++a) r(b, bp) += h(2 * a + b, 2 * a + bp);
    return r;
}

// ---------------------------------------------------------------------------
// Clifford-pair realization of magic-diagonal permutations

namespace detail {

// Conjugation by C1 (x) C2 permutes a magic-basis diagonal as
// new[i] = old[sigma(i)]; the table maps sigma to one realizing pair.
struct PermTable {
    std::map<std::array<int, 4>, std::pair<int, int>> pairs;
};

inline const PermTable& clifford_perm_table() {
    static const PermTable table = [] {
        PermTable t;
        const auto& cl = clifford_group_1q();
        const Matrix4& u = magic_basis();
        for (int i = 0; i < 24 && t.pairs.size() < 24; ++i) {
            for (int j = 0; j < 24 && t.pairs.size() < 24; ++j) {
                Matrix4 o4 = u.adjoint() * kron(cl[i], cl[j]) * u;
                if (o4.imag().norm() > 1e-9) continue;
                Eigen::Matrix4d o = o4.real();
                std::array<int, 4> sigma{-1, -1, -1, -1};
                bool ok = true;
                for (int col = 0; col < 4 && ok; ++col) {
                    int hits = 0, row_of = -1;
                    for (int row = 0; row < 4; ++row) {
                        double v = std::abs(o(row, col));
                        if (v > 0.5) { ++hits; row_of = row; }
                        else if (v > 1e-9) { ok = false; }
                    }
                    if (hits != 1) ok = false;
                    if (ok) sigma[col] = row_of;
                }
                if (!ok) continue;
                t.pairs.emplace(sigma, std::make_pair(i, j));
            }
        }
        if (t.pairs.size() != 24)
            throw InternalError("clifford_perm_table: expected all 24 permutations, found " +
                                std::to_string(t.pairs.size()));
        return t;
    }();
    return table;
}

}  // namespace detail

struct Classification {
    DegClass cls;
    std::array<int, 4> perm;    // canonical[i] = eigs[perm[i]]
    Matrix2 c1, c2;             // Clifford pair realizing the reordering
    Matrix4 perm_unitary;       // c1 (x) c2
};

// Groups the four magic-basis eigenvalues within a relative tolerance and
// produces the canonical arrangement together with a product unitary realizing
// it by conjugation.
inline Classification classify(const Eigen::Vector4d& eigs, double tol = kDegeneracyTol) {
    const double scale = eigs.cwiseAbs().maxCoeff();
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return eigs(a) > eigs(b); });

    // group adjacent sorted values
    std::vector<std::vector<int>> groups;
    for (int k = 0; k < 4; ++k) {
        if (!groups.empty() &&
            std::abs(eigs(groups.back().back()) - eigs(order[k])) <= tol * scale)
            groups.back().push_back(order[k]);
        else
            groups.push_back({order[k]});
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });

    DegClass cls;
    switch (groups.size()) {
        case 1: cls = DegClass::FullyDegenerate; break;
        case 2: cls = groups[0].size() == 3 ? DegClass::Triple : DegClass::TwoDouble; break;
        case 3: cls = DegClass::DoublePlusTwo; break;
        default: cls = DegClass::NonDegenerate; break;
    }

    std::array<int, 4> perm{};
    int pos = 0;
    for (const auto& g : groups)
        for (int idx : g) perm[pos++] = idx;

    const auto& table = detail::clifford_perm_table();
    auto it = table.pairs.find(perm);
    if (it == table.pairs.end())
        throw InternalError("classify: no Clifford pair realizes the required reordering");
    const auto& cl = clifford_group_1q();
    Classification out;
    out.cls = cls;
    out.perm = perm;
    out.c1 = cl[it->second.first];
    out.c2 = cl[it->second.second];
    out.perm_unitary = kron(out.c1, out.c2);
    return out;
}

// ---------------------------------------------------------------------------
// to_magic: read off the magic-basis diagonal of a Bell-diagonal operator
// (order Phi+, Phi-, Psi-, Psi+).

inline Eigen::Vector4d to_magic(const Matrix4& h_bell, double tol = kDefaultTol) {
    Matrix4 d = magic_basis().adjoint() * h_bell * magic_basis();
    Matrix4 off = d;
    off.diagonal().setZero();
    double scale = std::max(1.0, d.norm());
    if (off.norm() > tol * scale || d.diagonal().imag().norm() > tol * scale)
        throw NotBellDiagonal("to_magic: operator is not Bell diagonal, residual " +
                              std::to_string(off.norm()));
    return d.diagonal().real();
}

inline Matrix4 bell_diagonal(const Eigen::Vector4d& eigs) {
    Vector d = eigs.cast<Complex>();
    return magic_basis() * d.asDiagonal() * magic_basis().adjoint();
}

// ---------------------------------------------------------------------------
// StandardForm

struct StandardForm {
    Eigen::Vector4d eigs;   // canonical magic-basis diagonal
    Matrix2 m_filter;       // M
    Matrix2 mbar_filter;    // Mbar
    Matrix4 perm_unitary;   // Clifford pair used for the canonical reordering
    DegClass cls;
    double bell_residual;       // off-diagonal norm of the achieved magic form
    double reconstruction_residual;
    int filter_iterations;

    Matrix4 bell_form() const { return bell_diagonal(eigs); }

    // H = (M^-1 (x) Mbar^-1)^dag H^B (M^-1 (x) Mbar^-1)
    Matrix4 reconstruct() const {
        Matrix4 inv = kron(m_filter.inverse(), mbar_filter.inverse());
        return inv.adjoint() * bell_form() * inv;
    }
};

// Bell-diagonalizes a Hermitian positive-definite 4x4 operator.
inline StandardForm bell_diagonalize(const Matrix4& h_in, double tol = kDefaultTol,
                                     double degeneracy_tol = kDegeneracyTol) {
    if (!is_hermitian(h_in, 1e-8))
        throw NotPositiveDefinite("bell_diagonalize: operator is not Hermitian");
    {
        Eigen::SelfAdjointEigenSolver<Matrix4> es(h_in);
        if (es.eigenvalues().minCoeff() <= 1e-12 * es.eigenvalues().maxCoeff())
            throw NotPositiveDefinite("bell_diagonalize: operator is not positive definite");
    }

    // Stage 1: alternate unit-determinant local filters until both marginals
    // are proportional to the identity; a Newton polish takes over once the
    // alternating phase is close (the linear rate degrades for skewed inputs).
    Matrix4 h = h_in;
    Matrix2 ga = Matrix2::Identity(), gb = Matrix2::Identity();
    // Accumulated congruences bound the reachable accuracy by cond(H) * eps.
    double cond_h;
    {
        Eigen::SelfAdjointEigenSolver<Matrix4> es(h_in);
        cond_h = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    }
    const double stage1_tol = std::max(1e-13, 1e-14 * cond_h);
    const int max_iter = 500;
    int iter = 0;
    double best_res = std::numeric_limits<double>::infinity();
    int stall = 0;

    auto marginal_residual = [](const Matrix4& m) {
        double tr = m.trace().real();
        return (trace_out_second(m) / tr - 0.5 * Matrix2::Identity()).norm() +
               (trace_out_first(m) / tr - 0.5 * Matrix2::Identity()).norm();
    };
    auto alternate_step = [&](Matrix4& m, Matrix2& fa, Matrix2& fb) {
        double tr = m.trace().real();
        Matrix2 g = inv_sqrt_psd(2.0 * trace_out_second(m) / tr);
        g /= std::sqrt(std::abs(det2(g)));
        m = kron(g, Matrix2::Identity()).adjoint() * m * kron(g, Matrix2::Identity());
        fa = fa * g;
        tr = m.trace().real();
        g = inv_sqrt_psd(2.0 * trace_out_first(m) / tr);
        g /= std::sqrt(std::abs(det2(g)));
        m = kron(Matrix2::Identity(), g).adjoint() * m * kron(Matrix2::Identity(), g);
        fb = fb * g;
    };
    // traceless Pauli parts of both marginals, the Newton residual in R^6
    auto marginal_vector = [](const Matrix4& m) {
        double tr = m.trace().real();
        Eigen::Matrix<double, 6, 1> v;
        Matrix2 ra = trace_out_second(m) / tr, rb = trace_out_first(m) / tr;
        for (int k = 0; k < 3; ++k) {
            v(k) = ((pauli(k + 1) * ra).trace()).real();
            v(3 + k) = ((pauli(k + 1) * rb).trace()).real();
        }
        return v;
    };

    for (; iter < max_iter; ++iter) {
        double res = marginal_residual(h);
        if (res < stage1_tol) break;
        if (res < best_res * 0.99) {
            best_res = res;
            stall = 0;
        } else if (++stall > 30 && best_res < 1e-8) {
            break;  // rounding floor reached; good enough for every downstream tolerance
        }
        alternate_step(h, ga, gb);
        // Newton polish on (a,b) -> marginals of (e^a (x) e^b)-filtered h
        if (iter >= 8 && marginal_residual(h) < 1e-3) {
            auto apply_delta = [&](const Matrix4& m, const Eigen::Matrix<double, 6, 1>& d,
                                   Matrix2& da, Matrix2& db) {
                Matrix2 a = Matrix2::Zero(), b = Matrix2::Zero();
                for (int k = 0; k < 3; ++k) {
                    a += d(k) * pauli(k + 1);
                    b += d(3 + k) * pauli(k + 1);
                }
                da = (Matrix2::Identity() + a);
                db = (Matrix2::Identity() + b);
                da /= std::sqrt(std::abs(det2(da)));
                db /= std::sqrt(std::abs(det2(db)));
                return Matrix4(kron(da, db).adjoint() * m * kron(da, db));
            };
            for (int newton = 0; newton < 40 && marginal_residual(h) >= stage1_tol; ++newton) {
                Eigen::Matrix<double, 6, 1> f0 = marginal_vector(h);
                Eigen::Matrix<double, 6, 6> jac;
                const double eps = 1e-7;
                for (int col = 0; col < 6; ++col) {
                    Eigen::Matrix<double, 6, 1> d = Eigen::Matrix<double, 6, 1>::Zero();
                    d(col) = eps;
                    Matrix2 da, db;
                    jac.col(col) = (marginal_vector(apply_delta(h, d, da, db)) - f0) / eps;
                }
                Eigen::Matrix<double, 6, 1> step = jac.fullPivLu().solve(-f0);
                if (!step.allFinite()) break;
                if (step.norm() > 0.5) step *= 0.5 / step.norm();
                Matrix2 da, db;
                Matrix4 trial = apply_delta(h, step, da, db);
                if (marginal_vector(trial).norm() >= f0.norm()) break;
                h = trial;
                ga = ga * da;
                gb = gb * db;
            }
            if (marginal_residual(h) < stage1_tol) break;
        }
    }
    if (iter == max_iter) {
        double res = marginal_residual(h);
        throw ConvergenceFailure("bell_diagonalize: filter iteration did not converge after " +
                                 std::to_string(max_iter) +
                                 " iterations, marginal residual " + std::to_string(res));
    }

    // Stage 2: in the magic basis the filtered operator is real symmetric.
    const Matrix4& u = magic_basis();
    Matrix4 hmb_c = u.adjoint() * h * u;
    double imag_norm = hmb_c.imag().norm();
    Eigen::Matrix4d hmb = 0.5 * (hmb_c.real() + hmb_c.real().transpose());

    Eigen::Matrix4d q;
    Eigen::Vector4d raw;
    Eigen::Matrix4d off = hmb;
    off.diagonal().setZero();
    if (off.norm() < 1e-13 * hmb.norm()) {
        q = Eigen::Matrix4d::Identity();
        raw = hmb.diagonal();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(hmb);
        q = es.eigenvectors();
        raw = es.eigenvalues();
    }
    if (q.determinant() < 0) q.col(0) *= -1.0;

    // Absorb the orthogonal congruence into local unitaries.
    Matrix2 x0 = Matrix2::Identity(), y0 = Matrix2::Identity();
    if (!q.isIdentity(1e-14)) {
        Matrix4 w = u * q.cast<Complex>() * u.adjoint();
        auto f = factor_product_operator(w, 2, 2);
        if (f.residual > 1e-9)
            throw InternalError("bell_diagonalize: SO(4) element failed to factorize, residual " +
                                std::to_string(f.residual));
        x0 = normalize_det(Matrix2(f.a));
        y0 = normalize_det(Matrix2(f.b));
    }

    Classification cl = classify(raw, degeneracy_tol);

    StandardForm sf;
    sf.cls = cl.cls;
    sf.perm_unitary = cl.perm_unitary;
    sf.m_filter = ga * x0 * cl.c1;
    sf.mbar_filter = gb * y0 * cl.c2;
    sf.filter_iterations = iter;

    Matrix4 mm = kron(sf.m_filter, sf.mbar_filter);
    Matrix4 achieved = mm.adjoint() * h_in * mm;
    Matrix4 d = u.adjoint() * achieved * u;
    Matrix4 doff = d;
    doff.diagonal().setZero();
    (void)imag_norm;
    sf.bell_residual = (doff.norm() + d.diagonal().imag().norm()) / std::max(1.0, d.norm());
    sf.eigs = d.diagonal().real();
    sf.reconstruction_residual = (sf.reconstruct() - h_in).norm() / h_in.norm();

    if (sf.bell_residual > tol)
        throw ConvergenceFailure("bell_diagonalize: Bell-diagonality residual " +
                                 std::to_string(sf.bell_residual) + " exceeds tolerance after " +
                                 std::to_string(iter) + " filter iterations");
    return sf;
}

// ---------------------------------------------------------------------------
// Commutant probe in the magic basis: the candidate symmetries O are the
// complex-orthogonal matrices commuting with (H^mb)^T H^mb; a candidate
// survives iff conjugation also preserves H^mb up to a factor.

struct CommutantProbe {
    bool commutes;
    bool preserves;
    double commutator_norm;
    double preserve_residual;
    Complex factor;
    bool ok() const { return commutes && preserves; }
};

inline CommutantProbe commutant_probe(const Eigen::Vector4d& h_mb, const Matrix4& o,
                                      double tol = kDefaultTol) {
    if ((o.transpose() * o - Matrix4::Identity()).norm() > std::max(tol, 1e-8))
        throw NotOrthogonal("commutant_probe: candidate is not complex orthogonal");
    Matrix4 m2 = (h_mb.cwiseProduct(h_mb)).cast<Complex>().asDiagonal();
    double comm = (m2 * o - o * m2).norm() / std::max(1.0, m2.norm());
    Matrix4 hm = h_mb.cast<Complex>().asDiagonal();
    Matrix4 conj = o.adjoint() * hm * o;
    auto prop = proportionality_factor(hm, conj);
    return {comm <= tol, prop.residual <= tol, comm, prop.residual, prop.factor};
}

}  // namespace netlocc
