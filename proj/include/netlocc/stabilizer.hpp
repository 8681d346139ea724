// Local operator pairs X (x) Y with (X (x) Y)^dag H (X (x) Y) proportional to
// H, for a positive-definite two-qubit H. In the standard-form frame the
// group depends only on the degeneracy pattern:
//   NonDegenerate   (sigma_a, sigma_a), a = 0..3
//   DoublePlusTwo   (Z(phi) sx^k, Z(phi) sx^k)
//   TwoDouble       (Z(phi1) sx^k, Z(phi2) sx^k), independent angles
//   Triple          (W, sz W sz), W in SU(2)
//   FullyDegenerate independent unitaries
// and pulls back through X = M X~ M^{-1}, Y = Mbar Y~ Mbar^{-1}.
#pragma once

#include "netlocc/sets.hpp"
#include "netlocc/standard_form.hpp"

namespace netlocc {

// Least-squares proportionality residual of Eq-style stabilizer checks.
inline double stabilizer_residual(const Matrix4& h, const Matrix2& x, const Matrix2& y,
                                  Complex* factor = nullptr) {
    Matrix4 s = kron(x, y);
    Matrix4 conj = s.adjoint() * h * s;
    auto prop = proportionality_factor(h, conj);
    if (factor) *factor = prop.factor;
    return (conj - prop.factor * h).norm() / h.norm();
}

struct StabilizerGroup {
    DegClass cls;
    Matrix2 m, mbar;        // filters of the underlying standard form
    Eigen::Vector4d eigs;   // canonical magic diagonal

    // Value sets of the two slots in the original frame.
    std::vector<MatrixSet> x_marginal() const {
        Matrix2 mi = m.inverse();
        switch (cls) {
            case DegClass::NonDegenerate: {
                std::vector<Matrix2> els;
                for (int a = 0; a < 4; ++a) els.push_back(m * pauli(a) * mi);
                return {MatrixSet::finite(els)};
            }
            case DegClass::DoublePlusTwo:
            case DegClass::TwoDouble:
                return {MatrixSet::circle(m, mi), MatrixSet::circle(m, sigma_x() * mi)};
            case DegClass::Triple:
            case DegClass::FullyDegenerate:
                return {MatrixSet::uconj(m)};
        }
        return {};
    }

    std::vector<MatrixSet> y_marginal() const {
        Matrix2 mbi = mbar.inverse();
        switch (cls) {
            case DegClass::NonDegenerate: {
                std::vector<Matrix2> els;
                for (int a = 0; a < 4; ++a) els.push_back(mbar * pauli(a) * mbi);
                return {MatrixSet::finite(els)};
            }
            case DegClass::DoublePlusTwo:
            case DegClass::TwoDouble:
                return {MatrixSet::circle(mbar, mbi), MatrixSet::circle(mbar, sigma_x() * mbi)};
            case DegClass::Triple:
            case DegClass::FullyDegenerate:
                return {MatrixSet::uconj(mbar)};
        }
        return {};
    }

    // Compatible partners for a given slot value (union of sets; empty means
    // the value is not a member of its marginal).
    std::vector<MatrixSet> compatible_y(const Matrix2& x, double tol = 1e-9) const {
        Matrix2 xt = m.inverse() * x * m;  // standard-frame value
        switch (cls) {
            case DegClass::NonDegenerate:
                for (int a = 0; a < 4; ++a)
                    if (proj_equal(xt, pauli(a), tol))
                        return {MatrixSet::finite({Matrix2(mbar * pauli(a) * mbar.inverse())})};
                return {};
            case DegClass::DoublePlusTwo: {
                MatrixSet d0 = MatrixSet::circle(Matrix2::Identity(), Matrix2::Identity());
                MatrixSet d1 = MatrixSet::circle(Matrix2::Identity(), sigma_x());
                if (d0.contains(xt, tol) || d1.contains(xt, tol))
                    return {MatrixSet::finite({Matrix2(mbar * xt * mbar.inverse())})};
                return {};
            }
            case DegClass::TwoDouble: {
                MatrixSet d0 = MatrixSet::circle(Matrix2::Identity(), Matrix2::Identity());
                MatrixSet d1 = MatrixSet::circle(Matrix2::Identity(), sigma_x());
                if (d0.contains(xt, tol))
                    return {MatrixSet::circle(mbar, mbar.inverse())};
                if (d1.contains(xt, tol))
                    return {MatrixSet::circle(mbar, sigma_x() * mbar.inverse())};
                return {};
            }
            case DegClass::Triple:
                if (!is_unitary_up_to_scale(xt, tol)) return {};
                return {MatrixSet::finite(
                    {Matrix2(mbar * sigma_z() * xt * sigma_z() * mbar.inverse())})};
            case DegClass::FullyDegenerate:
                if (!is_unitary_up_to_scale(xt, tol)) return {};
                return {MatrixSet::uconj(mbar)};
        }
        return {};
    }

    std::vector<MatrixSet> compatible_x(const Matrix2& y, double tol = 1e-9) const {
        Matrix2 yt = mbar.inverse() * y * mbar;
        switch (cls) {
            case DegClass::NonDegenerate:
                for (int a = 0; a < 4; ++a)
                    if (proj_equal(yt, pauli(a), tol))
                        return {MatrixSet::finite({Matrix2(m * pauli(a) * m.inverse())})};
                return {};
            case DegClass::DoublePlusTwo: {
                MatrixSet d0 = MatrixSet::circle(Matrix2::Identity(), Matrix2::Identity());
                MatrixSet d1 = MatrixSet::circle(Matrix2::Identity(), sigma_x());
                if (d0.contains(yt, tol) || d1.contains(yt, tol))
                    return {MatrixSet::finite({Matrix2(m * yt * m.inverse())})};
                return {};
            }
            case DegClass::TwoDouble: {
                MatrixSet d0 = MatrixSet::circle(Matrix2::Identity(), Matrix2::Identity());
                MatrixSet d1 = MatrixSet::circle(Matrix2::Identity(), sigma_x());
                if (d0.contains(yt, tol)) return {MatrixSet::circle(m, m.inverse())};
                if (d1.contains(yt, tol)) return {MatrixSet::circle(m, sigma_x() * m.inverse())};
                return {};
            }
            case DegClass::Triple:
                if (!is_unitary_up_to_scale(yt, tol)) return {};
                return {MatrixSet::finite(
                    {Matrix2(m * sigma_z() * yt * sigma_z() * m.inverse())})};
            case DegClass::FullyDegenerate:
                if (!is_unitary_up_to_scale(yt, tol)) return {};
                return {MatrixSet::uconj(m)};
        }
        return {};
    }

    // Propagation view for the cycle-consistency chains: the constraint on an
    // incoming backward-slot value and how the forward-slot value follows.
    struct PropagationBranch {
        MatrixSet y_set;       // admissible incoming values
        bool deterministic;    // forward = conj * incoming * conj^{-1}
        Matrix2 conj;          // when deterministic
        MatrixSet x_set;       // fresh forward value set when not deterministic
    };

    std::vector<PropagationBranch> propagation_branches() const {
        Matrix2 mi = m.inverse(), mbi = mbar.inverse();
        switch (cls) {
            case DegClass::NonDegenerate: {
                std::vector<Matrix2> els;
                for (int a = 0; a < 4; ++a) els.push_back(mbar * pauli(a) * mbi);
                return {{MatrixSet::finite(els), true, Matrix2(m * mbi), {}}};
            }
            case DegClass::DoublePlusTwo:
                return {{MatrixSet::circle(mbar, mbi), true, Matrix2(m * mbi), {}},
                        {MatrixSet::circle(mbar, sigma_x() * mbi), true, Matrix2(m * mbi), {}}};
            case DegClass::TwoDouble:
                return {{MatrixSet::circle(mbar, mbi), false, Matrix2::Identity(),
                         MatrixSet::circle(m, mi)},
                        {MatrixSet::circle(mbar, sigma_x() * mbi), false, Matrix2::Identity(),
                         MatrixSet::circle(m, sigma_x() * mi)}};
            case DegClass::Triple:
                return {{MatrixSet::uconj(mbar), true, Matrix2(m * sigma_z() * mbi), {}}};
            case DegClass::FullyDegenerate:
                return {{MatrixSet::uconj(mbar), false, Matrix2::Identity(),
                         MatrixSet::uconj(m)}};
        }
        return {};
    }

    // Random members in the original frame, determinant-normalized.
    std::vector<std::pair<Matrix2, Matrix2>> sample(int count, Rng& rng) const {
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        std::uniform_int_distribution<int> flip(0, 1);
        std::uniform_int_distribution<int> four(0, 3);
        std::vector<std::pair<Matrix2, Matrix2>> out;
        Matrix2 mi = m.inverse(), mbi = mbar.inverse();
        for (int i = 0; i < count; ++i) {
            Matrix2 xt, yt;
            switch (cls) {
                case DegClass::NonDegenerate: {
                    int a = four(rng);
                    xt = pauli(a);
                    yt = pauli(a);
                    break;
                }
                case DegClass::DoublePlusTwo: {
                    double phi = angle(rng);
                    Matrix2 k = flip(rng) ? sigma_x() : Matrix2::Identity();
                    xt = phase_rotation(phi) * k;
                    yt = xt;
                    break;
                }
                case DegClass::TwoDouble: {
                    Matrix2 k = flip(rng) ? sigma_x() : Matrix2::Identity();
                    xt = phase_rotation(angle(rng)) * k;
                    yt = phase_rotation(angle(rng)) * k;
                    break;
                }
                case DegClass::Triple: {
                    Matrix2 w = phase_rotation(angle(rng)) * x_rotation(angle(rng)) *
                                phase_rotation(angle(rng));
                    xt = w;
                    yt = sigma_z() * w * sigma_z();
                    break;
                }
                case DegClass::FullyDegenerate: {
                    xt = random_unitary(2, rng);
                    yt = random_unitary(2, rng);
                    break;
                }
            }
            out.emplace_back(normalize_det(Matrix2(m * xt * mi)),
                             normalize_det(Matrix2(mbar * yt * mbi)));
        }
        return out;
    }
};

inline StabilizerGroup stabilizer(const StandardForm& form) {
    return {form.cls, form.m_filter, form.mbar_filter, form.eigs};
}

// Exhaustive search over single-qubit Clifford pairs leaving H invariant up
// to a factor; returns one representative per projective class.
inline std::vector<std::pair<Matrix2, Matrix2>> clifford_pair_stabilizers(
    const Matrix4& h, double tol = 1e-9) {
    const auto& cl = clifford_group_1q();
    std::vector<std::pair<Matrix2, Matrix2>> found;
    for (const auto& c1 : cl)
        for (const auto& c2 : cl) {
            if (stabilizer_residual(h, c1, c2) > tol) continue;
            bool dup = false;
            for (const auto& [a, b] : found)
                if (proportional(kron(c1, c2), kron(a, b), 1e-9)) { dup = true; break; }
            if (!dup) found.emplace_back(c1, c2);
        }
    return found;
}

}  // namespace netlocc
