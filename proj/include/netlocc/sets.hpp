// Projective sets of invertible 2x2 matrices closed under the operations the
// stabilizer chains need: finite lists, phase circles { C Z(phi) D }, and
// conjugated unitary groups { F u F^{-1} }. Everything is modulo nonzero
// complex scalars; intersections return finite unions of the same three
// forms, which is enough because stabilizer marginals only take these shapes.
#pragma once

#include <optional>

#include "netlocc/core.hpp"

namespace netlocc {

inline bool proj_equal(const Matrix2& a, const Matrix2& b, double tol = 1e-9) {
    double na = a.norm(), nb = b.norm();
    if (na == 0 || nb == 0) return false;
    Complex ip = (a.adjoint() * b).trace();
    return std::abs(std::abs(ip) / (na * nb) - 1.0) <= tol;
}

struct MatrixSet {
    enum class Kind { Finite, Circle, UnitaryConj };
    Kind kind = Kind::Finite;
    std::vector<Matrix2> elements;  // Finite
    Matrix2 c, d;                   // Circle: { c Z(phi) d : phi }
    Matrix2 f;                      // UnitaryConj: { f u f^{-1} : u in U(2) }

    static MatrixSet finite(std::vector<Matrix2> els) {
        MatrixSet s;
        s.kind = Kind::Finite;
        for (auto& e : els) {
            Matrix2 n = normalize_det(e);
            bool dup = false;
            for (const auto& have : s.elements)
                if (proj_equal(have, n)) { dup = true; break; }
            if (!dup) s.elements.push_back(n);
        }
        return s;
    }
    static MatrixSet circle(const Matrix2& c_, const Matrix2& d_) {
        MatrixSet s;
        s.kind = Kind::Circle;
        s.c = normalize_det(c_);
        s.d = normalize_det(d_);
        return s;
    }
    static MatrixSet uconj(const Matrix2& f_) {
        MatrixSet s;
        s.kind = Kind::UnitaryConj;
        s.f = normalize_det(f_);
        return s;
    }

    bool empty() const { return kind == Kind::Finite && elements.empty(); }

    Matrix2 circle_at(double phi) const { return c * phase_rotation(phi) * d; }

    bool contains(const Matrix2& x, double tol = 1e-9) const {
        switch (kind) {
            case Kind::Finite:
                for (const auto& e : elements)
                    if (proj_equal(e, x, tol)) return true;
                return false;
            case Kind::Circle: {
                Matrix2 e = c.inverse() * x * d.inverse();
                double scale = e.norm();
                if (scale == 0) return false;
                if (std::abs(e(0, 1)) > tol * scale || std::abs(e(1, 0)) > tol * scale)
                    return false;
                double m0 = std::abs(e(0, 0)), m1 = std::abs(e(1, 1));
                return std::abs(m0 - m1) <= tol * scale && m0 > tol * scale;
            }
            case Kind::UnitaryConj:
                return is_unitary_up_to_scale(Matrix(f.inverse() * x * f), tol);
        }
        return false;
    }

    // Phase parameter of a member of a circle (undefined for non-members).
    double circle_phase_of(const Matrix2& x) const {
        Matrix2 e = c.inverse() * x * d.inverse();
        return 0.5 * (std::arg(e(0, 0)) - std::arg(e(1, 1)));
    }

    // a S a^{-1}
    MatrixSet conjugated(const Matrix2& a) const {
        Matrix2 ai = a.inverse();
        switch (kind) {
            case Kind::Finite: {
                std::vector<Matrix2> els;
                for (const auto& e : elements) els.push_back(a * e * ai);
                return finite(els);
            }
            case Kind::Circle:
                return circle(a * c, d * ai);
            case Kind::UnitaryConj:
                return uconj(a * f);
        }
        return {};
    }

    // X -> X^{-T}; needed when translating between source conventions.
    MatrixSet inverse_transposed() const {
        switch (kind) {
            case Kind::Finite: {
                std::vector<Matrix2> els;
                for (const auto& e : elements) els.push_back(e.inverse().transpose());
                return finite(els);
            }
            case Kind::Circle:
                // (C Z(phi) D)^{-T} = C^{-T} Z(-phi) D^{-T}
                return circle(c.inverse().transpose(), d.inverse().transpose());
            case Kind::UnitaryConj:
                return uconj(f.inverse().transpose());
        }
        return {};
    }

    // Representative elements whose convex conjugation hull contains the
    // exact group twirl: all elements (Finite), an exact-quadrature phase grid
    // (Circle; the conjugation channel is a trig polynomial of degree two, so
    // four equally spaced points already average exactly), Paulis or Cliffords
    // in the conjugated frame (UnitaryConj; Cliffords form a unitary 2-design).
    std::vector<Matrix2> sample_grid(int circle_points = 8, bool clifford_grid = false) const {
        std::vector<Matrix2> out;
        switch (kind) {
            case Kind::Finite:
                out = elements;
                break;
            case Kind::Circle:
                for (int m = 0; m < circle_points; ++m)
                    out.push_back(normalize_det(circle_at(2.0 * M_PI * m / circle_points)));
                break;
            case Kind::UnitaryConj: {
                Matrix2 fi = f.inverse();
                if (clifford_grid) {
                    for (const auto& cl : clifford_group_1q())
                        out.push_back(normalize_det(Matrix2(f * cl * fi)));
                } else {
                    for (int a = 0; a < 4; ++a)
                        out.push_back(normalize_det(Matrix2(f * pauli(a) * fi)));
                }
                break;
            }
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Intersections. All results are verified member-by-member before being
// returned, so a wrong analytic branch can only lose solutions, not invent
// them; the union of components is returned.

namespace detail {

inline void push_verified(std::vector<MatrixSet>& out, const Matrix2& x,
                          const MatrixSet& s1, const MatrixSet& s2, double tol) {
    if (!s1.contains(x, tol) || !s2.contains(x, tol)) return;
    Matrix2 n = normalize_det(x);
    for (const auto& comp : out)
        if (comp.kind == MatrixSet::Kind::Finite)
            for (const auto& e : comp.elements)
                if (proj_equal(e, n, tol)) return;
    out.push_back(MatrixSet::finite({n}));
}

inline std::vector<double> offdiag_zero_phases(const Complex& hi, const Complex& lo,
                                               double scale, double tol) {
    //  hi e^{i phi} + lo e^{-i phi} = 0  =>  e^{2 i phi} = -lo/hi
    std::vector<double> phis;
    if (std::abs(hi) <= tol * scale && std::abs(lo) <= tol * scale) return phis;  // identically 0
    if (std::abs(hi) <= tol * scale || std::abs(lo) <= tol * scale) return phis;  // no solution
    Complex r = -lo / hi;
    if (std::abs(std::abs(r) - 1.0) > 100 * tol) return phis;
    double phi = 0.5 * std::arg(r);
    phis.push_back(phi);
    phis.push_back(phi + M_PI);
    return phis;
}

}  // namespace detail

inline std::vector<MatrixSet> intersect(const MatrixSet& s1, const MatrixSet& s2,
                                        double tol = 1e-9) {
    using K = MatrixSet::Kind;
    std::vector<MatrixSet> out;

    // finite against anything: member filter
    if (s1.kind == K::Finite) {
        std::vector<Matrix2> kept;
        for (const auto& e : s1.elements)
            if (s2.contains(e, tol)) kept.push_back(e);
        if (!kept.empty()) out.push_back(MatrixSet::finite(kept));
        return out;
    }
    if (s2.kind == K::Finite) return intersect(s2, s1, tol);

    if (s1.kind == K::Circle && s2.kind == K::Circle) {
        Matrix2 e = s2.c.inverse() * s1.c;
        Matrix2 g = s1.d * s2.d.inverse();
        double scale = e.norm() * g.norm();
        // off-diagonals of E Z(phi) G as trig polynomials in phi
        Complex hi01 = e(0, 0) * g(0, 1), lo01 = e(0, 1) * g(1, 1);
        Complex hi10 = e(1, 0) * g(0, 0), lo10 = e(1, 1) * g(1, 0);
        bool id01 = std::abs(hi01) <= tol * scale && std::abs(lo01) <= tol * scale;
        bool id10 = std::abs(hi10) <= tol * scale && std::abs(lo10) <= tol * scale;
        if (id01 && id10) {
            // off-diagonals vanish identically; the equal-moduli condition is
            // phase-independent, so the circles either coincide or are disjoint
            if (s2.contains(s1.circle_at(0.0), tol) && s2.contains(s1.circle_at(1.0), tol))
                out.push_back(s1);
            return out;
        }
        std::vector<double> cands;
        for (double p : detail::offdiag_zero_phases(hi01, lo01, scale, tol)) cands.push_back(p);
        for (double p : detail::offdiag_zero_phases(hi10, lo10, scale, tol)) cands.push_back(p);
        for (double p : cands) detail::push_verified(out, s1.circle_at(p), s1, s2, tol);
        return out;
    }

    auto circle_vs_uconj = [&](const MatrixSet& cir, const MatrixSet& uc) {
        Matrix2 e = uc.f.inverse() * cir.c;
        Matrix2 g = cir.d * uc.f;
        Matrix2 p = e.adjoint() * e;             // Z^dag P Z = lambda Q required
        Matrix2 q = (g * g.adjoint()).inverse();
        double l0 = p(0, 0).real() / q(0, 0).real();
        double l1 = p(1, 1).real() / q(1, 1).real();
        double scale = p.norm() + q.norm();
        if (std::abs(l0 - l1) > 1e-7 * std::max(l0, l1)) return;  // diagonal ratios disagree
        double lambda = 0.5 * (l0 + l1);
        Complex p01 = p(0, 1), q01 = q(0, 1);
        if (std::abs(p01) <= tol * scale && std::abs(lambda * q01) <= tol * scale) {
            if (uc.contains(cir.circle_at(0.0), tol) && uc.contains(cir.circle_at(1.0), tol))
                out.push_back(cir);
            return;
        }
        if (std::abs(p01) <= tol * scale || std::abs(q01) <= tol * scale) return;
        Complex r = lambda * q01 / p01;
        if (std::abs(std::abs(r) - 1.0) > 1e-6) return;
        double phi = -0.5 * std::arg(r);
        detail::push_verified(out, cir.circle_at(phi), cir, uc, tol);
        detail::push_verified(out, cir.circle_at(phi + M_PI), cir, uc, tol);
    };

    if (s1.kind == K::Circle && s2.kind == K::UnitaryConj) {
        circle_vs_uconj(s1, s2);
        return out;
    }
    if (s1.kind == K::UnitaryConj && s2.kind == K::Circle) {
        circle_vs_uconj(s2, s1);
        return out;
    }

    // UnitaryConj vs UnitaryConj
    {
        Matrix2 t = s2.f.inverse() * s1.f;
        if (is_unitary_up_to_scale(t, 1e-8)) {
            out.push_back(s1);
            return out;
        }
        // members F1 v F1^{-1} with v unitary and T v T^{-1} unitary too:
        // v must preserve T^dag T, i.e. be diagonal in its eigenbasis
        Eigen::SelfAdjointEigenSolver<Matrix2> es(Matrix2(t.adjoint() * t));
        Matrix2 w = es.eigenvectors();
        MatrixSet cand = MatrixSet::circle(s1.f * w, w.adjoint() * s1.f.inverse());
        if (s2.contains(cand.circle_at(0.3), tol) && s2.contains(cand.circle_at(1.7), tol))
            out.push_back(cand);
        return out;
    }
}

}  // namespace netlocc
