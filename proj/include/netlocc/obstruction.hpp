// Unreachability certificate for cycle targets H_i = 1/4 + alpha_i sz (x) sz
// (acting on each party's two cycle qubits, Psi- sources): when the product
// of the alphas is strictly positive no finite-round protocol reaches the
// state. The certificate rests on a trace identity whose per-symmetry value
// is strictly positive for every unit-determinant 2x2 restriction.
#pragma once

#include "netlocc/target.hpp"

namespace netlocc {

struct DetNotOne : ValidationError {
    using ValidationError::ValidationError;
};

// Value of the trace obstruction for one symmetry restriction x (det x = 1,
// entries row-major (a,b,c,d)) and cycle weights alphas:
//   (1/4^N) [ (|a|^2+|b|^2+|c|^2+|d|^2)^2 - 4 ]
//     + [ ((|a|^2+|c|^2) - (|b|^2+|d|^2))^2 + 4 ] prod_i alpha_i
// Strictly positive whenever prod alpha > 0, since the first bracket is
// nonnegative for unit determinant and the second is at least 4.
inline double obstruction_value(const Matrix2& x, const std::vector<double>& alphas,
                                double tol = 1e-9) {
    if (std::abs(det2(x) - Complex(1, 0)) > tol)
        throw DetNotOne("obstruction_value: determinant must be 1");
    const double n = static_cast<double>(alphas.size());
    double prod = 1.0;
    for (double al : alphas) prod *= al;
    const double a2 = std::norm(x(0, 0)), b2 = std::norm(x(0, 1));
    const double c2 = std::norm(x(1, 0)), d2 = std::norm(x(1, 1));
    const double s = a2 + b2 + c2 + d2;
    const double diff = (a2 + c2) - (b2 + d2);
    return std::pow(4.0, -n) * (s * s - 4.0) + (diff * diff + 4.0) * prod;
}

struct CycleCertificate {
    ReachStatus status;   // Unreachable or Inconclusive
    double alpha_product;
    std::string note;
};

// Observation-style certificate on the weights alone.
inline CycleCertificate zz_cycle_certificate(const std::vector<double>& alphas,
                                             double tol = 1e-12) {
    if (alphas.empty()) throw ValidationError("zz_cycle_certificate: empty cycle");
    for (double al : alphas)
        if (std::abs(al) >= 0.25)
            throw NotPositiveDefinite(
                "zz_cycle_certificate: |alpha| >= 1/4 makes H indefinite");
    double prod = 1.0;
    for (double al : alphas) prod *= al;
    if (prod > tol)
        return {ReachStatus::Unreachable, prod,
                "alpha product strictly positive; trace obstruction applies"};
    return {ReachStatus::Inconclusive, prod, "alpha product not positive; certificate silent"};
}

// Attempts to read a cycle TargetSpec as the certificate family: every party
// operator proportional to 1/4 + alpha sz (x) sz. Returns the alphas when the
// pattern matches within tol.
inline std::optional<std::vector<double>> extract_zz_alphas(const TargetSpec& spec,
                                                            double tol = 1e-9) {
    CycleLayout lay = cycle_layout(spec.graph);
    std::vector<double> alphas;
    for (int k = 0; k < lay.size(); ++k) {
        Matrix4 h = spec.h_of(lay.parties[k]);
        Eigen::Matrix4d t = pauli_coefficients(h);
        double scale = t(0, 0);
        if (scale <= 0) return std::nullopt;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                if ((mu == 0 && nu == 0) || (mu == 3 && nu == 3)) continue;
                if (std::abs(t(mu, nu)) > tol * scale) return std::nullopt;
            }
        // H = s (1/4 + alpha zz) with s = 4 t00, alpha = t33 / (4 t00)
        alphas.push_back(t(3, 3) / (4.0 * scale));
    }
    return alphas;
}

}  // namespace netlocc
