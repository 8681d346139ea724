// The k sweep: a cycle target is reachable by a protocol in which every party
// measures once iff some party k admits a product-target mixing over the
// consistent symmetry family of the other parties. Verdicts:
//   SimpleReachable      a mixing was found (and is independently validated)
//   NotSimpleReachable   every party carries a verified infeasibility certificate
//   Inconclusive         some party could be decided neither way
//   Unreachable          only issued by the stronger trace certificate
#pragma once

#include "netlocc/mixing.hpp"
#include "netlocc/obstruction.hpp"

namespace netlocc {

struct ReachabilityOptions {
    DecisionOptions decision;
};

// Runs the sweep on a spec in any source convention; internally everything is
// canonicalized to Psi- edges. The returned verdict's mixing data lives in
// the canonical convention (the protocol builder consumes it there and
// transforms the final protocol back).
inline Verdict check_simple_reachable(const TargetSpec& spec,
                                      const ReachabilityOptions& opts = {}) {
    spec.validate();
    CycleLayout lay = cycle_layout(spec.graph);
    PsiMinusForm canon = to_psi_minus(spec);

    Verdict verdict;
    bool all_certified = true;
    for (int k : lay.parties) {
        SymmetryFamily fam = final_round_candidates(canon.spec, k, opts.decision.tol,
                                                    opts.decision.degeneracy_tol);
        PartyDecision dec = decide_party(canon.spec, k, fam, opts.decision);
        verdict.notes.push_back("party " + std::to_string(k) + ": " + dec.note);
        if (dec.kind == PartyDecision::Kind::Feasible) {
            verdict.status = ReachStatus::SimpleReachable;
            verdict.party_k = k;
            verdict.a = dec.a;
            verdict.b = dec.b;
            verdict.mixing = dec.mixing;
            verdict.residuals["mixing"] = dec.mixing.residual;
            return verdict;
        }
        if (dec.kind != PartyDecision::Kind::CertifiedInfeasible) all_certified = false;
        if (dec.kind == PartyDecision::Kind::CertifiedInfeasible)
            verdict.residuals["certificate_margin_party_" + std::to_string(k)] =
                dec.certificate_margin;
    }
    verdict.status = all_certified ? ReachStatus::NotSimpleReachable
                                   : ReachStatus::Inconclusive;
    return verdict;
}

// Full decision pipeline: the trace certificate first (a strict unreachability
// proof for its family), then the simple-protocol characterization.
inline Verdict decide_reachability(const TargetSpec& spec,
                                   const ReachabilityOptions& opts = {}) {
    spec.validate();
    if (spec.graph.is_cycle()) {
        PsiMinusForm canon = to_psi_minus(spec);
        if (auto alphas = extract_zz_alphas(canon.spec)) {
            bool in_range = true;
            for (double a : *alphas) in_range = in_range && std::abs(a) < 0.25;
            if (in_range) {
                auto certificate = zz_cycle_certificate(*alphas);
                if (certificate.status == ReachStatus::Unreachable) {
                    Verdict v;
                    v.status = ReachStatus::Unreachable;
                    v.residuals["alpha_product"] = certificate.alpha_product;
                    v.notes.push_back(certificate.note);
                    return v;
                }
            }
        }
    }
    return check_simple_reachable(spec, opts);
}

}  // namespace netlocc
