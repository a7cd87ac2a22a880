#pragma once

// Shared helpers for the test suite.

#include <stdexcept>

#include "swspectra/algebra.hpp"
#include "swspectra/systems.hpp"

namespace swtest {

inline sw::TildeParams tilde_osc(double m, double hbar, double omega, double mu1, double mu2,
                                 double mu = 0.0) {
    sw::TildeParams tp;
    tp.m = m;
    tp.hbar = hbar;
    tp.omega = omega;
    tp.mu1 = mu1;
    tp.mu2 = mu2;
    tp.mu = mu;
    return tp;
}

inline sw::TildeParams tilde_coulomb(double m, double hbar, double k, double mu1, double mu2) {
    sw::TildeParams tp;
    tp.m = m;
    tp.hbar = hbar;
    tp.k = k;
    tp.mu1 = mu1;
    tp.mu2 = mu2;
    return tp;
}

// Builds the explicit (p+1)-dimensional representation of the case's algebra
// at spectral parameter e and verifies the commutation closure on it.
inline sw::ClosureReport closure_at(int case_id, const sw::TildeParams& tp, sw::SignPair s,
                                    int p, double e, double tol) {
    const sw::StructureConstants sc = sw::structure_constants(case_id, tp);
    const sw::StructureConstantsValues v = sw::eval(sc, e);
    const double u = sw::representation_shift_rule(case_id, tp, s, p)(e);
    const sw::OscillatorRealization re =
        sc.gamma.is_zero() ? sw::realize_gamma_zero(v, u) : sw::realize_gamma_nonzero(v, u);
    const sw::MatrixRep rep = sw::build_matrix_rep(re, p);
    return sw::verify_closure(rep, v, tol);
}

} // namespace swtest
