#pragma once

#include "swspectra/algebra.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sw {

// Physical input data of one system.  Cases 1 and 2 are the oscillator-type
// systems (frequency omega); cases 3 and 4 are the Coulomb-type systems
// (strength k).  mu1/mu2 are the two centrifugal-like couplings of cases 1,
// 3 and 4; case 2 has the single coupling mu.
struct PhysicalParams {
    double m = 1.0;
    double c = 1.0;
    double hbar = 1.0;
    double omega = 0.0;
    double k = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu = 0.0;
};

// Parameters of the auxiliary nonrelativistic problem attached to one value
// of the relativistic energy: effective mass, energy-scaled couplings, and
// the shifted energy E_tilde.  All spectral formulas below act at this level.
struct TildeParams {
    double m = 1.0; // effective mass
    double hbar = 1.0;
    double omega = 0.0;
    double k = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu = 0.0;
    double E_tilde = 0.0;
};

// Branch labels epsilon_1, epsilon_2 in the spectrum formulas; +1 or -1.
// A zero entry marks a sign slot the case does not use (case 2 and case 4
// have a single sign).
struct SignPair {
    int e1 = +1;
    int e2 = +1;
};

// Energy-dependent mass and coupling rescaling that turns the relativistic
// wave equation at energy E into the auxiliary nonrelativistic eigenvalue
// problem:  m_eff = (E + m c^2)/(2 c^2),  E_tilde = E - m c^2, with the
// couplings scaled case by case so the auxiliary problem keeps its shape.
// Throws std::domain_error for E <= -m c^2 (the map degenerates).
TildeParams tilde_map(const PhysicalParams& pp, double E, int case_id);

// Effective ladder index k_tilde_i derived from a centrifugal coupling:
//   cases 1, 2:  k = sqrt(mu/hbar^2 + 1/4)
//   case 3:      k = sqrt(2 mu/hbar^2 + 1/4)
// `which` (1 or 2) only labels the error message.  Throws std::domain_error
// ("k_tilde_N imaginary") below the critical coupling.
double k_tilde_index(int case_id, double mu_tilde, double hbar, int which);

// Structure constants of the quadratic symmetry algebra of the auxiliary
// problem, as polynomials in E_tilde.
StructureConstants structure_constants(int case_id, const TildeParams& tp);

// Representation shift u(E_tilde) that places the first zero of the structure
// function at x = 0 for every candidate energy.  Cases 1-3 have
// energy-independent shifts; the case-4 rule depends on E_tilde and p.
std::function<double(double)> representation_shift_rule(int case_id, const TildeParams& tp,
                                                        SignPair signs, int p);

// Case-4 quantization condition variants.  `standard` balances the two terms
// with the same effective-mass weight on both (the internally consistent
// form); `mass_weighted` carries explicit extra mass factors on the sign
// terms.  They coincide at unit effective mass.
enum class Case4Quantization { standard, mass_weighted };

// Closed-form bound-state energies E_tilde of the auxiliary problem at fixed
// p and branch signs.  Cases 1-3 return a single closed-form value; case 4
// root-solves its cubic quantization condition and returns every root whose
// intrinsic sign matches signs.e1.  Branches with no level return {}.
std::vector<double> quasi_spectrum(int case_id, const TildeParams& tp, int p, SignPair signs,
                                   Case4Quantization variant = Case4Quantization::standard);

// Readings of the ambiguous third factor of the case-1 factored structure
// function; they differ off the energy shell and permute the branch labels.
//   eps1_ascending:  (x + e1 k2)
//   eps2_ascending:  (x + e2 k2)
//   eps2_mirrored:   (P + e2 k2 - x), P = E_tilde/(2 hbar omega) - (e1 k1 + e2 k2)/2
// eps2_mirrored is the default: it is the one whose zeros reproduce the
// representation boundaries of the verified algebraic structure function.
enum class Case1PhiReading { eps1_ascending, eps2_ascending, eps2_mirrored };

// Factored (product-form) structure function of the case at the energy
// `e_tilde`, evaluated at ladder argument x.  For the polynomial (gamma = 0)
// realizations it differs from the algebraic Phi by a positive
// energy-independent constant; the nonzero-gamma realization carries an
// x-dependent positive rescaling instead, so there the two agree in their
// zeros at x = 0 and x = p+1 and in the sign pattern on the interior points.
double structure_function_factored(int case_id, const TildeParams& tp, int p, SignPair signs,
                                   double x, double e_tilde,
                                   Case1PhiReading reading = Case1PhiReading::eps2_mirrored);

// One bound level of the auxiliary problem with its representation metadata.
struct SpectrumLevel {
    int case_id = 0;
    int p = 0;
    SignPair signs;
    double u = 0.0;
    double E_tilde = 0.0;
    double E_rel = 0.0;        // NaN here; filled by the relativistic solver
    double residual = 0.0;     // normalized |Phi(p+1)| at the level
    bool positivity_ok = true;
    bool degenerate = false;
    std::string note;
};

// All levels with p <= p_max over every sign branch of the case, sorted by
// (E_tilde, p, e1, e2).  Degenerate representations (an interior zero of the
// structure function) are kept but flagged; they do not belong to the
// physical spectrum.
std::vector<SpectrumLevel> enumerate_levels(int case_id, const TildeParams& tp, int p_max);

} // namespace sw
