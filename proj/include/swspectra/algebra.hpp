#pragma once

#include "swspectra/matrix.hpp"
#include "swspectra/poly.hpp"

#include <functional>
#include <vector>

namespace sw {

// Structure constants of a quadratic algebra generated by two symmetry
// operators A, B and their commutator C = [A,B]:
//
//   [A,C] = alpha A^2 + gamma {A,B} + delta A + epsilon B + zeta
//   [B,C] = a A^2 - gamma B^2 - beta {A,B} + d A - delta B + z
//
// with beta = alpha forced by the Jacobi identity.  Each constant is a
// polynomial in the spectral parameter (the algebras here have coefficients
// depending on the eigenvalue of the Hamiltonian-like central element), as is
// the value of the Casimir invariant on the irreducible representation.
struct StructureConstants {
    EnergyPolynomial alpha, beta, gamma, delta, epsilon, zeta; // [A,C] row
    EnergyPolynomial a, d, z;                                  // [B,C] row
    EnergyPolynomial casimir;                                  // Casimir eigenvalue
};

// The same constants evaluated at one value of the spectral parameter.
struct StructureConstantsValues {
    double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0, epsilon = 0.0, zeta = 0.0;
    double a = 0.0, d = 0.0, z = 0.0;
    double casimir = 0.0;
};

StructureConstantsValues eval(const StructureConstants& sc, double energy);

// Casimir invariant assembled from explicit matrices:
//   K = C^2 - alpha {A^2,B} - gamma {A,B^2} + (alpha gamma - delta) {A,B}
//       + (gamma^2 - epsilon) B^2 + (gamma delta - 2 zeta) B
//       + (2a/3) A^3 + (d + a gamma/3 + alpha^2) A^2
//       + (a epsilon/3 + alpha delta + 2z) A
// On an irreducible unitary representation this must be a multiple of the
// identity; `verify_closure` checks both the scalarity and the value.
Matrix casimir_matrix(const StructureConstantsValues& v, const Matrix& A, const Matrix& B,
                      const Matrix& C);

// Deformed-oscillator realization of the algebra: a number operator N with
// ladder pair b, b^dagger obeying
//   [N, b^dagger] = b^dagger,   b b^dagger = Phi(N+1),   b^dagger b = Phi(N),
// carrying  A = A(N)  and  B = b(N) + b^dagger rho(N) + rho(N) b.
// Phi is the structure function; its zeros select the finite unitary
// representations.
struct OscillatorRealization {
    enum class Branch { gamma_zero, gamma_nonzero };

    Branch branch = Branch::gamma_zero;
    double u = 0.0; // representation shift: ladder index enters as n + u

    std::function<double(double)> A_of_N;
    std::function<double(double)> b_of_N;
    std::function<double(double)> rho_of_N;
    std::function<double(double)> Phi_of_N;
};

// Realization for algebras whose gamma vanishes identically:
//   A(n)   = sqrt(epsilon) (n+u)
//   b(n)   = -alpha (n+u)^2 - (delta/sqrt(epsilon)) (n+u) - zeta/epsilon
//   rho(n) = 1
// and Phi a quartic in (x+u) whose coefficients are fixed by the structure
// constants and the Casimir value.  Requires gamma == 0 and epsilon > 0.
OscillatorRealization realize_gamma_zero(const StructureConstantsValues& v, double u);

// Realization for gamma != 0:
//   A(n)   = (gamma/2) ((n+u)^2 - 1/4) - epsilon/(2 gamma)
//   b(n)   = -(alpha A^2 + delta A + zeta) / (gamma^2 ((n+u)^2 - 1/4))
//   rho(n) = 1 / (12288 gamma^8 (n+u)(n+u+1)(2(n+u)+1)^2)
// with Phi the matching division-free polynomial in (x+u).  Requires
// gamma != 0.
OscillatorRealization realize_gamma_nonzero(const StructureConstantsValues& v, double u);

// Explicit (p+1)-dimensional matrices of one representation:
//   N = diag(0..p),  bdag[n+1][n] = sqrt(Phi(n+1)),  b = bdag^T,
//   A = diag(A(n)),  B = b(N) + bdag rho(N) + rho(N) b,  C = AB - BA.
// Throws std::domain_error when some interior Phi is negative beyond rounding
// (no unitary representation at this dimension) or when rho/b hit a pole of
// the gamma != 0 realization.
struct MatrixRep {
    int dimension = 0;
    Matrix N, b, bdag, A, B, C;
};

MatrixRep build_matrix_rep(const OscillatorRealization& re, int p);

// Relative deviations (Frobenius norm over max(1, |lhs|, |rhs|)) of the three
// defining relations and of the Casimir scalarity on an explicit
// representation.
struct ClosureReport {
    double dev_ab_c = 0.0;    // [A,B] vs C
    double dev_ac = 0.0;      // [A,C] vs its quadratic right-hand side
    double dev_bc = 0.0;      // [B,C] vs its quadratic right-hand side
    double dev_casimir = 0.0; // casimir_matrix vs casimir * identity
    double max_dev = 0.0;
    bool pass = false;
};

ClosureReport verify_closure(const MatrixRep& rep, const StructureConstantsValues& v,
                             double tol);

// One representation-energy found by imposing Phi(0) = 0 (built into the u
// rule) and Phi(p+1) = 0 (root-solved in the spectral parameter).
struct QuantizedEnergy {
    double E_tilde = 0.0;
    double residual = 0.0;     // normalized |Phi(p+1)| at the accepted root
    bool positivity_ok = true; // Phi(x) > 0 for x = 1..p within tolerance
    bool degenerate = false;   // some interior Phi(x) ~ 0: degenerate representation
};

// Scan-and-bisect root finder for the quantization condition at fixed p.
// `sc` holds the structure constants as polynomials in the spectral
// parameter; `u_rule` supplies the representation shift at each candidate
// energy (chosen so that Phi(0) vanishes identically).  The branch of the
// realization is dispatched on whether gamma is the zero polynomial.  Roots
// where the interior positivity check fails are still reported, flagged.
std::vector<QuantizedEnergy> find_quantized_energies(
    const StructureConstants& sc, const std::function<double(double)>& u_rule, int p,
    double bracket_lo, double bracket_hi, double tol, int scan_points = 1000);

} // namespace sw
