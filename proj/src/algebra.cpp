#include "swspectra/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sw {

StructureConstantsValues eval(const StructureConstants& sc, double energy) {
    StructureConstantsValues v;
    v.alpha = sc.alpha(energy);
    v.beta = sc.beta(energy);
    v.gamma = sc.gamma(energy);
    v.delta = sc.delta(energy);
    v.epsilon = sc.epsilon(energy);
    v.zeta = sc.zeta(energy);
    v.a = sc.a(energy);
    v.d = sc.d(energy);
    v.z = sc.z(energy);
    v.casimir = sc.casimir(energy);
    return v;
}

Matrix casimir_matrix(const StructureConstantsValues& v, const Matrix& A, const Matrix& B,
                      const Matrix& C) {
    const Matrix A2 = A * A;
    const Matrix B2 = B * B;
    Matrix K = C * C;
    K -= v.alpha * anticommutator(A2, B);
    K -= v.gamma * anticommutator(A, B2);
    K += (v.alpha * v.gamma - v.delta) * anticommutator(A, B);
    K += (v.gamma * v.gamma - v.epsilon) * B2;
    K += (v.gamma * v.delta - 2.0 * v.zeta) * B;
    K += (2.0 * v.a / 3.0) * (A2 * A);
    K += (v.d + v.a * v.gamma / 3.0 + v.alpha * v.alpha) * A2;
    K += (v.a * v.epsilon / 3.0 + v.alpha * v.delta + 2.0 * v.z) * A;
    return K;
}

OscillatorRealization realize_gamma_zero(const StructureConstantsValues& v, double u) {
    if (v.gamma != 0.0)
        throw std::invalid_argument("realize_gamma_zero: gamma is nonzero; use the gamma-nonzero branch");
    if (!(v.epsilon > 0.0))
        throw std::domain_error("realize_gamma_zero: requires epsilon > 0");

    const double al = v.alpha, de = v.delta, ze = v.zeta, a = v.a, d = v.d, z = v.z,
                 K = v.casimir, ep = v.epsilon;
    const double sq = std::sqrt(ep);

    // Structure function: quartic in t = x + u.
    const double phi4 = al * al / 4.0;
    const double phi3 = -(3.0 * al * al - a * sq - 3.0 * al * de / sq) / 6.0;
    const double phi2 = (al * al + d - a * sq - 3.0 * al * de / sq + de * de / ep +
                         2.0 * al * ze / ep) / 4.0;
    const double phi1 = -(3.0 * d - a * sq - 3.0 * al * de / sq + 3.0 * de * de / ep -
                          6.0 * z / sq + 6.0 * al * ze / ep - 6.0 * de * ze / (ep * sq)) / 12.0;
    const double phi0 = (-K / ep - z / sq - de * ze / (ep * sq) + ze * ze / (ep * ep)) / 4.0;

    OscillatorRealization re;
    re.branch = OscillatorRealization::Branch::gamma_zero;
    re.u = u;
    re.A_of_N = [sq, u](double n) { return sq * (n + u); };
    re.b_of_N = [al, de, sq, ze, ep, u](double n) {
        const double t = n + u;
        return -al * t * t - (de / sq) * t - ze / ep;
    };
    re.rho_of_N = [](double) { return 1.0; };
    re.Phi_of_N = [phi4, phi3, phi2, phi1, phi0, u](double x) {
        const double t = x + u;
        return (((phi4 * t + phi3) * t + phi2) * t + phi1) * t + phi0;
    };
    return re;
}

OscillatorRealization realize_gamma_nonzero(const StructureConstantsValues& v, double u) {
    if (v.gamma == 0.0)
        throw std::invalid_argument("realize_gamma_nonzero: gamma vanishes; use the gamma-zero branch");

    const double al = v.alpha, de = v.delta, ze = v.zeta, a = v.a, d = v.d, z = v.z,
                 K = v.casimir, e = v.epsilon, g = v.gamma;
    const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2, g5 = g4 * g, g6 = g4 * g2,
                 g7 = g6 * g, g8 = g4 * g4;
    const double e2 = e * e, e3 = e2 * e;
    const double al2 = al * al;
    const double pref = 12288.0 * g8;

    // Structure-function polynomial, division-free in tau = x + u - 1:
    //   Phi(x) = pref^2 * tau (tau+1) (2 tau+1)^2 [ (2 tau+1)^2 up(tau) + rr ]
    // The coefficients below come from expanding the defining relations in the
    // gamma != 0 realization and matching powers of the ladder index.
    const double c0 =
        (-3072.0 * K * g4 - 256.0 * a * e3 * g - 64.0 * a * e2 * g3 + 144.0 * a * e * g5 +
         36.0 * a * g7 - 768.0 * al2 * e3 - 96.0 * al2 * e2 * g2 + 144.0 * al2 * e * g4 +
         27.0 * al2 * g6 + 2304.0 * al * de * e2 * g + 192.0 * al * de * e * g3 -
         144.0 * al * de * g5 - 3072.0 * al * e * g2 * ze - 1152.0 * al * g4 * ze +
         768.0 * d * e2 * g2 - 384.0 * d * e * g4 - 144.0 * d * g6 - 1536.0 * de * de * e * g2 -
         576.0 * de * de * g4 + 3072.0 * de * g3 * ze - 3072.0 * e * g3 * z + 768.0 * g5 * z) /
        (12288.0 * g6);
    const double c1 = a * e2 / (16.0 * g3) + a * e / (32.0 * g) + a * g / 256.0 +
                      3.0 * al2 * e2 / (32.0 * g4) + al2 * e / (32.0 * g2) + 3.0 * al2 / 1024.0 -
                      3.0 * al * de * e / (16.0 * g3) - al * de / (32.0 * g) + al * ze / (8.0 * g2) -
                      d * e / (8.0 * g2) - d / 32.0 + de * de / (16.0 * g2) + z / (4.0 * g);
    const double c2 = a * e2 / (16.0 * g3) - a * e / (32.0 * g) - 17.0 * a * g / 768.0 +
                      3.0 * al2 * e2 / (32.0 * g4) - al2 * e / (32.0 * g2) - 17.0 * al2 / 1024.0 -
                      3.0 * al * de * e / (16.0 * g3) + al * de / (32.0 * g) + al * ze / (8.0 * g2) -
                      d * e / (8.0 * g2) + d / 32.0 + de * de / (16.0 * g2) + z / (4.0 * g);
    const double c3 = -a * e / (8.0 * g) - a * g / 32.0 - al2 * e / (8.0 * g2) -
                      3.0 * al2 / 128.0 + al * de / (8.0 * g) + d / 8.0;
    const double c4 = -a * e / (16.0 * g) + 7.0 * a * g / 192.0 - al2 * e / (16.0 * g2) +
                      7.0 * al2 / 256.0 + al * de / (16.0 * g) + d / 16.0;
    const double c5 = a * g / 16.0 + 3.0 * al2 / 64.0;
    const double c6 = a * g / 48.0 + al2 / 64.0;
    const double q = al * e2 / 4.0 - de * e * g / 2.0 + g2 * ze;
    const double rr = q * q / g8;

    OscillatorRealization re;
    re.branch = OscillatorRealization::Branch::gamma_nonzero;
    re.u = u;
    re.A_of_N = [g, e, u](double n) {
        const double t = n + u;
        return (g / 2.0) * (t * t - 0.25) - e / (2.0 * g);
    };
    re.b_of_N = [al, de, ze, g2, g, e, u](double n) {
        const double t = n + u;
        const double denom = g2 * (t * t - 0.25);
        if (denom == 0.0)
            throw std::domain_error("gamma-nonzero realization: diagonal pole at ladder index "
                                    + std::to_string(n));
        const double A = (g / 2.0) * (t * t - 0.25) - e / (2.0 * g);
        return -(al * A * A + de * A + ze) / denom;
    };
    re.rho_of_N = [pref, u](double n) {
        const double t = n + u;
        const double denom = pref * t * (t + 1.0) * (2.0 * t + 1.0) * (2.0 * t + 1.0);
        if (denom == 0.0)
            throw std::domain_error("gamma-nonzero realization: weight pole at ladder index "
                                    + std::to_string(n));
        return 1.0 / denom;
    };
    re.Phi_of_N = [pref, c0, c1, c2, c3, c4, c5, c6, rr, u](double x) {
        const double tau = x + u - 1.0;
        const double y = 2.0 * tau + 1.0;
        const double up =
            (((((c6 * tau + c5) * tau + c4) * tau + c3) * tau + c2) * tau + c1) * tau + c0;
        return pref * pref * tau * (tau + 1.0) * y * y * (y * y * up + rr);
    };
    return re;
}

MatrixRep build_matrix_rep(const OscillatorRealization& re, int p) {
    if (p < 0) throw std::invalid_argument("build_matrix_rep: p must be nonnegative");
    const int dim = p + 1;

    std::vector<double> phi(static_cast<std::size_t>(p) + 2);
    double scale = 1.0;
    for (int x = 0; x <= p + 1; ++x) {
        phi[static_cast<std::size_t>(x)] = re.Phi_of_N(x);
        scale = std::max(scale, std::abs(phi[static_cast<std::size_t>(x)]));
    }
    for (int x = 1; x <= p; ++x)
        if (phi[static_cast<std::size_t>(x)] < -1e-9 * scale)
            throw std::domain_error(
                "build_matrix_rep: structure function negative inside the ladder; "
                "no unitary representation of this dimension");

    MatrixRep rep;
    rep.dimension = dim;
    rep.N = Matrix(dim);
    rep.A = Matrix(dim);
    rep.b = Matrix(dim);
    rep.bdag = Matrix(dim);
    rep.B = Matrix(dim);
    for (int n = 0; n < dim; ++n) {
        rep.N(n, n) = n;
        rep.A(n, n) = re.A_of_N(n);
        rep.B(n, n) = re.b_of_N(n);
    }
    for (int n = 0; n + 1 < dim; ++n) {
        const double root = std::sqrt(std::max(phi[static_cast<std::size_t>(n) + 1], 0.0));
        rep.bdag(n + 1, n) = root;
        rep.b(n, n + 1) = root;
        const double w = re.rho_of_N(n) * root;
        rep.B(n, n + 1) = w;
        rep.B(n + 1, n) = w;
    }
    rep.C = commutator(rep.A, rep.B);
    return rep;
}

namespace {

double relative_dev(const Matrix& lhs, const Matrix& rhs) {
    return frobenius_norm(lhs - rhs) /
           std::max({1.0, frobenius_norm(lhs), frobenius_norm(rhs)});
}

} // namespace

ClosureReport verify_closure(const MatrixRep& rep, const StructureConstantsValues& v,
                             double tol) {
    const Matrix& A = rep.A;
    const Matrix& B = rep.B;
    const Matrix& C = rep.C;
    const Matrix I = Matrix::identity(rep.dimension);
    const Matrix A2 = A * A;
    const Matrix B2 = B * B;
    const Matrix AB = anticommutator(A, B);

    ClosureReport r;
    r.dev_ab_c = relative_dev(commutator(A, B), C);

    Matrix rhs_ac = v.alpha * A2 + v.gamma * AB + v.delta * A + v.epsilon * B + v.zeta * I;
    r.dev_ac = relative_dev(commutator(A, C), rhs_ac);

    Matrix rhs_bc = v.a * A2 - v.gamma * B2 - v.beta * AB + v.d * A - v.delta * B + v.z * I;
    r.dev_bc = relative_dev(commutator(B, C), rhs_bc);

    const Matrix K = casimir_matrix(v, A, B, C);
    r.dev_casimir = relative_dev(K, v.casimir * I);

    r.max_dev = std::max({r.dev_ab_c, r.dev_ac, r.dev_bc, r.dev_casimir});
    r.pass = r.max_dev <= tol;
    return r;
}

namespace {

// Interior structure-function diagnostics at one candidate energy.
struct PhiProbe {
    double normalized_end;      // Phi(p+1) / scale
    double scale;
    bool positivity_ok;
    bool degenerate;
    bool valid;
};

PhiProbe probe(const StructureConstants& sc, bool gamma_is_zero,
               const std::function<double(double)>& u_rule, int p, double energy) {
    PhiProbe pr{};
    pr.valid = false;
    StructureConstantsValues v = eval(sc, energy);
    OscillatorRealization re;
    try {
        re = gamma_is_zero ? realize_gamma_zero(v, u_rule(energy))
                           : realize_gamma_nonzero(v, u_rule(energy));
    } catch (const std::domain_error&) {
        return pr; // outside the realization's domain at this energy
    }

    std::vector<double> phi(static_cast<std::size_t>(p) + 2);
    double scale = 1.0;
    for (int x = 0; x <= p + 1; ++x) {
        const double value = re.Phi_of_N(x);
        if (!std::isfinite(value)) return pr;
        phi[static_cast<std::size_t>(x)] = value;
        scale = std::max(scale, std::abs(value));
    }
    // The integer samples all vanish at a quantized energy when p = 0, which
    // would leave the normalization blind to the natural magnitude of Phi;
    // a half-integer sample keeps the scale honest there.
    const double mid = re.Phi_of_N(0.5 * (p + 1));
    if (!std::isfinite(mid)) return pr;
    scale = std::max(scale, std::abs(mid));
    pr.scale = scale;
    pr.normalized_end = phi[static_cast<std::size_t>(p) + 1] / scale;
    pr.positivity_ok = true;
    pr.degenerate = false;
    for (int x = 1; x <= p; ++x) {
        const double value = phi[static_cast<std::size_t>(x)];
        if (value < -1e-9 * scale) pr.positivity_ok = false;
        if (std::abs(value) <= 1e-9 * scale) pr.degenerate = true;
    }
    pr.valid = true;
    return pr;
}

} // namespace

std::vector<QuantizedEnergy> find_quantized_energies(
    const StructureConstants& sc, const std::function<double(double)>& u_rule, int p,
    double bracket_lo, double bracket_hi, double tol, int scan_points) {
    if (p < 0) throw std::invalid_argument("find_quantized_energies: p must be nonnegative");
    if (!(bracket_lo < bracket_hi))
        throw std::invalid_argument("find_quantized_energies: empty bracket");
    if (scan_points < 2)
        throw std::invalid_argument("find_quantized_energies: need at least 2 scan points");

    const bool gamma_is_zero = sc.gamma.is_zero();
    auto eval_probe = [&](double e) { return probe(sc, gamma_is_zero, u_rule, p, e); };

    const double width = bracket_hi - bracket_lo;
    const double e_scale = std::max({1.0, std::abs(bracket_lo), std::abs(bracket_hi)});

    std::vector<double> roots;
    auto push_root = [&](double e) {
        for (double r : roots)
            if (std::abs(r - e) <= 1e-9 * std::max(1.0, std::abs(r))) return;
        roots.push_back(e);
    };

    PhiProbe prev = eval_probe(bracket_lo);
    double prev_e = bracket_lo;
    if (prev.valid && prev.normalized_end == 0.0) push_root(prev_e);
    for (int i = 1; i <= scan_points; ++i) {
        const double e = bracket_lo + width * i / scan_points;
        PhiProbe cur = eval_probe(e);
        if (cur.valid && cur.normalized_end == 0.0) push_root(e);
        if (prev.valid && cur.valid && prev.normalized_end * cur.normalized_end < 0.0) {
            double a = prev_e, b = e;
            double fa = prev.normalized_end;
            for (int it = 0; it < 200 && (b - a) > 1e-15 * e_scale; ++it) {
                const double m = 0.5 * (a + b);
                PhiProbe pm = eval_probe(m);
                if (!pm.valid) break;
                if (pm.normalized_end == 0.0) {
                    a = b = m;
                    break;
                }
                if (fa * pm.normalized_end < 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = pm.normalized_end;
                }
            }
            push_root(0.5 * (a + b));
        }
        prev = cur;
        prev_e = e;
    }

    std::sort(roots.begin(), roots.end());
    std::vector<QuantizedEnergy> out;
    for (double e : roots) {
        PhiProbe pr = eval_probe(e);
        if (!pr.valid) continue;
        QuantizedEnergy q;
        q.E_tilde = e;
        q.residual = std::abs(pr.normalized_end);
        q.positivity_ok = pr.positivity_ok;
        q.degenerate = pr.degenerate;
        if (q.residual > std::max(tol, 1e-10)) continue; // bisection stopped off a true root
        out.push_back(q);
    }
    return out;
}

} // namespace sw
