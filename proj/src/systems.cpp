#include "swspectra/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sw {

namespace {

void require_case(int case_id) {
    if (case_id < 1 || case_id > 4)
        throw std::invalid_argument("case_id must be between 1 and 4");
}

void require_sign(int s, const char* slot) {
    if (s != -1 && s != 1)
        throw std::invalid_argument(std::string("branch sign ") + slot + " must be +1 or -1");
}

} // namespace

TildeParams tilde_map(const PhysicalParams& pp, double E, int case_id) {
    require_case(case_id);
    const double c2 = pp.c * pp.c;
    if (!(E > -pp.m * c2))
        throw std::domain_error("tilde_map: requires E > -m c^2");
    TildeParams tp;
    tp.hbar = pp.hbar;
    tp.m = (E + pp.m * c2) / (2.0 * c2);
    tp.E_tilde = E - pp.m * c2;
    const double ratio = tp.m / pp.m;
    switch (case_id) {
        case 1:
            tp.omega = std::sqrt(pp.m / tp.m) * pp.omega;
            tp.mu1 = ratio * pp.mu1;
            tp.mu2 = ratio * pp.mu2;
            break;
        case 2:
            tp.omega = std::sqrt(pp.m / tp.m) * pp.omega;
            tp.mu = ratio * pp.mu;
            break;
        case 3:
            tp.k = std::sqrt(ratio) * pp.k;
            tp.mu1 = ratio * pp.mu1;
            tp.mu2 = ratio * pp.mu2;
            break;
        case 4:
            tp.k = std::sqrt(ratio) * pp.k;
            tp.mu1 = std::pow(ratio, 0.25) * pp.mu1;
            tp.mu2 = std::pow(ratio, 0.25) * pp.mu2;
            break;
    }
    return tp;
}

double k_tilde_index(int case_id, double mu_tilde, double hbar, int which) {
    require_case(case_id);
    if (case_id == 4)
        throw std::invalid_argument("k_tilde_index: case 4 carries its couplings directly");
    const double h2 = hbar * hbar;
    const double arg = (case_id == 3) ? 2.0 * mu_tilde / h2 + 0.25 : mu_tilde / h2 + 0.25;
    if (arg < 0.0)
        throw std::domain_error("k_tilde_" + std::to_string(which) + " imaginary");
    return std::sqrt(arg);
}

StructureConstants structure_constants(int case_id, const TildeParams& tp) {
    require_case(case_id);
    const double hb = tp.hbar;
    const double h2 = hb * hb, h4 = h2 * h2, h6 = h4 * h2;
    const double mt = tp.m;
    using P = EnergyPolynomial;

    StructureConstants sc;
    sc.alpha = P::constant(0.0);
    sc.beta = P::constant(0.0);
    sc.gamma = P::constant(0.0);
    sc.delta = P::constant(0.0);
    sc.epsilon = P::constant(0.0);
    sc.zeta = P::constant(0.0);
    sc.a = P::constant(0.0);
    sc.d = P::constant(0.0);
    sc.z = P::constant(0.0);
    sc.casimir = P::constant(0.0);

    switch (case_id) {
        case 1: {
            const double w = tp.omega;
            const double m2w2 = mt * mt * w * w;
            const double mu1 = tp.mu1, mu2 = tp.mu2;
            sc.alpha = P::constant(8.0 * h2);
            sc.beta = P::constant(8.0 * h2);
            sc.delta = P({0.0, -16.0 * h2 * mt});
            sc.epsilon = P::constant(16.0 * h2 * m2w2);
            sc.zeta = P::constant(-16.0 * h2 * (mu1 + mu2) * m2w2 + 8.0 * h4 * m2w2);
            sc.d = P::constant(16.0 * h4);
            sc.z = P({0.0, -16.0 * h2 * mt * (mu2 - mu1) - 16.0 * h4 * mt});
            sc.casimir = P({16.0 * h2 * (mu2 - mu1) * (mu2 - mu1) * m2w2 - 32.0 * h6 * m2w2 +
                                32.0 * h4 * (mu1 + mu2) * m2w2,
                            0.0, 64.0 * h2 * mu1 * mt * mt - 48.0 * h4 * mt * mt});
            break;
        }
        case 2: {
            const double w = tp.omega;
            const double m2w2 = mt * mt * w * w;
            sc.epsilon = P::constant(16.0 * h2 * m2w2);
            sc.a = P::constant(6.0 * h2);
            sc.d = P({0.0, -16.0 * h2 * mt});
            sc.z = P({-8.0 * h2 * tp.mu * m2w2 + 6.0 * h4 * m2w2, 0.0, 8.0 * h2 * mt * mt});
            sc.casimir = P({0.0, 64.0 * h4 * mt * mt * mt * w * w});
            break;
        }
        case 3: {
            const double kt = tp.k;
            const double mu1 = tp.mu1, mu2 = tp.mu2;
            sc.gamma = P::constant(2.0 * h2);
            sc.epsilon = P::constant(-h4);
            sc.zeta = P::constant(-h2 * kt * std::sqrt(mt) * (mu1 - mu2));
            sc.d = P({0.0, 8.0 * h2 * mt});
            sc.z = P({h2 * kt * kt * mt / 2.0, h4 * mt - 4.0 * h2 * (mu1 + mu2) * mt});
            sc.casimir = P({h2 * kt * kt * mt * (mu1 + mu2) + h4 * kt * kt * mt / 2.0,
                            -2.0 * h2 * (mu1 - mu2) * (mu1 - mu2) * mt -
                                2.0 * h4 * (mu1 + mu2) * mt + h6 * mt});
            break;
        }
        case 4: {
            const double kt = tp.k;
            const double mu1 = tp.mu1, mu2 = tp.mu2;
            const double m32 = std::pow(mt, 1.5);
            sc.epsilon = P({0.0, -2.0 * h2 * mt});
            sc.d = P({0.0, 2.0 * h2 * mt});
            sc.zeta = P::constant(-h2 * mu1 * mu2 * m32 / 2.0);
            sc.z = P::constant(-h2 * (mu1 * mu1 - mu2 * mu2) * m32 / 4.0);
            sc.casimir = P({h2 * mt * mt * kt * (mu1 * mu1 + mu2 * mu2) / 4.0,
                            h2 * mt * mt * kt * kt / 2.0, h4 * mt * mt});
            break;
        }
    }
    return sc;
}

std::function<double(double)> representation_shift_rule(int case_id, const TildeParams& tp,
                                                        SignPair signs, int p) {
    require_case(case_id);
    switch (case_id) {
        case 1: {
            require_sign(signs.e1, "e1");
            const double k1 = k_tilde_index(1, tp.mu1, tp.hbar, 1);
            const double u = 0.5 + signs.e1 * k1 / 2.0;
            return [u](double) { return u; };
        }
        case 2:
            return [](double) { return 0.5; };
        case 3: {
            require_sign(signs.e1, "e1");
            require_sign(signs.e2, "e2");
            const double k1 = k_tilde_index(3, tp.mu1, tp.hbar, 1);
            const double k2 = k_tilde_index(3, tp.mu2, tp.hbar, 2);
            const double u = (1.0 + signs.e1 * k1 + signs.e2 * k2) / 2.0;
            return [u](double) { return u; };
        }
        default: { // case 4: energy- and p-dependent shift
            const double hb = tp.hbar;
            const double diff = tp.mu1 * tp.mu1 - tp.mu2 * tp.mu2;
            return [hb, diff, p](double e_tilde) {
                return -0.5 * p - diff / (4.0 * hb * std::pow(-2.0 * e_tilde, 1.5));
            };
        }
    }
}

namespace {

// Case-4 quantization: roots of the sign-free cubic
//   T(E)^2 + 32 hbar^2 (p+1)^2 E^3 = 0
// where T is the linear (standard) or mass-weighted sign term; each root's
// branch sign is eps = -sign(T), and roots are confirmed against the
// unsquared condition to drop artifacts of the squaring.
std::vector<double> case4_energies(const TildeParams& tp, int p, int want_sign,
                                   Case4Quantization variant) {
    const double hb = tp.hbar, mt = tp.m, kt = tp.k;
    const double S = tp.mu1 * tp.mu1 + tp.mu2 * tp.mu2;
    const double m32 = std::pow(mt, 1.5);
    auto sign_term = [&](double e) {
        return variant == Case4Quantization::standard ? 4.0 * kt * e + S
                                                      : 4.0 * mt * kt * e * e + m32 * S;
    };
    const double lead = 32.0 * hb * hb * (p + 1.0) * (p + 1.0);
    auto cubic = [&](double e) {
        const double t = sign_term(e);
        return t * t + lead * e * e * e;
    };

    const double W = 10.0 * mt * (kt * kt + S) + 1.0;
    const int n = 1000;
    std::vector<double> raw;
    auto push = [&](double e) {
        if (!(e < 0.0)) return;
        for (double r : raw)
            if (std::abs(r - e) <= 1e-9 * std::max(1.0, std::abs(r))) return;
        raw.push_back(e);
    };

    double prev_e = -W, prev_g = cubic(prev_e);
    for (int i = 1; i <= n; ++i) {
        const double e = -W + W * static_cast<double>(i) / n;
        const double g = cubic(e);
        if (g == 0.0) push(e);
        if (prev_g * g < 0.0) {
            double a = prev_e, b = e, fa = prev_g;
            for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, W); ++it) {
                const double m = 0.5 * (a + b);
                const double fm = cubic(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            push(0.5 * (a + b));
        }
        prev_e = e;
        prev_g = g;
    }

    std::vector<double> out;
    for (double r : raw) {
        const double t = sign_term(r);
        if (t == 0.0) continue;
        const int eps = t > 0.0 ? -1 : +1;
        const double flux = 2.0 * hb * (p + 1.0) * std::pow(-2.0 * r, 1.5);
        const double residual = flux + eps * t;
        const double scale = std::max({1.0, flux, std::abs(t)});
        if (std::abs(residual) > 1e-8 * scale) continue; // squaring artifact
        if (eps == want_sign) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<double> quasi_spectrum(int case_id, const TildeParams& tp, int p, SignPair signs,
                                   Case4Quantization variant) {
    require_case(case_id);
    if (p < 0) throw std::invalid_argument("quasi_spectrum: p must be nonnegative");
    const double hb = tp.hbar;
    switch (case_id) {
        case 1: {
            require_sign(signs.e1, "e1");
            require_sign(signs.e2, "e2");
            const double k1 = k_tilde_index(1, tp.mu1, hb, 1);
            const double k2 = k_tilde_index(1, tp.mu2, hb, 2);
            return {2.0 * hb * tp.omega * (p + 1.0 + (signs.e1 * k1 + signs.e2 * k2) / 2.0)};
        }
        case 2: {
            require_sign(signs.e1, "e1");
            const double k = k_tilde_index(2, tp.mu, hb, 1);
            return {2.0 * hb * tp.omega * (p + 1.0 + signs.e1 * k / 2.0)};
        }
        case 3: {
            require_sign(signs.e1, "e1");
            require_sign(signs.e2, "e2");
            if (tp.k == 0.0) return {};
            const double k1 = k_tilde_index(3, tp.mu1, hb, 1);
            const double k2 = k_tilde_index(3, tp.mu2, hb, 2);
            const double D = 2.0 * (p + 1.0) + signs.e1 * k1 + signs.e2 * k2;
            if (D == 0.0) return {};
            return {-tp.k * tp.k / (2.0 * hb * hb * D * D)};
        }
        default: {
            require_sign(signs.e1, "e1");
            return case4_energies(tp, p, signs.e1, variant);
        }
    }
}

double structure_function_factored(int case_id, const TildeParams& tp, int p, SignPair signs,
                                   double x, double e_tilde, Case1PhiReading reading) {
    require_case(case_id);
    const double hb = tp.hbar;
    const double h2 = hb * hb;
    switch (case_id) {
        case 1: {
            require_sign(signs.e1, "e1");
            require_sign(signs.e2, "e2");
            const double k1 = k_tilde_index(1, tp.mu1, hb, 1);
            const double k2 = k_tilde_index(1, tp.mu2, hb, 2);
            double last = 0.0;
            switch (reading) {
                case Case1PhiReading::eps1_ascending:
                    last = x + signs.e1 * k2;
                    break;
                case Case1PhiReading::eps2_ascending:
                    last = x + signs.e2 * k2;
                    break;
                case Case1PhiReading::eps2_mirrored: {
                    const double s = signs.e1 * k1 + signs.e2 * k2;
                    const double P = e_tilde / (2.0 * hb * tp.omega) - s / 2.0;
                    last = P + signs.e2 * k2 - x;
                    break;
                }
            }
            return 16.0 * h2 * h2 * x * (p + 1.0 - x) * (x + signs.e1 * k1) * last;
        }
        case 2: {
            require_sign(signs.e1, "e1");
            const double k = k_tilde_index(2, tp.mu, hb, 1);
            return 4.0 * h2 * hb * x * (p + 1.0 - x) * (p + 1.0 - x + signs.e1 * k);
        }
        case 3: {
            require_sign(signs.e1, "e1");
            require_sign(signs.e2, "e2");
            const double k1 = k_tilde_index(3, tp.mu1, hb, 1);
            const double k2 = k_tilde_index(3, tp.mu2, hb, 2);
            const double s = signs.e1 * k1 + signs.e2 * k2;
            const double D = 2.0 * (p + 1.0) + s;
            if (D == 0.0)
                throw std::domain_error(
                    "structure_function_factored: vanishing principal denominator");
            return 3145728.0 * tp.k * tp.k * tp.m * tp.m * std::pow(hb, 16) * x *
                   (p + 1.0 - x) * (x + signs.e1 * k1) * (x + signs.e2 * k2) * (x + s) *
                   (x + p + 1.0 + s) / (D * D);
        }
        default:
            return -tp.m * e_tilde / 2.0 * x * (p + 1.0 - x);
    }
}

std::vector<SpectrumLevel> enumerate_levels(int case_id, const TildeParams& tp, int p_max) {
    require_case(case_id);
    if (p_max < 0) throw std::invalid_argument("enumerate_levels: p_max must be nonnegative");

    const StructureConstants sc = structure_constants(case_id, tp);
    const bool gamma_is_zero = sc.gamma.is_zero();

    std::vector<SignPair> branches;
    if (case_id == 1 || case_id == 3)
        branches = {{-1, -1}, {-1, +1}, {+1, -1}, {+1, +1}};
    else
        branches = {{-1, 0}, {+1, 0}}; // single-sign cases

    std::vector<SpectrumLevel> out;
    for (int p = 0; p <= p_max; ++p) {
        for (const SignPair& sg : branches) {
            const std::vector<double> energies = quasi_spectrum(case_id, tp, p, sg);
            const auto u_rule = representation_shift_rule(case_id, tp, sg, p);
            for (double et : energies) {
                SpectrumLevel lv;
                lv.case_id = case_id;
                lv.p = p;
                lv.signs = sg;
                lv.E_tilde = et;
                lv.E_rel = std::numeric_limits<double>::quiet_NaN();
                lv.u = u_rule(et);

                const StructureConstantsValues v = eval(sc, et);
                bool realized = true;
                OscillatorRealization re;
                try {
                    re = gamma_is_zero ? realize_gamma_zero(v, lv.u)
                                       : realize_gamma_nonzero(v, lv.u);
                } catch (const std::domain_error&) {
                    realized = false;
                    lv.positivity_ok = false;
                    lv.note = "realization undefined at this energy";
                }
                if (realized) {
                    std::vector<double> phi(static_cast<std::size_t>(p) + 2);
                    double scale = 1.0;
                    for (int ix = 0; ix <= p + 1; ++ix) {
                        phi[static_cast<std::size_t>(ix)] = re.Phi_of_N(ix);
                        scale = std::max(scale, std::abs(phi[static_cast<std::size_t>(ix)]));
                    }
                    lv.residual = std::abs(phi[static_cast<std::size_t>(p) + 1]) / scale;
                    for (int ix = 1; ix <= p; ++ix) {
                        const double value = phi[static_cast<std::size_t>(ix)];
                        if (value < -1e-9 * scale) lv.positivity_ok = false;
                        if (std::abs(value) <= 1e-9 * scale) lv.degenerate = true;
                    }
                    if (!lv.positivity_ok)
                        lv.note = "no unitary representation";
                    else if (lv.degenerate)
                        lv.note = "degenerate representation";
                }
                out.push_back(lv);
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const SpectrumLevel& a, const SpectrumLevel& b) {
        if (a.E_tilde != b.E_tilde) return a.E_tilde < b.E_tilde;
        if (a.p != b.p) return a.p < b.p;
        if (a.signs.e1 != b.signs.e1) return a.signs.e1 < b.signs.e1;
        return a.signs.e2 < b.signs.e2;
    });
    return out;
}

} // namespace sw
