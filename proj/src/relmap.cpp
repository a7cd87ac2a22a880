#include "swspectra/relmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sw {

namespace {

constexpr double NaN = std::numeric_limits<double>::quiet_NaN();

void require_case(int case_id) {
    if (case_id < 1 || case_id > 4)
        throw std::invalid_argument("case_id must be between 1 and 4");
}

void require_sign(int s, const char* slot) {
    if (s != -1 && s != 1)
        throw std::invalid_argument(std::string("branch sign ") + slot + " must be +1 or -1");
}

void require_signs(int case_id, SignPair signs) {
    require_sign(signs.e1, "e1");
    if (case_id == 1 || case_id == 3) require_sign(signs.e2, "e2");
}

// Ladder index of the direct closed forms, written in physical couplings with
// the effective mass m_eff(E) inside: sqrt(m_eff mu/(m hbar^2) + 1/4).
double direct_k(const PhysicalParams& pp, double m_eff, double mu) {
    return std::sqrt(m_eff * mu / (pp.m * pp.hbar * pp.hbar) + 0.25);
}

double residual_direct_form(int case_id, const PhysicalParams& pp, int p, SignPair signs,
                            double E, Case4Quantization variant) {
    const double c2 = pp.c * pp.c;
    const double m_eff = (E + pp.m * c2) / (2.0 * c2);
    const double et = E - pp.m * c2;
    const double hb = pp.hbar;
    switch (case_id) {
        case 1: {
            const double k1 = direct_k(pp, m_eff, pp.mu1);
            const double k2 = direct_k(pp, m_eff, pp.mu2);
            const double bracket = p + 1.0 + signs.e1 * k1 + signs.e2 * k2;
            return et * et * m_eff -
                   4.0 * hb * hb * pp.m * pp.m * pp.omega * pp.omega * bracket * bracket;
        }
        case 2: {
            const double k = direct_k(pp, m_eff, pp.mu);
            const double bracket = p + 1.0 + signs.e1 * k / 2.0;
            return et * et * m_eff -
                   4.0 * hb * hb * pp.m * pp.m * pp.omega * pp.omega * bracket * bracket;
        }
        case 3: {
            const double k1 = direct_k(pp, m_eff, pp.mu1);
            const double k2 = direct_k(pp, m_eff, pp.mu2);
            const double D = 2.0 * (p + 1.0) + signs.e1 * k1 + signs.e2 * k2;
            return et * 2.0 * pp.m * hb * hb * D * D + m_eff * pp.k;
        }
        default: {
            const double S = pp.mu1 * pp.mu1 + pp.mu2 * pp.mu2;
            const double flux = std::pow(2.0, 2.5) * std::sqrt(pp.m) * (p + 1.0) * hb *
                                std::pow(-et * m_eff, 1.5);
            const double mass_pow = variant == Case4Quantization::standard
                                        ? m_eff * m_eff
                                        : std::pow(m_eff, 1.5);
            return flux + signs.e1 * (4.0 * pp.k * m_eff * m_eff * et + mass_pow * S);
        }
    }
}

double residual_composed_form(int case_id, const PhysicalParams& pp, int p, SignPair signs,
                              double E, Case4Quantization variant) {
    TildeParams tp;
    try {
        tp = tilde_map(pp, E, case_id);
    } catch (const std::domain_error&) {
        return NaN;
    }
    const double hb = tp.hbar;
    try {
        switch (case_id) {
            case 1: {
                const double k1 = k_tilde_index(1, tp.mu1, hb, 1);
                const double k2 = k_tilde_index(1, tp.mu2, hb, 2);
                return tp.E_tilde -
                       2.0 * hb * tp.omega * (p + 1.0 + (signs.e1 * k1 + signs.e2 * k2) / 2.0);
            }
            case 2: {
                const double k = k_tilde_index(2, tp.mu, hb, 1);
                return tp.E_tilde - 2.0 * hb * tp.omega * (p + 1.0 + signs.e1 * k / 2.0);
            }
            case 3: {
                const double k1 = k_tilde_index(3, tp.mu1, hb, 1);
                const double k2 = k_tilde_index(3, tp.mu2, hb, 2);
                const double D = 2.0 * (p + 1.0) + signs.e1 * k1 + signs.e2 * k2;
                if (D == 0.0) return NaN;
                return tp.E_tilde + tp.k * tp.k / (2.0 * hb * hb * D * D);
            }
            default: {
                const double S = tp.mu1 * tp.mu1 + tp.mu2 * tp.mu2;
                const double flux = 2.0 * hb * (p + 1.0) * std::pow(-2.0 * tp.E_tilde, 1.5);
                const double t = variant == Case4Quantization::standard
                                     ? 4.0 * tp.k * tp.E_tilde + S
                                     : 4.0 * tp.m * tp.k * tp.E_tilde * tp.E_tilde +
                                           std::pow(tp.m, 1.5) * S;
                return flux + signs.e1 * t;
            }
        }
    } catch (const std::domain_error&) {
        return NaN; // imaginary ladder index at this energy
    }
}

// Flux (nonnegative) and sign terms of the case-4 condition, for the
// sign-free squared solve: residual = flux + e1 * t.
bool case4_terms(const PhysicalParams& pp, int p, double E, ResidualForm form,
                 Case4Quantization variant, double& flux, double& t) {
    const double c2 = pp.c * pp.c;
    const double et = E - pp.m * c2;
    if (!(et < 0.0)) return false;
    if (form == ResidualForm::direct) {
        const double m_eff = (E + pp.m * c2) / (2.0 * c2);
        const double S = pp.mu1 * pp.mu1 + pp.mu2 * pp.mu2;
        flux = std::pow(2.0, 2.5) * std::sqrt(pp.m) * (p + 1.0) * pp.hbar *
               std::pow(-et * m_eff, 1.5);
        const double mass_pow = variant == Case4Quantization::standard ? m_eff * m_eff
                                                                       : std::pow(m_eff, 1.5);
        t = 4.0 * pp.k * m_eff * m_eff * et + mass_pow * S;
    } else {
        TildeParams tp;
        try {
            tp = tilde_map(pp, E, 4);
        } catch (const std::domain_error&) {
            return false;
        }
        const double S = tp.mu1 * tp.mu1 + tp.mu2 * tp.mu2;
        flux = 2.0 * tp.hbar * (p + 1.0) * std::pow(-2.0 * tp.E_tilde, 1.5);
        t = variant == Case4Quantization::standard
                ? 4.0 * tp.k * tp.E_tilde + S
                : 4.0 * tp.m * tp.k * tp.E_tilde * tp.E_tilde + std::pow(tp.m, 1.5) * S;
    }
    return std::isfinite(flux) && std::isfinite(t);
}

} // namespace

double relativistic_residual(int case_id, const PhysicalParams& pp, int p, SignPair signs,
                             double E, ResidualForm form, Case4Quantization variant) {
    require_case(case_id);
    require_signs(case_id, signs);
    if (p < 0) throw std::invalid_argument("relativistic_residual: p must be nonnegative");
    return form == ResidualForm::direct
               ? residual_direct_form(case_id, pp, p, signs, E, variant)
               : residual_composed_form(case_id, pp, p, signs, E, variant);
}

namespace {

// Nearest element of a nonempty list to `ref`.
double nearest(const std::vector<double>& values, double ref) {
    double best = values.front();
    for (double v : values)
        if (std::abs(v - ref) < std::abs(best - ref)) best = v;
    return best;
}

} // namespace

std::vector<RelativisticLevel> solve_relativistic(int case_id, const PhysicalParams& pp, int p,
                                                  SignPair signs, ResidualForm form,
                                                  Case4Quantization variant,
                                                  const EnergyWindow* window, int scan_points) {
    require_case(case_id);
    require_signs(case_id, signs);
    if (p < 0) throw std::invalid_argument("solve_relativistic: p must be nonnegative");
    if (scan_points < 2)
        throw std::invalid_argument("solve_relativistic: need at least 2 scan points");

    const double c2 = pp.c * pp.c;
    const double mc2 = pp.m * c2;

    EnergyWindow win;
    if (window) {
        win = *window;
    } else {
        win.lo = -0.999 * mc2;
        if (case_id <= 2) {
            double ks = 1.0;
            try {
                ks = case_id == 1 ? k_tilde_index(1, pp.mu1, pp.hbar, 1) +
                                        k_tilde_index(1, pp.mu2, pp.hbar, 2)
                                  : k_tilde_index(2, pp.mu, pp.hbar, 1);
            } catch (const std::domain_error&) {
            }
            win.hi = mc2 + 10.0 * pp.hbar * pp.omega * (p + 2.0 + ks);
        } else {
            win.hi = mc2;
        }
    }
    if (!(win.lo < win.hi))
        throw std::invalid_argument("solve_relativistic: empty energy window");

    const double width = win.hi - win.lo;
    std::vector<double> roots;
    auto push_root = [&](double e) {
        for (double r : roots)
            if (std::abs(r - e) <= 1e-9 * std::max(1.0, std::abs(r))) return;
        roots.push_back(e);
    };
    auto bisect = [&](auto&& f, double a, double b, double fa) {
        for (int it = 0;
             it < 200 && (b - a) > 1e-15 * std::max({1.0, std::abs(a), std::abs(b)}); ++it) {
            const double m = 0.5 * (a + b);
            const double fm = f(m);
            if (!std::isfinite(fm)) break;
            if (fm == 0.0) return m;
            if (fa * fm < 0.0) {
                b = m;
            } else {
                a = m;
                fa = fm;
            }
        }
        return 0.5 * (a + b);
    };

    if (case_id == 4) {
        // Sign-free squared condition; each bracketed root carries its own sign.
        // Evaluation is capped just below mc^2: the condition is only defined for
        // E < mc^2, and its zero exactly at mc^2 is a spurious double root, so
        // capping keeps brackets around genuine roots that approach mc^2 (the
        // nonrelativistic limit) without manufacturing new ones.
        const double e_cap = mc2 - 1e-12 * std::max(1.0, mc2);
        auto squared = [&](double E) {
            double flux = 0.0, t = 0.0;
            if (E > e_cap) E = e_cap;
            if (!case4_terms(pp, p, E, form, variant, flux, t)) return NaN;
            return t * t - flux * flux;
        };
        double prev_e = win.lo, prev_g = squared(prev_e);
        for (int i = 1; i <= scan_points; ++i) {
            const double e = win.lo + width * static_cast<double>(i) / scan_points;
            const double g = squared(e);
            if (std::isfinite(g)) {
                if (g == 0.0 && e < mc2) push_root(e);
                if (std::isfinite(prev_g) && prev_g * g < 0.0)
                    push_root(bisect(squared, prev_e, e, prev_g));
            }
            prev_e = e;
            prev_g = g;
        }
        // Confirm against the signed condition and keep the requested branch.
        std::vector<double> kept;
        for (double r : roots) {
            double flux = 0.0, t = 0.0;
            if (!case4_terms(pp, p, r, form, variant, flux, t)) continue;
            if (t == 0.0) continue;
            const int eps = t > 0.0 ? -1 : +1;
            const double res = flux + eps * t;
            if (std::abs(res) > 1e-8 * std::max({1.0, flux, std::abs(t)})) continue;
            if (eps == signs.e1) kept.push_back(r);
        }
        roots = std::move(kept);
    } else {
        auto r_of = [&](double E) {
            return relativistic_residual(case_id, pp, p, signs, E, form, variant);
        };
        double prev_e = win.lo, prev_r = r_of(prev_e);
        for (int i = 1; i <= scan_points; ++i) {
            const double e = win.lo + width * static_cast<double>(i) / scan_points;
            const double r = r_of(e);
            if (std::isfinite(r)) {
                if (r == 0.0) push_root(e);
                if (std::isfinite(prev_r) && prev_r * r < 0.0)
                    push_root(bisect(r_of, prev_e, e, prev_r));
            }
            prev_e = e;
            prev_r = r;
        }
    }
    std::sort(roots.begin(), roots.end());

    std::vector<RelativisticLevel> out;
    for (double E : roots) {
        RelativisticLevel lv;
        lv.case_id = case_id;
        lv.p = p;
        lv.signs = signs;
        lv.E = E;
        lv.E_tilde = E - mc2;
        lv.residual_direct = residual_direct_form(case_id, pp, p, signs, E, variant);
        lv.residual_composed = residual_composed_form(case_id, pp, p, signs, E, variant);
        lv.residual = form == ResidualForm::direct ? lv.residual_direct : lv.residual_composed;

        // Second solution path: damped fixed point of E -> mc^2 + spectrum of
        // the mapped auxiliary problem at E.
        bool converged = false;
        double e_cur = E;
        try {
            const std::vector<double> seed =
                quasi_spectrum(case_id, tilde_map(pp, mc2, case_id), p, signs, variant);
            if (!seed.empty()) {
                e_cur = mc2 + nearest(seed, lv.E_tilde);
                for (int it = 0; it < 500; ++it) {
                    const std::vector<double> es =
                        quasi_spectrum(case_id, tilde_map(pp, e_cur, case_id), p, signs, variant);
                    if (es.empty()) break;
                    const double target = mc2 + nearest(es, e_cur - mc2);
                    const double step = target - e_cur;
                    e_cur += 0.5 * step;
                    if (std::abs(step) <= 1e-12 * std::max(1.0, std::abs(e_cur))) {
                        converged = true;
                        break;
                    }
                }
            }
        } catch (const std::domain_error&) {
            converged = false;
        }
        lv.two_path_converged = converged;
        lv.two_path_delta = std::abs(e_cur - E);
        if (!converged) lv.note = "fixed-point path did not converge";
        out.push_back(lv);
    }
    return out;
}

DiracAlgebraConstants dirac_structure_constants(int case_id, const PhysicalParams& pp) {
    require_case(case_id);
    const double m = pp.m, c = pp.c, hb = pp.hbar;
    const double h2 = hb * hb, h4 = h2 * h2;
    const double c2 = c * c, c3 = c2 * c, c4 = c2 * c2, c5 = c4 * c;
    const double m2 = m * m, m3 = m2 * m, m4 = m2 * m2, m5 = m4 * m;
    using P = EnergyPolynomial;
    auto HP = [](std::vector<double> v) { return P(std::move(v), "H"); };

    DiracAlgebraConstants dc;
    dc.ac_A2 = dc.ac_B2 = dc.ac_AB = dc.ac_A = dc.ac_B = dc.ac_const = HP({0.0});
    dc.bc_A2 = dc.bc_B2 = dc.bc_AB = dc.bc_A = dc.bc_B = dc.bc_const = HP({0.0});

    switch (case_id) {
        case 1: {
            const double w2 = pp.omega * pp.omega, mu1 = pp.mu1, mu2 = pp.mu2;
            dc.ac_A2 = HP({16.0 * c * h2 * m});
            dc.ac_A = HP({32.0 * c4 * h2 * m4, 0.0, -32.0 * h2 * m2});
            dc.ac_B = HP({32.0 * c2 * h2 * m4 * w2, 32.0 * h2 * m3 * w2});
            dc.ac_const = HP({-32.0 * c3 * h2 * m5 * (-h2 + mu1 + mu2) * w2,
                              32.0 * c * h2 * m4 * (h2 - 2.0 * mu1 - 2.0 * mu2) * w2,
                              -32.0 * h2 * w2 * m3 * (mu1 + mu2) / c});
            dc.bc_AB = HP({-16.0 * c * h2 * m});
            dc.bc_B = HP({-32.0 * c4 * h2 * m4, 0.0, 32.0 * h2 * m2});
            dc.bc_A = HP({64.0 * c2 * m2 * h4});
            dc.bc_const = HP({32.0 * c5 * h2 * m5 * (2.0 * h2 + mu2 - mu1),
                              -32.0 * c3 * h2 * m4 * (mu1 - mu2),
                              -32.0 * c * h2 * m3 * (2.0 * h2 - mu1 + mu2),
                              32.0 * h2 * m2 * (mu1 - mu2) / c});
            break;
        }
        case 2: {
            const double w2 = pp.omega * pp.omega, mu = pp.mu;
            dc.ac_B = HP({32.0 * c2 * h2 * m4 * w2, 32.0 * h2 * m3 * w2});
            dc.bc_A2 = HP({12.0 * c * h2 * m});
            dc.bc_A = HP({32.0 * c4 * h2 * m4, 0.0, -32.0 * h2 * m2});
            dc.bc_const =
                HP({8.0 * c3 * h2 * m3 * (2.0 * c4 * m4 + 3.0 * h2 * m2 * w2 - 2.0 * m2 * mu * w2),
                    8.0 * c * h2 * m4 * w2 * (3.0 * h2 - 4.0 * mu),
                    -16.0 * (2.0 * c4 * h2 * m5 + h2 * m3 * mu * w2) / c, 0.0,
                    16.0 * h2 * m3 / c});
            break;
        }
        case 3: {
            const double k = pp.k, mu1 = pp.mu1, mu2 = pp.mu2;
            const double m32 = std::pow(m, 1.5), m52 = std::pow(m, 2.5), m72 = std::pow(m, 3.5);
            dc.ac_AB = HP({4.0 * c * h2 * m});
            dc.ac_B = HP({-4.0 * c2 * m2 * h4});
            dc.ac_const = HP({-2.0 * c3 * h2 * k * m72 * (mu1 - mu2),
                              4.0 * c * h2 * k * m52 * (mu2 - mu1),
                              -2.0 * h2 * k * m32 * (mu1 - mu2) / c});
            dc.bc_B2 = HP({-4.0 * c * m * h2});
            dc.bc_A = HP({-16.0 * c4 * h2 * m4, 0.0, 16.0 * h2 * m2});
            dc.bc_const =
                HP({c3 * h2 * m4 * (k * k + m * c2 * (-4.0 * h2 + 8.0 * (mu1 + mu2))),
                    2.0 * c * h2 * m3 * (k * k + 4.0 * c2 * m * (mu1 + mu2)),
                    h2 * m2 * (k * k + 4.0 * c2 * m * (h2 - 2.0 * (mu1 + mu2))) / c,
                    -8.0 * h2 * m2 * (mu1 + mu2) / c});
            break;
        }
        case 4: {
            const double mu1 = pp.mu1, mu2 = pp.mu2;
            const double m52 = std::pow(m, 2.5), m72 = std::pow(m, 3.5), m92 = std::pow(m, 4.5);
            const double diff = mu1 * mu1 - mu2 * mu2;
            dc.ac_B = HP({4.0 * c4 * h2 * m4, 0.0, -4.0 * h2 * m2});
            dc.ac_const = HP({-c3 * h2 * m92 * mu1 * mu2, -2.0 * c * h2 * m72 * mu1 * mu2,
                              -h2 * m52 * mu1 * mu2 / c});
            dc.bc_A = HP({-4.0 * c4 * h2 * m4, 0.0, 4.0 * h2 * m2});
            dc.bc_const = HP({-c3 * h2 * m92 * diff / 2.0, c * h2 * m72 * (mu2 * mu2 - mu1 * mu1),
                              -h2 * m52 * diff / (2.0 * c)});
            break;
        }
    }
    return dc;
}

DiracSlotValues dirac_slots_at(const DiracAlgebraConstants& dc, double E) {
    DiracSlotValues s;
    s.ac_A2 = dc.ac_A2(E);
    s.ac_B2 = dc.ac_B2(E);
    s.ac_AB = dc.ac_AB(E);
    s.ac_A = dc.ac_A(E);
    s.ac_B = dc.ac_B(E);
    s.ac_const = dc.ac_const(E);
    s.bc_A2 = dc.bc_A2(E);
    s.bc_B2 = dc.bc_B2(E);
    s.bc_AB = dc.bc_AB(E);
    s.bc_A = dc.bc_A(E);
    s.bc_B = dc.bc_B(E);
    s.bc_const = dc.bc_const(E);
    return s;
}

DiracSlotValues dirac_scaled_from_quasi(int case_id, const PhysicalParams& pp, double E) {
    require_case(case_id);
    const TildeParams tp = tilde_map(pp, E, case_id);
    const StructureConstantsValues v = eval(structure_constants(case_id, tp), tp.E_tilde);
    const double s1 = 2.0 * pp.m * pp.c;
    const double s2 = s1 * s1;
    const double s3 = s2 * s1;

    DiracSlotValues s;
    s.ac_A2 = s1 * v.alpha;
    s.ac_B2 = 0.0;
    s.ac_AB = s1 * v.gamma;
    s.ac_A = s2 * v.delta;
    s.ac_B = s2 * v.epsilon;
    s.ac_const = s3 * v.zeta;
    s.bc_A2 = s1 * v.a;
    s.bc_B2 = -s1 * v.gamma;
    s.bc_AB = -s1 * v.beta;
    s.bc_A = s2 * v.d;
    s.bc_B = -s2 * v.delta;
    s.bc_const = s3 * v.z;
    return s;
}

DiracEquivalenceReport verify_dirac_equivalence(int case_id, const PhysicalParams& pp, double E,
                                                double tol) {
    const DiracSlotValues lhs = dirac_slots_at(dirac_structure_constants(case_id, pp), E);
    const DiracSlotValues rhs = dirac_scaled_from_quasi(case_id, pp, E);
    const std::array<double, 12> la = lhs.as_array(), ra = rhs.as_array();

    DiracEquivalenceReport rep;
    for (std::size_t i = 0; i < la.size(); ++i) {
        rep.dev[i] = std::abs(la[i] - ra[i]) / std::max({1.0, std::abs(la[i]), std::abs(ra[i])});
        rep.max_dev = std::max(rep.max_dev, rep.dev[i]);
    }
    rep.pass = rep.max_dev <= tol;
    return rep;
}

} // namespace sw
