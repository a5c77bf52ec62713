#include "anisotrap/trap.hpp"

#include "anisotrap/numerics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace anisotrap {

namespace {

void check_drive(const TrapDrive& d)
{
    if (d.V < 0 || d.Omega_rf <= 0 || d.r0 <= 0 || d.mass <= 0 || d.charge_e <= 0)
        throw std::invalid_argument(
            "TrapDrive: V, Omega_rf, r0, mass, charge_e must be positive");
}

}  // namespace

StabilityParams stability_params(const TrapDrive& d)
{
    check_drive(d);
    const double denom = d.mass * d.r0 * d.r0 * d.Omega_rf * d.Omega_rf;
    StabilityParams p;
    p.a_z = -8.0 * d.charge_e * d.U / denom;
    p.a_r = -0.5 * p.a_z;
    p.q_z = -4.0 * d.charge_e * d.V / denom;
    p.q_r = -0.5 * p.q_z;
    return p;
}

SecularFrequencies secular_frequencies(const TrapDrive& d)
{
    const StabilityParams p = stability_params(d);
    const double rad_r = p.a_r + 0.5 * p.q_r * p.q_r;
    const double rad_z = p.a_z + 0.5 * p.q_z * p.q_z;
    const bool v_zero = (d.V == 0.0 && d.U == 0.0);
    if (!v_zero && rad_r <= 0)
        throw PhysicsError(
            "secular_frequencies: radial axis leaves the pseudopotential regime "
            "(a_r + q_r^2/2 <= 0)");
    if (!v_zero && rad_z <= 0)
        throw PhysicsError(
            "secular_frequencies: axial axis leaves the pseudopotential regime "
            "(a_z + q_z^2/2 <= 0)");
    SecularFrequencies f;
    f.omega_r = 0.5 * d.Omega_rf * std::sqrt(std::max(rad_r, 0.0));
    f.omega_z = 0.5 * d.Omega_rf * std::sqrt(std::max(rad_z, 0.0));
    f.pseudopotential_warn = std::abs(p.q_z) > 0.4;
    return f;
}

IsotropyVoltage isotropy_voltage(const TrapDrive& d)
{
    check_drive(d);
    const double denom = d.mass * d.r0 * d.r0 * d.Omega_rf * d.Omega_rf;
    IsotropyVoltage iso;
    iso.U_paper = d.charge_e * d.V * d.V / denom;

    // Radicand difference (a_r + q_r^2/2) - (a_z + q_z^2/2) as a function of
    // U; its root is where omega_r = omega_z.
    const auto residual = [&](double U) {
        TrapDrive t = d;
        t.U = U;
        const StabilityParams p = stability_params(t);
        return (p.a_r + 0.5 * p.q_r * p.q_r) - (p.a_z + 0.5 * p.q_z * p.q_z);
    };

    double lo = -std::abs(iso.U_paper) - 1.0;
    double hi = std::abs(iso.U_paper) + 1.0;
    double f_lo = residual(lo);
    double f_hi = residual(hi);
    if (f_lo == 0.0) { lo = hi; f_lo = f_hi; }
    if (f_lo * f_hi > 0)
        throw ConvergenceError(
            "isotropy_voltage: no isotropy crossing inside the bisection bracket");
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = residual(mid);
        if (f_mid == 0.0) { lo = hi = mid; break; }
        if (f_lo * f_mid < 0) { hi = mid; f_hi = f_mid; }
        else { lo = mid; f_lo = f_mid; }
    }
    iso.U_numeric = 0.5 * (lo + hi);
    if (std::abs(iso.U_numeric) < 1e-15 * (std::abs(iso.U_paper) + 1.0))
        iso.U_numeric = 0.0;
    iso.relative_gap =
        iso.U_paper == 0.0 ? 0.0 : (iso.U_paper - iso.U_numeric) / iso.U_paper;
    return iso;
}

CouplingGeometry coupling_geometry(double nu_a, double nu_b, double alpha,
                                   double k, double rabi_Omega, double mass,
                                   LambdaConvention conv)
{
    if (nu_a <= 0 || nu_b <= 0 || k <= 0 || rabi_Omega <= 0 || mass <= 0)
        throw std::invalid_argument(
            "coupling_geometry: nu_a, nu_b, k, rabi_Omega, mass must be positive");
    if (alpha <= 0 || alpha >= std::numbers::pi / 2)
        throw std::invalid_argument(
            "coupling_geometry: alpha must lie strictly inside (0, pi/2); at the "
            "endpoints theta degenerates to single-mode physics");

    CouplingGeometry g{};
    g.nu_a = nu_a;
    g.nu_b = nu_b;
    g.alpha = alpha;
    g.k = k;
    g.rabi_Omega = rabi_Omega;
    g.mass = mass;

    g.dx = std::sqrt(hbar_si / (2.0 * mass * nu_a));
    g.dz = std::sqrt(hbar_si / (2.0 * mass * nu_b));
    g.eta_x = k * g.dx * std::cos(alpha);
    g.eta_z = k * g.dz * std::sin(alpha);
    g.theta = std::atan2(g.eta_z, g.eta_x);

    const double eta2 = g.eta_x * g.eta_x + g.eta_z * g.eta_z;
    if (conv == LambdaConvention::standard) {
        g.lambda = 0.5 * rabi_Omega * std::exp(-0.5 * eta2) * eta2;
    } else {
        const double bracket = g.dx * g.dx * std::cos(alpha) * std::cos(alpha) +
                               g.dz * g.dz * std::sin(alpha) * std::sin(alpha);
        g.lambda = 0.5 * rabi_Omega * std::exp(k * k * bracket) * bracket;
    }

    g.delta_res = nu_a + nu_b;
    g.dnu = nu_a - nu_b;
    g.nu_bar = 0.5 * (nu_a + nu_b);
    return g;
}

CouplingGeometry effective_geometry(double theta, double lambda,
                                    double nu_a, double nu_b)
{
    if (nu_a <= 0 || nu_b <= 0 || lambda <= 0)
        throw std::invalid_argument(
            "effective_geometry: nu_a, nu_b, lambda must be positive");
    if (theta < 0 || theta > std::numbers::pi / 2)
        throw std::invalid_argument("effective_geometry: theta must lie in [0, pi/2]");

    CouplingGeometry g{};
    g.nu_a = nu_a;
    g.nu_b = nu_b;
    g.mass = 1.0;
    g.theta = theta;
    g.lambda = lambda;
    g.delta_res = nu_a + nu_b;
    g.dnu = nu_a - nu_b;
    g.nu_bar = 0.5 * (nu_a + nu_b);

    // Physical realization with total Lamb-Dicke parameter 0.1.
    const double eta = 0.1;
    g.dx = std::sqrt(hbar_si / (2.0 * g.mass * nu_a));
    g.dz = std::sqrt(hbar_si / (2.0 * g.mass * nu_b));
    g.eta_x = eta * std::cos(theta);
    g.eta_z = eta * std::sin(theta);
    g.alpha = std::atan2(g.eta_z * g.dx, g.eta_x * g.dz);
    g.k = (g.eta_x > g.eta_z) ? g.eta_x / (g.dx * std::cos(g.alpha))
                              : g.eta_z / (g.dz * std::sin(g.alpha));
    g.rabi_Omega = 2.0 * lambda * std::exp(0.5 * eta * eta) / (eta * eta);
    return g;
}

ValidityReport validity_report(const CouplingGeometry& g,
                               const ValidityThresholds& th)
{
    if (g.lambda <= 0)
        throw std::invalid_argument("validity_report: lambda must be positive");
    const double nu_min = std::min(g.nu_a, g.nu_b);

    ValidityReport r{};
    r.lamb_dicke_ok = g.eta_x < th.eta_max && g.eta_z < th.eta_max;
    r.weak_drive_ok = g.rabi_Omega < nu_min / th.separation;
    r.small_anisotropy_ok = std::abs(g.dnu) < nu_min / th.separation;
    r.adiabatic_ratio = (g.dnu / g.lambda) * (g.dnu / g.lambda);
    r.adiabatic_ok = r.adiabatic_ratio < th.adiabatic_max;
    r.dnu_max = g.lambda * std::sqrt(th.adiabatic_max);
    r.isotropic = g.dnu == 0.0;
    r.cycle_period = r.isotropic
                         ? std::numeric_limits<double>::infinity()
                         : 4.0 * std::numbers::pi / std::abs(g.dnu);
    r.coherence_time = 10.0 / g.lambda;
    r.cycle_vs_coherence = r.cycle_period / r.coherence_time;
    r.decoherence_marginal = r.cycle_vs_coherence >= 1.0;
    return r;
}

}  // namespace anisotrap
