// trap.hpp — Paul-trap parameter layer: stability parameters, secular
// frequencies, isotropy tuning, laser coupling geometry and validity
// predicates.
//
// Unit regime: hbar = 1 internally, all frequencies angular (rad/s). SI
// inputs (kg, m, V, C) are converted here and nowhere else.

#pragma once

#include <limits>

namespace anisotrap {

inline constexpr double hbar_si = 1.054571817e-34;  // J s

struct TrapDrive {
    double U;         // static voltage, V (any sign)
    double V;         // rf amplitude, V
    double Omega_rf;  // rf drive angular frequency, rad/s
    double r0;        // trap radius, m
    double mass;      // kg
    double charge_e;  // C
};

struct StabilityParams {
    double a_z, a_r, q_z, q_r;
};

struct SecularFrequencies {
    double omega_r, omega_z;     // rad/s
    bool pseudopotential_warn;   // |q_z| > 0.4, lowest-order treatment degrading
};

struct IsotropyVoltage {
    double U_paper;      // e V^2 / (m r0^2 Omega^2)
    double U_numeric;    // bisection root of omega_r(U) - omega_z(U)
    double relative_gap; // (U_paper - U_numeric) / U_paper
};

enum class LambdaConvention {
    standard,      // (Omega/2) e^{-(eta_x^2+eta_z^2)/2} (eta_x^2+eta_z^2)
    paper_literal  // positive exponent, dimensionful bracket
};

// All physical inputs of the coupled ion-laser system plus every derived
// quantity the dynamics modules consume.
struct CouplingGeometry {
    // inputs
    double nu_a;        // secular frequency, mode x (rad/s)
    double nu_b;        // secular frequency, mode z (rad/s)
    double alpha;       // laser angle to the x axis (rad)
    double k;           // laser wavenumber (1/m)
    double rabi_Omega;  // Rabi frequency d E0 / hbar (rad/s)
    double mass;        // kg
    // derived
    double dx, dz;          // ground-state widths (m)
    double eta_x, eta_z;    // Lamb-Dicke parameters
    double theta;           // mode-mixing angle (rad)
    double lambda;          // effective two-phonon coupling (rad/s)
    double delta_res;       // resonance detuning nu_a + nu_b (rad/s)
    double dnu;             // anisotropy degree nu_a - nu_b (rad/s)
    double nu_bar;          // (nu_a + nu_b) / 2 (rad/s)
};

struct ValidityThresholds {
    double eta_max = 0.3;          // Lamb-Dicke bound on each eta
    double separation = 10.0;      // "much less than" factor for Omega and dnu
    double adiabatic_max = 0.1;    // bound on |dnu/lambda|^2
    double signal_null = 0.1;      // |cos| below this is unresolvable
};

struct ValidityReport {
    bool lamb_dicke_ok;
    bool weak_drive_ok;
    bool small_anisotropy_ok;
    double adiabatic_ratio;        // |dnu/lambda|^2
    bool adiabatic_ok;
    double dnu_max;                // lambda * sqrt(adiabatic_max)
    double cycle_period;           // 4 pi / |dnu|; +inf when isotropic
    bool isotropic;                // dnu == 0, no intrinsic periodicity
    double coherence_time;         // 10 / lambda
    double cycle_vs_coherence;     // T / tau
    bool decoherence_marginal;     // T / tau >= 1
};

StabilityParams stability_params(const TrapDrive& d);

// Lowest-order pseudopotential frequencies. Throws if a radicand is
// non-positive, naming the failing axis.
SecularFrequencies secular_frequencies(const TrapDrive& d);

// The static voltage that makes the trap isotropic, both as the paper's
// literal expression and as the numeric root of omega_r(U) = omega_z(U).
// The two differ by a constant factor; both are reported with their gap.
IsotropyVoltage isotropy_voltage(const TrapDrive& d);

CouplingGeometry coupling_geometry(double nu_a, double nu_b, double alpha,
                                   double k, double rabi_Omega, double mass,
                                   LambdaConvention conv = LambdaConvention::standard);

// Synthetic geometry from effective parameters (theta, lambda, nu_a, nu_b).
// Back-fills a consistent physical realization (eta = 0.1, mass 1 kg) so
// that coupling_geometry on the filled inputs reproduces theta and lambda.
CouplingGeometry effective_geometry(double theta, double lambda,
                                    double nu_a, double nu_b);

ValidityReport validity_report(const CouplingGeometry& g,
                               const ValidityThresholds& thresholds = {});

}  // namespace anisotrap
