// experiment.hpp — the anisotropy-detection protocol end to end: prepare
// the (|N> + |N+1>)|->/sqrt(2) superposition, evolve one cycle, measure the
// position-quadrature observable in the interaction picture, and compare
// against the isotropic (dynamical-phase-only) reference.

#pragma once

#include "anisotrap/propagator.hpp"

namespace anisotrap {

struct ExperimentRecord {
    CouplingGeometry geometry;
    int N;
    int n_max;
    Method method;
    double gamma_N;                // singlet-family Berry phase of level N
    double gamma_N1;               // ... of level N + 1
    double delta_gamma_mod2pi;     // gamma_N - gamma_N1 in (-pi, pi]
    double expval_aniso;           // <O_I(T)> after the anisotropic cycle
    double expval_iso_ref;         // same observable, isotropic reference
    double closed_form_pred;       // adiabatic closed-form prediction
    double closed_form_iso_pred;   // prediction with the Berry phases removed
    double sign_flip_ratio;        // expval_aniso / expval_iso_ref
    double final_state_overlap;    // |<psi_iso(T)|psi_aniso(T)>|
    bool signal_null;              // cos factor too small to resolve
    double suggested_nu_bar;       // nearest nu_bar restoring a full signal
    bool canonical_theta;          // theta == pi/6 (the sign-flip protocol)
    ValidityReport validity;
};

struct IsotropicReference {
    double expval;
    ComplexVector final_state;
};

// (|N>_{phi=0} + |N+1>_{phi=0}) |-> / sqrt(2). Requires 2 <= N and
// N + 1 <= n_max (charge closure keeps the truncation exact).
ComplexVector prepare_superposition(int N, const CouplingGeometry& g,
                                    const FockBasis& basis);

// O = (A_0^dag + A_0) / 2, proportional to the position quadrature of the
// phi = 0 rotated mode.
ComplexMatrix observable_O(const CouplingGeometry& g, const FockBasis& basis);

// O in the interaction picture:
//   O_I(t) = (cos(theta) a^dag e^{i nu_a t} + sin(theta) b^dag e^{i nu_b t} + h.c.) / 2
ComplexMatrix observable_O_interaction(const CouplingGeometry& g,
                                       const FockBasis& basis, double t);

// The adiabatic closed-form prediction for <O_I(T)> after one cycle:
//   (1/2) cos(dgamma + nu_bar T) [cos(E_N T) cos(E_{N+1} T) sqrt(N+1)
//                                + sin(E_N T) sin(E_{N+1} T) sqrt(N-1)]
double closed_form_expectation(int N, const CouplingGeometry& g, double T);

// Same initial state evolved under the time-independent H_{phi=0} (the
// dnu -> 0 limit at fixed lambda, theta) for the same duration T, measured
// with the same O_I(T).
IsotropicReference isotropic_reference(int N, const CouplingGeometry& g,
                                       const FockBasis& basis);

ExperimentRecord run_cycle_experiment(int N, const CouplingGeometry& g,
                                      const FockBasis& basis, Method method);

}  // namespace anisotrap
