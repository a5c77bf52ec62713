// propagator.hpp — one-cycle (and general-time) evolution three ways:
// exact rotating-frame closed form, midpoint-exponential stepping, and
// the adiabatic approximation. All propagation is blockwise over charge
// blocks (dims <= 2N) and exactly unitary per step.

#pragma once

#include "anisotrap/hamiltonian.hpp"

namespace anisotrap {

enum class Method { closed, stepped, adiabatic };

struct EvolutionResult {
    ComplexVector final_state;
    double t_final;
    Method method;
    double norm_drift;    // | ||psi|| - 1 |
    double charge_drift;  // | <C>(t) - <C>(0) |
    int step_count;       // 0 for non-stepped methods
};

// T = 4 pi / |dnu|. Throws for an isotropic trap (dnu = 0).
double cycle_period(const CouplingGeometry& g);

// |dnu / lambda|^2 (adiabaticity condition: must be << 1).
double adiabaticity_ratio(const CouplingGeometry& g);

// psi(t) = U_G(phi(t)) exp(-i H_eff t) psi0 — exact up to eigensolver
// precision. psi0 must be normalized and supported on charge blocks
// <= n_max (truncation is only exact there).
EvolutionResult evolve_exact_closed(const ComplexVector& psi0,
                                    const CouplingGeometry& g,
                                    const FockBasis& basis, double t);

// Midpoint-exponential integrator: per step apply exp(-i H(t_k + dt/2) dt).
// Each step is exactly unitary; accuracy is second order in dt.
EvolutionResult evolve_stepped(const ComplexVector& psi0,
                               const CouplingGeometry& g,
                               const FockBasis& basis, double t, int steps);

// Adaptive step control: start at ceil(64 t (lambda + |dnu|)), double until
// successive refinements agree to fidelity 1 - 1e-10, cap at 2^20.
EvolutionResult evolve_stepped_converged(const ComplexVector& psi0,
                                         const CouplingGeometry& g,
                                         const FockBasis& basis, double t);

// One full cycle in the adiabatic approximation: decompose psi0 in the
// phi = 0 instantaneous eigenbasis (singlets + zero doublet), multiply each
// component by exp(-i E T) exp(i gamma), reassemble. Components outside the
// labeled families are rejected with the residual norm.
EvolutionResult evolve_adiabatic(const ComplexVector& psi0,
                                 const CouplingGeometry& g,
                                 const FockBasis& basis);

}  // namespace anisotrap
