// berry.hpp — geometric phases over the phi: 0 -> 2pi loop, three ways:
// closed form, analytic Berry-connection integral, and a gauge-invariant
// discrete Wilson loop over numerically diagonalized eigenstates.

#pragma once

#include "anisotrap/hamiltonian.hpp"

#include <vector>

namespace anisotrap {

enum class PhaseFamily {
    ket_N,     // bimodal Fock states |N>_phi
    singlet_N  // eigenstate singlets Psi_{N,±}
};

// gamma = -2pi (2 sin^2 theta - 1) N          for ket_N
// gamma = -2pi (2 sin^2 theta - 1) (N - 1)    for singlet_N
// (same N-dependence, shifted by an N-independent constant).
double berry_closed_form(int N, double theta, PhaseFamily family);

// <n(phi) | d/dphi n(phi)>; purely imaginary and phi-independent for both
// families. phi is accepted for interface symmetry with the loop sampler.
Complex berry_connection(int N, double theta, double phi, PhaseFamily family);

struct EigenSelector {
    LevelLabel kind = LevelLabel::singlet;
    int N = 2;
    int sign = +1;   // singlet branch
    int member = 0;  // doublet member
};

struct LoopSpec {
    int samples = 256;  // phi points on [0, 2pi)
    EigenSelector selector;
    bool unwrapped = false;  // accumulate per-segment args instead of mod 2pi
};

// Discrete Pancharatnam phase gamma = -arg prod_k <n(phi_k)|n(phi_{k+1})>
// with phi_M = phi_0 + 2pi; eigenvectors matched between adjacent samples
// by maximal overlap. Result in (-pi, pi] unless loop.unwrapped.
double wilson_loop_phase(const CouplingGeometry& g, const FockBasis& basis,
                         const LoopSpec& loop);

// Phase product of an already-sampled closed frame sequence (frame M wraps
// to frame 0). Exposed so gauge-invariance can be probed by re-phasing.
double wilson_phase_from_frames(const std::vector<ComplexVector>& frames,
                                bool unwrapped = false);

// gamma(N) - gamma(N+1) reduced to (-pi, pi]; equals pi for all N at
// theta = pi/6.
double phase_difference(int N, double theta, PhaseFamily family);

// 2x2 overlap holonomy of the zero doublet {|0>_phi |->, |1>_phi |->}
// around the loop; diagonal within 1e-8 (the off-diagonal Berry connection
// vanishes), justifying the abelian treatment.
ComplexMatrix doublet_holonomy(const CouplingGeometry& g, const FockBasis& basis,
                               int samples);

}  // namespace anisotrap
