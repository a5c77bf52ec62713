// hamiltonian.hpp — the two-phonon spin-boson Hamiltonian
//   H_phi = -lambda [ (A_phi^dag)^2 sigma- + (A_phi)^2 sigma+ ]
// its time-dependent alias H(t) with phi = dnu t / 2, the time-independent
// rotating-frame generator, and analytic/numeric instantaneous spectra.

#pragma once

#include "anisotrap/fockspace.hpp"
#include "anisotrap/trap.hpp"

#include <array>
#include <vector>

namespace anisotrap {

enum class LevelLabel { singlet, zero_doublet, unlabeled };

struct SpectrumEntry {
    double energy;        // rad/s, units of hbar = 1
    ComplexVector vector;
    LevelLabel label;
    int N;       // singlet index, valid when label == singlet
    int sign;    // +1 / -1 for singlets
    int member;  // 0 / 1 for the zero doublet
};

ComplexMatrix build_H_phi(const CouplingGeometry& g, const FockBasis& basis,
                          double phi);

// Alias for build_H_phi at phi = dnu t / 2.
ComplexMatrix build_H_t(const CouplingGeometry& g, const FockBasis& basis,
                        double t);

// Time-independent generator of the exact rotating-frame solution:
//   H_eff = H_{phi=0} + (dnu/2)(b^dag b - a^dag a)
ComplexMatrix build_H_eff(const CouplingGeometry& g, const FockBasis& basis);

// Diagonal gauge rotation U_G(phi) = exp(i phi (b^dag b - a^dag a));
// H_phi = U_G(phi) H_0 U_G(phi)^dag.
ComplexMatrix gauge_rotation(const FockBasis& basis, double phi);

// Precomputes the phi-independent operator content of H_phi per charge
// block so that loop sampling and time stepping pay only a few scaled
// block-matrix sums per evaluation:
//   H_phi = -lambda [ c^2 e^{-2i phi} a†² + 2cs a†b† + s^2 e^{2i phi} b†² ] σ- + h.c.
class HphiBuilder {
public:
    HphiBuilder(const CouplingGeometry& g, const FockBasis& basis);

    ComplexMatrix block(int charge, double phi) const;
    ComplexMatrix block_at_time(int charge, double t) const;
    ComplexMatrix full(double phi) const;

    const FockBasis& basis() const { return *basis_; }
    const CouplingGeometry& geometry() const { return geom_; }

private:
    const FockBasis* basis_;
    CouplingGeometry geom_;
    double c2_, s2_, cs_;
    // per charge block: a†² σ-, a†b† σ-, b†² σ- restricted to the block
    std::vector<std::array<ComplexMatrix, 3>> parts_;
};

// Eigenpairs the model labels analytically: for each N >= 2 the singlets
//   Psi_{N,±}(phi) = (|N>_phi |-> ∓ |N-2>_phi |+>) / sqrt(2),
//   E = ± lambda sqrt(N(N-1)),
// and for N in {0, 1} the zero-energy doublet members |N>_phi |->.
std::vector<SpectrumEntry> analytic_spectrum(const CouplingGeometry& g,
                                             const FockBasis& basis, double phi,
                                             const std::vector<int>& N_list);

// Full diagonalization per charge block; entries that overlap an analytic
// eigenvector with |<.|.>|^2 > 0.99 inherit its label, the rest stay
// unlabeled (B-mode excited kernel states).
std::vector<SpectrumEntry> numeric_spectrum(const CouplingGeometry& g,
                                            const FockBasis& basis, double phi);

}  // namespace anisotrap
