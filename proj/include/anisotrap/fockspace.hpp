// fockspace.hpp — truncated two-mode-boson x two-level-spin Hilbert space.
//
// Truncation is by total boson number n_a + n_b <= n_max. The charge
// C = n_a + n_b + 2[spin = +] commutes with the model Hamiltonian at every
// phi, so this truncation is exact for any state supported on charge
// blocks C <= n_max. Basis ordering groups charge blocks contiguously
// (primary key C, secondary n_a, tertiary spin) so propagators can act
// blockwise.

#pragma once

#include "anisotrap/numerics.hpp"

#include <vector>

namespace anisotrap {

enum class Spin { down = 0, up = 1 };

struct FockState {
    int n_a;
    int n_b;
    Spin spin;

    int charge() const { return n_a + n_b + (spin == Spin::up ? 2 : 0); }
};

struct BlockRange {
    int offset;
    int size;
};

class FockBasis {
public:
    explicit FockBasis(int n_max);

    int n_max() const { return n_max_; }
    int dim() const { return static_cast<int>(states_.size()); }
    const FockState& state(int index) const { return states_[index]; }

    // -1 if the state is outside the truncation.
    int index(int n_a, int n_b, Spin spin) const;

    // Charges run 0 .. n_max + 2; blocks above n_max are truncated and
    // carry no exactness guarantee.
    int max_charge() const { return n_max_ + 2; }
    BlockRange block(int charge) const { return blocks_[charge]; }

private:
    int n_max_;
    std::vector<FockState> states_;
    std::vector<BlockRange> blocks_;
    std::vector<int> lookup_;  // dense (n_a, n_b, spin) -> index table

    int lookup_slot(int n_a, int n_b, Spin spin) const;
};

enum class Mode { a, b };
enum class SpinKind { lower, raise, z };  // sigma-, sigma+, sigma_z
enum class RotatedModeKind { A, B };

struct ModeAngle {
    double theta;  // [0, pi/2]
    double phi;    // loop parameter
};

// Annihilation operator of the named bare mode; transitions that would
// leave the truncation are dropped.
ComplexMatrix ladder(Mode mode, const FockBasis& basis);

// Two-level operator tensored with the boson identity.
ComplexMatrix spin_op(SpinKind kind, const FockBasis& basis);

// Rotated-mode annihilators:
//   A_phi = cos(theta) e^{+i phi} a + sin(theta) e^{-i phi} b
//   B_phi = sin(theta) e^{+i phi} a - cos(theta) e^{-i phi} b
// B_phi is the orthogonal partner of A_phi: [A_phi, B_phi^dag] = 0 on the
// interior of the truncation.
ComplexMatrix rotated_mode(const ModeAngle& angle, RotatedModeKind which,
                           const FockBasis& basis);

// |N>_phi = (A_phi^dag)^N / sqrt(N!) applied to the two-mode vacuum,
// with the requested spin component (default |->).
ComplexVector bimodal_fock_state(int N, const ModeAngle& angle,
                                 const FockBasis& basis,
                                 Spin spin = Spin::down);

// Diagonal matrix of the conserved charge C = a^dag a + b^dag b + 2 s+ s-.
ComplexMatrix conserved_charge(const FockBasis& basis);

}  // namespace anisotrap
