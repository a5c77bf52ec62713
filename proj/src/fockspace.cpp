#include "anisotrap/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anisotrap {

FockBasis::FockBasis(int n_max) : n_max_(n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("FockBasis: n_max must be non-negative");

    for (int n_a = 0; n_a <= n_max; ++n_a)
        for (int n_b = 0; n_a + n_b <= n_max; ++n_b)
            for (Spin s : {Spin::down, Spin::up})
                states_.push_back({n_a, n_b, s});

    std::sort(states_.begin(), states_.end(),
              [](const FockState& lhs, const FockState& rhs) {
                  if (lhs.charge() != rhs.charge()) return lhs.charge() < rhs.charge();
                  if (lhs.n_a != rhs.n_a) return lhs.n_a < rhs.n_a;
                  return lhs.spin < rhs.spin;
              });

    blocks_.assign(max_charge() + 1, {0, 0});
    lookup_.assign(2 * (n_max + 1) * (n_max + 1), -1);
    for (int i = 0; i < dim(); ++i) {
        const FockState& st = states_[i];
        BlockRange& blk = blocks_[st.charge()];
        if (blk.size == 0) blk.offset = i;
        ++blk.size;
        lookup_[lookup_slot(st.n_a, st.n_b, st.spin)] = i;
    }
}

int FockBasis::lookup_slot(int n_a, int n_b, Spin spin) const
{
    return (n_a * (n_max_ + 1) + n_b) * 2 + static_cast<int>(spin);
}

int FockBasis::index(int n_a, int n_b, Spin spin) const
{
    if (n_a < 0 || n_b < 0 || n_a + n_b > n_max_)
        return -1;
    return lookup_[lookup_slot(n_a, n_b, spin)];
}

ComplexMatrix ladder(Mode mode, const FockBasis& basis)
{
    ComplexMatrix m = ComplexMatrix::Zero(basis.dim(), basis.dim());
    for (int j = 0; j < basis.dim(); ++j) {
        const FockState& st = basis.state(j);
        const int n = (mode == Mode::a) ? st.n_a : st.n_b;
        if (n == 0) continue;
        const int i = (mode == Mode::a)
                          ? basis.index(st.n_a - 1, st.n_b, st.spin)
                          : basis.index(st.n_a, st.n_b - 1, st.spin);
        m(i, j) = std::sqrt(static_cast<double>(n));
    }
    return m;
}

ComplexMatrix spin_op(SpinKind kind, const FockBasis& basis)
{
    ComplexMatrix m = ComplexMatrix::Zero(basis.dim(), basis.dim());
    for (int j = 0; j < basis.dim(); ++j) {
        const FockState& st = basis.state(j);
        switch (kind) {
        case SpinKind::lower:
            if (st.spin == Spin::up)
                m(basis.index(st.n_a, st.n_b, Spin::down), j) = 1.0;
            break;
        case SpinKind::raise:
            if (st.spin == Spin::down)
                m(basis.index(st.n_a, st.n_b, Spin::up), j) = 1.0;
            break;
        case SpinKind::z:
            m(j, j) = (st.spin == Spin::up) ? 1.0 : -1.0;
            break;
        }
    }
    return m;
}

ComplexMatrix rotated_mode(const ModeAngle& angle, RotatedModeKind which,
                           const FockBasis& basis)
{
    const Complex eip = std::exp(Complex(0.0, angle.phi));
    const Complex eim = std::conj(eip);
    const double c = std::cos(angle.theta);
    const double s = std::sin(angle.theta);
    const ComplexMatrix a = ladder(Mode::a, basis);
    const ComplexMatrix b = ladder(Mode::b, basis);
    if (which == RotatedModeKind::A)
        return c * eip * a + s * eim * b;
    return s * eip * a - c * eim * b;
}

ComplexVector bimodal_fock_state(int N, const ModeAngle& angle,
                                 const FockBasis& basis, Spin spin)
{
    if (N < 0)
        throw std::invalid_argument("bimodal_fock_state: N must be non-negative");
    if (N > basis.n_max())
        throw std::invalid_argument(
            "bimodal_fock_state: N exceeds n_max, state would be truncated");

    const ComplexMatrix creator =
        rotated_mode(angle, RotatedModeKind::A, basis).adjoint();
    ComplexVector v = ComplexVector::Zero(basis.dim());
    v[basis.index(0, 0, spin)] = 1.0;
    double norm_factorial = 1.0;
    for (int k = 1; k <= N; ++k) {
        v = creator * v;
        norm_factorial *= k;
    }
    return v / std::sqrt(norm_factorial);
}

ComplexMatrix conserved_charge(const FockBasis& basis)
{
    ComplexMatrix m = ComplexMatrix::Zero(basis.dim(), basis.dim());
    for (int j = 0; j < basis.dim(); ++j)
        m(j, j) = static_cast<double>(basis.state(j).charge());
    return m;
}

}  // namespace anisotrap
