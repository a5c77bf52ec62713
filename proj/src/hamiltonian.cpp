#include "anisotrap/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anisotrap {

ComplexMatrix build_H_phi(const CouplingGeometry& g, const FockBasis& basis,
                          double phi)
{
    const ModeAngle angle{g.theta, phi};
    const ComplexMatrix A = rotated_mode(angle, RotatedModeKind::A, basis);
    const ComplexMatrix A2 = A * A;
    const ComplexMatrix coupling = A2.adjoint() * spin_op(SpinKind::lower, basis) +
                                   A2 * spin_op(SpinKind::raise, basis);
    return -g.lambda * coupling;
}

ComplexMatrix build_H_t(const CouplingGeometry& g, const FockBasis& basis,
                        double t)
{
    return build_H_phi(g, basis, 0.5 * g.dnu * t);
}

ComplexMatrix build_H_eff(const CouplingGeometry& g, const FockBasis& basis)
{
    ComplexMatrix H = build_H_phi(g, basis, 0.0);
    for (int i = 0; i < basis.dim(); ++i) {
        const FockState& st = basis.state(i);
        H(i, i) += 0.5 * g.dnu * static_cast<double>(st.n_b - st.n_a);
    }
    return H;
}

ComplexMatrix gauge_rotation(const FockBasis& basis, double phi)
{
    ComplexMatrix U = ComplexMatrix::Zero(basis.dim(), basis.dim());
    for (int i = 0; i < basis.dim(); ++i) {
        const FockState& st = basis.state(i);
        U(i, i) = std::exp(Complex(0.0, phi * static_cast<double>(st.n_b - st.n_a)));
    }
    return U;
}

HphiBuilder::HphiBuilder(const CouplingGeometry& g, const FockBasis& basis)
    : basis_(&basis), geom_(g)
{
    const double c = std::cos(g.theta);
    const double s = std::sin(g.theta);
    c2_ = c * c;
    s2_ = s * s;
    cs_ = c * s;

    const ComplexMatrix ad = ladder(Mode::a, basis).adjoint();
    const ComplexMatrix bd = ladder(Mode::b, basis).adjoint();
    const ComplexMatrix sm = spin_op(SpinKind::lower, basis);
    const std::array<ComplexMatrix, 3> full_parts = {ad * ad * sm, ad * bd * sm,
                                                     bd * bd * sm};

    parts_.resize(basis.max_charge() + 1);
    for (int charge = 0; charge <= basis.max_charge(); ++charge) {
        const BlockRange blk = basis.block(charge);
        if (blk.size == 0) continue;
        for (int i = 0; i < 3; ++i)
            parts_[charge][i] =
                full_parts[i].block(blk.offset, blk.offset, blk.size, blk.size);
    }
}

ComplexMatrix HphiBuilder::block(int charge, double phi) const
{
    const BlockRange blk = basis_->block(charge);
    if (blk.size == 0) return ComplexMatrix(0, 0);
    const Complex e2m = std::exp(Complex(0.0, -2.0 * phi));
    const ComplexMatrix upper = -geom_.lambda * (c2_ * e2m * parts_[charge][0] +
                                                 2.0 * cs_ * parts_[charge][1] +
                                                 s2_ * std::conj(e2m) * parts_[charge][2]);
    return upper + upper.adjoint();
}

ComplexMatrix HphiBuilder::block_at_time(int charge, double t) const
{
    return block(charge, 0.5 * geom_.dnu * t);
}

ComplexMatrix HphiBuilder::full(double phi) const
{
    ComplexMatrix H = ComplexMatrix::Zero(basis_->dim(), basis_->dim());
    for (int charge = 0; charge <= basis_->max_charge(); ++charge) {
        const BlockRange blk = basis_->block(charge);
        if (blk.size == 0) continue;
        H.block(blk.offset, blk.offset, blk.size, blk.size) = block(charge, phi);
    }
    return H;
}

std::vector<SpectrumEntry> analytic_spectrum(const CouplingGeometry& g,
                                             const FockBasis& basis, double phi,
                                             const std::vector<int>& N_list)
{
    const ModeAngle angle{g.theta, phi};
    std::vector<SpectrumEntry> entries;
    for (int N : N_list) {
        if (N < 0 || N > basis.n_max())
            throw std::invalid_argument("analytic_spectrum: N outside [0, n_max]");
        if (N < 2) {
            SpectrumEntry e;
            e.energy = 0.0;
            e.vector = bimodal_fock_state(N, angle, basis, Spin::down);
            e.label = LevelLabel::zero_doublet;
            e.N = N;
            e.sign = 0;
            e.member = N;
            entries.push_back(std::move(e));
            continue;
        }
        const ComplexVector ket_N = bimodal_fock_state(N, angle, basis, Spin::down);
        const ComplexVector ket_Nm2 =
            bimodal_fock_state(N - 2, angle, basis, Spin::up);
        const double E = g.lambda * std::sqrt(static_cast<double>(N) * (N - 1));
        for (int sign : {-1, +1}) {
            SpectrumEntry e;
            e.energy = sign * E;
            e.vector = (ket_N - static_cast<double>(sign) * ket_Nm2) / std::sqrt(2.0);
            e.label = LevelLabel::singlet;
            e.N = N;
            e.sign = sign;
            e.member = -1;
            entries.push_back(std::move(e));
        }
    }
    return entries;
}

std::vector<SpectrumEntry> numeric_spectrum(const CouplingGeometry& g,
                                            const FockBasis& basis, double phi)
{
    const ComplexMatrix H = build_H_phi(g, basis, phi);

    // Analytic anchors for labeling: every N with a full charge block.
    std::vector<int> anchors;
    for (int N = 0; N <= basis.n_max(); ++N)
        anchors.push_back(N);
    const std::vector<SpectrumEntry> analytic =
        analytic_spectrum(g, basis, phi, anchors);

    std::vector<SpectrumEntry> entries;
    entries.reserve(basis.dim());
    for (int charge = 0; charge <= basis.max_charge(); ++charge) {
        const BlockRange blk = basis.block(charge);
        if (blk.size == 0) continue;
        const ComplexMatrix Hb = H.block(blk.offset, blk.offset, blk.size, blk.size);
        const EigenSystem es = hermitian_eig(Hb);

        ComplexMatrix vecs = es.vectors;
        std::vector<SpectrumEntry> block_entries(blk.size);
        for (int k = 0; k < blk.size; ++k) {
            block_entries[k].energy = es.values[k];
            block_entries[k].label = LevelLabel::unlabeled;
            block_entries[k].N = -1;
            block_entries[k].sign = 0;
            block_entries[k].member = -1;
        }

        // Degenerate clusters leave the eigenvector basis free; project the
        // analytic vectors onto each cluster and rotate the cluster basis to
        // align with them before labeling.
        const double scale = std::max(g.lambda, 1e-300) * 1e-10;
        int k = 0;
        while (k < blk.size) {
            int end = k + 1;
            while (end < blk.size && es.values[end] - es.values[end - 1] <= scale)
                ++end;
            const int size = end - k;

            std::vector<int> assigned;
            for (const SpectrumEntry& a : analytic) {
                if (a.vector.segment(blk.offset, blk.size).norm() < 0.5)
                    continue;  // lives in another charge block
                if (std::abs(a.energy - es.values[k]) > scale + 1e-9 * std::abs(a.energy))
                    continue;
                const ComplexVector a_blk = a.vector.segment(blk.offset, blk.size);
                // Projection of the analytic vector onto the cluster subspace.
                ComplexVector proj = ComplexVector::Zero(blk.size);
                double weight = 0.0;
                for (int j = k; j < end; ++j) {
                    const Complex c = vecs.col(j).dot(a_blk);
                    proj += c * vecs.col(j);
                    weight += std::norm(c);
                }
                if (weight < 0.99) continue;
                // Claim the first unassigned slot of the cluster for the
                // aligned vector, then re-orthonormalize the rest against it.
                int slot = -1;
                for (int j = k; j < end; ++j) {
                    if (std::find(assigned.begin(), assigned.end(), j) == assigned.end()) {
                        slot = j;
                        break;
                    }
                }
                if (slot < 0) continue;
                vecs.col(slot) = proj.normalized();
                for (int j = k; j < end; ++j) {
                    if (j == slot ||
                        std::find(assigned.begin(), assigned.end(), j) != assigned.end())
                        continue;
                    ComplexVector v = vecs.col(j);
                    v -= vecs.col(slot).dot(v) * vecs.col(slot);
                    for (int other : assigned)
                        v -= vecs.col(other).dot(v) * vecs.col(other);
                    const double nrm = v.norm();
                    if (nrm > 1e-8) vecs.col(j) = v / nrm;
                }
                assigned.push_back(slot);
                block_entries[slot].label = a.label;
                block_entries[slot].N = a.N;
                block_entries[slot].sign = a.sign;
                block_entries[slot].member = a.member;
            }
            k = end;
        }

        for (int j = 0; j < blk.size; ++j) {
            block_entries[j].vector = ComplexVector::Zero(basis.dim());
            block_entries[j].vector.segment(blk.offset, blk.size) = vecs.col(j);
            entries.push_back(std::move(block_entries[j]));
        }
    }
    return entries;
}

}  // namespace anisotrap
