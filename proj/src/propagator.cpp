#include "anisotrap/propagator.hpp"

#include "anisotrap/berry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace anisotrap {

namespace {

struct BlockView {
    int charge;
    BlockRange range;
};

// Charge blocks carrying support of psi0. Rejects support beyond n_max,
// where the truncation is no longer exact.
std::vector<BlockView> active_blocks(const ComplexVector& psi0,
                                     const FockBasis& basis)
{
    if (psi0.size() != basis.dim())
        throw std::invalid_argument("propagator: state dimension mismatch");
    std::vector<BlockView> blocks;
    for (int charge = 0; charge <= basis.max_charge(); ++charge) {
        const BlockRange blk = basis.block(charge);
        if (blk.size == 0) continue;
        const double weight = psi0.segment(blk.offset, blk.size).squaredNorm();
        if (weight < 1e-28) continue;
        if (charge > basis.n_max())
            throw PhysicsError(
                "propagator: initial state has support on charge blocks beyond "
                "n_max; truncation would not be exact");
        blocks.push_back({charge, blk});
    }
    return blocks;
}

double charge_expectation(const ComplexVector& psi, const FockBasis& basis)
{
    double acc = 0.0;
    for (int i = 0; i < basis.dim(); ++i)
        acc += std::norm(psi[i]) * basis.state(i).charge();
    return acc;
}

EvolutionResult finish(ComplexVector psi, const ComplexVector& psi0,
                       const FockBasis& basis, double t, Method method,
                       int steps)
{
    EvolutionResult r;
    r.norm_drift = std::abs(psi.norm() - 1.0);
    r.charge_drift =
        std::abs(charge_expectation(psi, basis) - charge_expectation(psi0, basis));
    r.final_state = std::move(psi);
    r.t_final = t;
    r.method = method;
    r.step_count = steps;
    return r;
}

}  // namespace

double cycle_period(const CouplingGeometry& g)
{
    if (g.dnu == 0.0)
        throw PhysicsError("cycle_period: isotropic trap has no intrinsic cycle");
    return 4.0 * std::numbers::pi / std::abs(g.dnu);
}

double adiabaticity_ratio(const CouplingGeometry& g)
{
    if (g.lambda == 0.0)
        throw std::invalid_argument("adiabaticity_ratio: lambda must be nonzero");
    const double r = g.dnu / g.lambda;
    return r * r;
}

EvolutionResult evolve_exact_closed(const ComplexVector& psi0,
                                    const CouplingGeometry& g,
                                    const FockBasis& basis, double t)
{
    const auto blocks = active_blocks(psi0, basis);
    const HphiBuilder builder(g, basis);
    const double phi_t = 0.5 * g.dnu * t;

    ComplexVector psi = ComplexVector::Zero(basis.dim());
    for (const BlockView& bv : blocks) {
        // H_eff restricted to the block
        ComplexMatrix Heff = builder.block(bv.charge, 0.0);
        for (int i = 0; i < bv.range.size; ++i) {
            const FockState& st = basis.state(bv.range.offset + i);
            Heff(i, i) += 0.5 * g.dnu * static_cast<double>(st.n_b - st.n_a);
        }
        ComplexVector seg = unitary_exp(Heff, t) *
                            psi0.segment(bv.range.offset, bv.range.size);
        // gauge rotation U_G(phi(t)), diagonal
        for (int i = 0; i < bv.range.size; ++i) {
            const FockState& st = basis.state(bv.range.offset + i);
            seg[i] *= std::exp(Complex(0.0, phi_t * (st.n_b - st.n_a)));
        }
        psi.segment(bv.range.offset, bv.range.size) = seg;
    }
    return finish(std::move(psi), psi0, basis, t, Method::closed, 0);
}

EvolutionResult evolve_stepped(const ComplexVector& psi0,
                               const CouplingGeometry& g,
                               const FockBasis& basis, double t, int steps)
{
    if (steps < 1)
        throw std::invalid_argument("evolve_stepped: steps must be >= 1");
    const auto blocks = active_blocks(psi0, basis);
    const HphiBuilder builder(g, basis);
    const double dt = t / steps;

    ComplexVector psi = ComplexVector::Zero(basis.dim());
    for (const BlockView& bv : blocks) {
        ComplexVector seg = psi0.segment(bv.range.offset, bv.range.size);
        for (int k = 0; k < steps; ++k) {
            const double t_mid = (k + 0.5) * dt;
            seg = unitary_exp(builder.block_at_time(bv.charge, t_mid), dt) * seg;
        }
        psi.segment(bv.range.offset, bv.range.size) = seg;
    }
    return finish(std::move(psi), psi0, basis, t, Method::stepped, steps);
}

EvolutionResult evolve_stepped_converged(const ComplexVector& psi0,
                                         const CouplingGeometry& g,
                                         const FockBasis& basis, double t)
{
    constexpr int step_cap = 1 << 20;
    int steps = std::max(
        1, static_cast<int>(std::ceil(64.0 * t * (g.lambda + std::abs(g.dnu)))));
    EvolutionResult coarse = evolve_stepped(psi0, g, basis, t, steps);
    while (true) {
        if (2 * steps > step_cap)
            throw ConvergenceError(
                "evolve_stepped_converged: step cap 2^20 reached without "
                "successive-refinement fidelity 1 - 1e-10");
        steps *= 2;
        EvolutionResult fine = evolve_stepped(psi0, g, basis, t, steps);
        const double fid =
            std::norm(overlap(coarse.final_state, fine.final_state));
        coarse = std::move(fine);
        if (fid >= 1.0 - 1e-10) break;
    }
    return coarse;
}

EvolutionResult evolve_adiabatic(const ComplexVector& psi0,
                                 const CouplingGeometry& g,
                                 const FockBasis& basis)
{
    const double T = cycle_period(g);
    const auto blocks = active_blocks(psi0, basis);  // validates the support
    (void)blocks;

    std::vector<int> N_list;
    for (int N = 0; N <= basis.n_max(); ++N)
        N_list.push_back(N);
    const std::vector<SpectrumEntry> family =
        analytic_spectrum(g, basis, 0.0, N_list);

    ComplexVector psi = ComplexVector::Zero(basis.dim());
    double captured = 0.0;
    for (const SpectrumEntry& e : family) {
        const Complex c = overlap(e.vector, psi0);
        if (c == Complex(0.0)) continue;
        captured += std::norm(c);
        const double gamma =
            (e.label == LevelLabel::singlet)
                ? berry_closed_form(e.N, g.theta, PhaseFamily::singlet_N)
                : berry_closed_form(e.member, g.theta, PhaseFamily::ket_N);
        psi += c * std::exp(Complex(0.0, -e.energy * T + gamma)) * e.vector;
    }
    const double residual = psi0.squaredNorm() - captured;
    if (residual > 1e-10) {
        std::ostringstream msg;
        msg << "evolve_adiabatic: initial state has weight " << residual
            << " outside the labeled eigenstate families";
        throw PhysicsError(msg.str());
    }
    return finish(std::move(psi), psi0, basis, T, Method::adiabatic, 0);
}

}  // namespace anisotrap
