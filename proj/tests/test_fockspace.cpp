#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anisotrap/fockspace.hpp"
#include "anisotrap/hamiltonian.hpp"
#include "anisotrap/trap.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace anisotrap;

namespace {

// Independent binomial-expansion oracle for |N>_phi.
ComplexVector binomial_bimodal(int N, double theta, double phi,
                               const FockBasis& basis)
{
    ComplexVector v = ComplexVector::Zero(basis.dim());
    for (int k = 0; k <= N; ++k) {
        double binom = 1.0;
        for (int j = 1; j <= k; ++j)
            binom *= static_cast<double>(N - k + j) / j;
        const Complex amp =
            std::sqrt(binom) *
            std::pow(std::cos(theta) * std::exp(Complex(0.0, -phi)), k) *
            std::pow(std::sin(theta) * std::exp(Complex(0.0, phi)), N - k);
        v[basis.index(k, N - k, Spin::down)] = amp;
    }
    return v;
}

}  // namespace

TEST_CASE("FockBasis: dimension, ordering, index round-trip")
{
    for (int n_max : {0, 1, 3, 6}) {
        const FockBasis basis(n_max);
        CHECK(basis.dim() == 2 * (n_max + 1) * (n_max + 2) / 2);

        int prev_charge = -1;
        for (int i = 0; i < basis.dim(); ++i) {
            const FockState& st = basis.state(i);
            CHECK(st.charge() >= prev_charge);  // blocks contiguous, ascending
            prev_charge = st.charge();
            CHECK(basis.index(st.n_a, st.n_b, st.spin) == i);
        }

        int block_total = 0;
        for (int c = 0; c <= basis.max_charge(); ++c)
            block_total += basis.block(c).size;
        CHECK(block_total == basis.dim());
    }
    CHECK(FockBasis(5).index(3, 3, Spin::down) == -1);
}

TEST_CASE("ladder: matrix elements and number operator")
{
    const FockBasis basis(4);
    const ComplexMatrix a = ladder(Mode::a, basis);

    CHECK(std::abs(a(basis.index(0, 0, Spin::down), basis.index(1, 0, Spin::down)) -
                   1.0) < 1e-15);
    CHECK(std::abs(a(basis.index(2, 0, Spin::down), basis.index(3, 0, Spin::down)) -
                   std::sqrt(3.0)) < 1e-15);

    const ComplexMatrix num = a.adjoint() * a;
    for (int i = 0; i < basis.dim(); ++i)
        CHECK(std::abs(num(i, i) - static_cast<double>(basis.state(i).n_a)) < 1e-14);
}

TEST_CASE("spin_op: two-level algebra tensored with boson identity")
{
    const FockBasis basis(2);
    const ComplexMatrix sm = spin_op(SpinKind::lower, basis);
    const ComplexMatrix sz = spin_op(SpinKind::z, basis);

    ComplexVector up = ComplexVector::Zero(basis.dim());
    up[basis.index(0, 0, Spin::up)] = 1.0;
    const ComplexVector lowered = sm * up;
    CHECK(std::abs(lowered[basis.index(0, 0, Spin::down)] - 1.0) < 1e-15);
    CHECK(lowered.norm() == doctest::Approx(1.0));

    ComplexVector down = ComplexVector::Zero(basis.dim());
    down[basis.index(1, 0, Spin::down)] = 1.0;
    CHECK((sm * down).norm() == 0.0);

    ComplexVector oneone = ComplexVector::Zero(basis.dim());
    oneone[basis.index(1, 1, Spin::up)] = 1.0;
    CHECK(std::real(overlap(oneone, sz * oneone)) == doctest::Approx(1.0));
}

TEST_CASE("rotated_mode: axis-aligned limits")
{
    const FockBasis basis(3);
    const ComplexMatrix a = ladder(Mode::a, basis);
    const ComplexMatrix b = ladder(Mode::b, basis);

    CHECK((rotated_mode({0.0, 0.0}, RotatedModeKind::A, basis) - a)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK((rotated_mode({std::numbers::pi / 2, 0.0}, RotatedModeKind::A, basis) - b)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("rotated_mode: bosonic commutators on the truncation interior")
{
    const FockBasis basis(6);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> angle(0.1, 1.4);

    for (int trial = 0; trial < 5; ++trial) {
        const ModeAngle ma{angle(rng), angle(rng) * 4.0};
        const ComplexMatrix A = rotated_mode(ma, RotatedModeKind::A, basis);
        const ComplexMatrix B = rotated_mode(ma, RotatedModeKind::B, basis);

        const ComplexMatrix cAA = A * A.adjoint() - A.adjoint() * A;
        const ComplexMatrix cAB = A * B.adjoint() - B.adjoint() * A;
        const ComplexMatrix number_rot = A.adjoint() * A + B.adjoint() * B;
        const ComplexMatrix number_bare =
            ladder(Mode::a, basis).adjoint() * ladder(Mode::a, basis) +
            ladder(Mode::b, basis).adjoint() * ladder(Mode::b, basis);

        // interior = states with n_a + n_b <= n_max - 1
        for (int i = 0; i < basis.dim(); ++i) {
            const FockState& si = basis.state(i);
            if (si.n_a + si.n_b > basis.n_max() - 1) continue;
            for (int j = 0; j < basis.dim(); ++j) {
                const FockState& sj = basis.state(j);
                if (sj.n_a + sj.n_b > basis.n_max() - 1) continue;
                const Complex expect = (i == j) ? Complex(1.0) : Complex(0.0);
                CHECK(std::abs(cAA(i, j) - expect) <= 1e-12);
                CHECK(std::abs(cAB(i, j)) <= 1e-12);
                CHECK(std::abs(number_rot(i, j) - number_bare(i, j)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("bimodal_fock_state: vacuum, single quantum, binomial oracle")
{
    const FockBasis basis(5);

    const ComplexVector vac = bimodal_fock_state(0, {0.7, 0.3}, basis);
    CHECK(std::abs(vac[basis.index(0, 0, Spin::down)] - 1.0) < 1e-15);

    const double th = std::numbers::pi / 6;
    const ComplexVector one = bimodal_fock_state(1, {th, 0.0}, basis);
    CHECK(std::abs(one[basis.index(1, 0, Spin::down)] - std::sqrt(3.0) / 2.0) <
          1e-14);
    CHECK(std::abs(one[basis.index(0, 1, Spin::down)] - 0.5) < 1e-14);

    for (const double phi : {0.0, 0.9, 2.5}) {
        for (const int N : {2, 4, 5}) {
            const ComplexVector v = bimodal_fock_state(N, {0.62, phi}, basis);
            CHECK(std::abs(v.norm() - 1.0) < 1e-12);
            CHECK((v - binomial_bimodal(N, 0.62, phi, basis)).norm() < 1e-12);
        }
    }

    CHECK_THROWS_AS(bimodal_fock_state(6, {0.3, 0.0}, basis),
                    std::invalid_argument);
}

TEST_CASE("conserved_charge: diagonal counts and commutation with H_phi")
{
    const FockBasis basis(5);
    const ComplexMatrix C = conserved_charge(basis);
    CHECK(std::real(C(basis.index(3, 1, Spin::down), basis.index(3, 1, Spin::down))) ==
          doctest::Approx(4.0));
    CHECK(std::real(C(basis.index(1, 1, Spin::up), basis.index(1, 1, Spin::up))) ==
          doctest::Approx(4.0));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.1, 1.4);
    for (int trial = 0; trial < 4; ++trial) {
        const CouplingGeometry g = effective_geometry(u(rng), 0.5 + u(rng), 2.0, 1.9);
        const ComplexMatrix H = build_H_phi(g, basis, u(rng) * 4.0);
        CHECK((C * H - H * C).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("bimodal_fock_state is a charge eigenvector")
{
    const FockBasis basis(4);
    const ComplexMatrix C = conserved_charge(basis);
    for (int N : {0, 1, 3}) {
        const ComplexVector v = bimodal_fock_state(N, {0.8, 1.1}, basis);
        CHECK((C * v - static_cast<double>(N) * v).norm() < 1e-12);
    }
}
