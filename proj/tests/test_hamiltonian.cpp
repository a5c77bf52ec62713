#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anisotrap/hamiltonian.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

using namespace anisotrap;

namespace {

const FockBasis basis(6);
const CouplingGeometry geom = effective_geometry(0.62, 1.3, 10.0, 9.7);

}  // namespace

TEST_CASE("build_H_phi: vacuum expectation, singlet matrix element, Hermiticity")
{
    const ComplexMatrix H = build_H_phi(geom, basis, 0.8);
    CHECK(max_asymmetry(H) <= 1e-12);

    ComplexVector vac = ComplexVector::Zero(basis.dim());
    vac[basis.index(0, 0, Spin::down)] = 1.0;
    CHECK(std::abs(overlap(vac, H * vac)) == 0.0);

    for (const int N : {2, 4}) {
        const ModeAngle angle{geom.theta, 0.8};
        const ComplexVector bra = bimodal_fock_state(N - 2, angle, basis, Spin::up);
        const ComplexVector ket = bimodal_fock_state(N, angle, basis, Spin::down);
        const Complex elem = overlap(bra, H * ket);
        CHECK(std::abs(elem - Complex(-geom.lambda *
                                      std::sqrt(static_cast<double>(N) * (N - 1)))) <
              1e-11);
    }
}

TEST_CASE("build_H_phi: gauge covariance H(phi) = U_G H(0) U_G^dag")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const ComplexMatrix H0 = build_H_phi(geom, basis, 0.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double phi = u(rng);
        const ComplexMatrix U = gauge_rotation(basis, phi);
        const ComplexMatrix conj = U * H0 * U.adjoint();
        CHECK((build_H_phi(geom, basis, phi) - conj).cwiseAbs().maxCoeff() <= 1e-11);
    }
}

TEST_CASE("build_H_phi: exactly block diagonal in the conserved charge")
{
    const ComplexMatrix H = build_H_phi(geom, basis, 1.3);
    for (int i = 0; i < basis.dim(); ++i)
        for (int j = 0; j < basis.dim(); ++j)
            if (basis.state(i).charge() != basis.state(j).charge())
                CHECK(std::abs(H(i, j)) == 0.0);
}

TEST_CASE("build_H_t: alias and periodicity")
{
    const ComplexMatrix H0 = build_H_phi(geom, basis, 0.0);
    CHECK((build_H_t(geom, basis, 0.0) - H0).cwiseAbs().maxCoeff() == 0.0);

    const double T = 4.0 * std::numbers::pi / std::abs(geom.dnu);
    CHECK((build_H_t(geom, basis, T) - H0).cwiseAbs().maxCoeff() < 1e-11);
    // the quadratic form gives H period T/2 in t (phi period pi)
    CHECK((build_H_t(geom, basis, T / 2) - H0).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("build_H_eff: isotropic limit and spectrum at dnu = 0")
{
    CouplingGeometry iso = effective_geometry(0.62, 1.3, 10.0, 10.0);
    const ComplexMatrix Heff = build_H_eff(iso, basis);
    CHECK((Heff - build_H_phi(iso, basis, 0.0)).cwiseAbs().maxCoeff() == 0.0);

    // eigenvalues inside charge block N match ± lambda sqrt(N(N-1))
    const EigenSystem es = hermitian_eig(
        ComplexMatrix(Heff.block(basis.block(4).offset, basis.block(4).offset,
                                 basis.block(4).size, basis.block(4).size)));
    const double E4 = iso.lambda * std::sqrt(12.0);
    CHECK(es.values.minCoeff() == doctest::Approx(-E4));
    CHECK(es.values.maxCoeff() == doctest::Approx(E4));
}

TEST_CASE("HphiBuilder matches build_H_phi blockwise and fully")
{
    const HphiBuilder builder(geom, basis);
    for (const double phi : {0.0, 0.4, 2.2}) {
        const ComplexMatrix H = build_H_phi(geom, basis, phi);
        CHECK((builder.full(phi) - H).cwiseAbs().maxCoeff() < 1e-13);
        for (int c = 0; c <= basis.max_charge(); ++c) {
            const BlockRange blk = basis.block(c);
            if (blk.size == 0) continue;
            CHECK((builder.block(c, phi) -
                   ComplexMatrix(H.block(blk.offset, blk.offset, blk.size, blk.size)))
                      .cwiseAbs()
                      .maxCoeff() < 1e-13);
        }
    }
    CHECK((builder.block_at_time(4, 1.7) -
           builder.block(4, 0.5 * geom.dnu * 1.7))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("analytic_spectrum: energies and eigen-residuals")
{
    for (const double phi : {0.0, 1.1}) {
        const ComplexMatrix H = build_H_phi(geom, basis, phi);
        const auto entries = analytic_spectrum(geom, basis, phi, {0, 1, 2, 3, 5});
        for (const SpectrumEntry& e : entries) {
            CHECK((H * e.vector - e.energy * e.vector).norm() <= 1e-10);
            if (e.label == LevelLabel::singlet) {
                const double expected =
                    e.sign * geom.lambda *
                    std::sqrt(static_cast<double>(e.N) * (e.N - 1));
                CHECK(e.energy == doctest::Approx(expected).epsilon(1e-10));
            } else {
                CHECK(e.energy == 0.0);
            }
        }
    }
    // N = 2 and N = 3 singlet magnitudes
    const auto two = analytic_spectrum(geom, basis, 0.0, {2, 3});
    CHECK(std::abs(two[1].energy) == doctest::Approx(geom.lambda * std::sqrt(2.0)));
    CHECK(std::abs(two[3].energy) == doctest::Approx(geom.lambda * std::sqrt(6.0)));

    CHECK_THROWS_AS(analytic_spectrum(geom, basis, 0.0, {7}), std::invalid_argument);
}

TEST_CASE("numeric_spectrum: block eigenvalue multisets and label round-trip")
{
    const auto entries = numeric_spectrum(geom, basis, 0.7);

    // multiset per charge block N >= 2: {-E, 0 x (dim-2), +E}
    std::map<int, std::vector<double>> by_charge;
    for (const SpectrumEntry& e : entries) {
        int charge = -1;
        for (int i = 0; i < basis.dim(); ++i)
            if (std::abs(e.vector[i]) > 1e-8) {
                charge = basis.state(i).charge();
                break;
            }
        by_charge[charge].push_back(e.energy);
    }
    // Within charge block C the states with m quanta in the B mode pair up
    // exactly like the all-A family with n = C - m, so the block multiset is
    // { ± lambda sqrt(n(n-1)) : n = 2..C } plus two zeros (m = C-1, C).
    for (int N = 2; N <= basis.n_max(); ++N) {
        auto& vals = by_charge[N];
        REQUIRE(static_cast<int>(vals.size()) == basis.block(N).size);
        std::sort(vals.begin(), vals.end());
        std::vector<double> expected = {0.0, 0.0};
        for (int n = 2; n <= N; ++n) {
            const double E = geom.lambda * std::sqrt(static_cast<double>(n) * (n - 1));
            expected.push_back(E);
            expected.push_back(-E);
        }
        std::sort(expected.begin(), expected.end());
        for (std::size_t k = 0; k < vals.size(); ++k)
            CHECK(std::abs(vals[k] - expected[k]) <= 1e-10 * geom.lambda * N);
    }

    // every analytic entry is recovered with overlap^2 > 0.999
    std::vector<int> all_N;
    for (int N = 0; N <= basis.n_max(); ++N)
        all_N.push_back(N);
    for (const SpectrumEntry& a : analytic_spectrum(geom, basis, 0.7, all_N)) {
        double best = 0.0;
        for (const SpectrumEntry& e : entries)
            best = std::max(best, std::norm(overlap(a.vector, e.vector)));
        CHECK(best > 0.999);
    }
}

TEST_CASE("numeric_spectrum: eigenvalue multiset is phi-independent")
{
    auto energies = [&](double phi) {
        std::vector<double> vals;
        for (const SpectrumEntry& e : numeric_spectrum(geom, basis, phi))
            vals.push_back(e.energy);
        std::sort(vals.begin(), vals.end());
        return vals;
    };
    const auto base = energies(0.0);
    for (const double phi : {0.9, 3.7}) {
        const auto other = energies(phi);
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(std::abs(base[i] - other[i]) <= 1e-10);
    }
}
