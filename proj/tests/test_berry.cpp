#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anisotrap/berry.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace anisotrap;

namespace {

constexpr double pi = std::numbers::pi;

CouplingGeometry geom_at(double theta)
{
    return effective_geometry(theta, 1.0, 10.0, 9.9);
}

}  // namespace

TEST_CASE("berry_closed_form: symmetric angle, pi/6 value, family shift")
{
    for (int N : {0, 1, 2, 5})
        CHECK(berry_closed_form(N, pi / 4, PhaseFamily::ket_N) ==
              doctest::Approx(0.0));

    CHECK(berry_closed_form(4, pi / 6, PhaseFamily::ket_N) ==
          doctest::Approx(4.0 * pi));

    // singlet family: same N-dependence, N-independent shift
    for (int N : {2, 3, 6}) {
        const double shift = berry_closed_form(N, 0.7, PhaseFamily::ket_N) -
                             berry_closed_form(N, 0.7, PhaseFamily::singlet_N);
        CHECK(shift == doctest::Approx(-2.0 * pi *
                                       (2.0 * std::sin(0.7) * std::sin(0.7) - 1.0)));
    }

    CHECK_THROWS_AS(berry_closed_form(-1, 0.4, PhaseFamily::ket_N),
                    std::invalid_argument);
    CHECK_THROWS_AS(berry_closed_form(1, 0.4, PhaseFamily::singlet_N),
                    std::invalid_argument);
}

TEST_CASE("berry_connection: purely imaginary, finite-difference oracle")
{
    const FockBasis basis(8);
    const double h = 1e-5;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angles(0.2, 1.3);

    for (int trial = 0; trial < 4; ++trial) {
        const double theta = angles(rng);
        const double phi = angles(rng) * 4.0;
        for (int N : {1, 3, 6}) {
            const Complex conn = berry_connection(N, theta, phi, PhaseFamily::ket_N);
            CHECK(conn.real() == 0.0);

            const ComplexVector n0 = bimodal_fock_state(N, {theta, phi}, basis);
            const ComplexVector n1 = bimodal_fock_state(N, {theta, phi + h}, basis);
            const Complex fd = (overlap(n0, n1) - Complex(1.0)) / h;
            CHECK(std::abs(fd - conn) < 10.0 * h * (N + 1));
        }
    }

    // gamma = i * 2pi * connection reproduces the closed form exactly
    for (int N : {2, 4}) {
        const Complex conn = berry_connection(N, 0.5, 0.0, PhaseFamily::singlet_N);
        CHECK(std::real(Complex(0.0, 2.0 * pi) * conn) ==
              doctest::Approx(berry_closed_form(N, 0.5, PhaseFamily::singlet_N)));
    }
}

TEST_CASE("wilson_loop_phase: zero at theta = pi/4")
{
    const FockBasis basis(6);
    LoopSpec loop;
    loop.samples = 256;
    loop.selector = {LevelLabel::singlet, 3, +1, 0};
    const double gamma = wilson_loop_phase(geom_at(pi / 4), basis, loop);
    CHECK(std::abs(gamma) < 1e-8);
}

TEST_CASE("wilson_loop_phase: closed form as oracle at generic theta")
{
    const FockBasis basis(6);
    const double theta = 0.4;
    LoopSpec loop;
    loop.samples = 2048;
    loop.selector = {LevelLabel::singlet, 5, +1, 0};
    const double gamma = wilson_loop_phase(geom_at(theta), basis, loop);
    const double expected =
        principal_phase(berry_closed_form(5, theta, PhaseFamily::singlet_N));
    CHECK(std::abs(principal_phase(gamma - expected)) < 1e-6);
}

TEST_CASE("wilson_loop_phase: doublet members tracked analytically")
{
    const FockBasis basis(4);
    LoopSpec loop;
    loop.samples = 1024;
    loop.selector.kind = LevelLabel::zero_doublet;

    loop.selector.member = 0;  // |0>_phi is phi-independent
    CHECK(std::abs(wilson_loop_phase(geom_at(0.4), basis, loop)) < 1e-9);

    loop.selector.member = 1;  // ket family with N = 1
    const double gamma = wilson_loop_phase(geom_at(0.4), basis, loop);
    const double expected =
        principal_phase(berry_closed_form(1, 0.4, PhaseFamily::ket_N));
    CHECK(std::abs(principal_phase(gamma - expected)) < 1e-5);
}

TEST_CASE("wilson_loop_phase: gauge invariance under random re-phasing")
{
    const FockBasis basis(5);
    const CouplingGeometry g = geom_at(0.85);
    const int M = 257;
    const double dphi = 2.0 * pi / M;

    // analytic ket frames; re-phase them randomly and compare
    std::vector<ComplexVector> frames;
    for (int k = 0; k < M; ++k)
        frames.push_back(bimodal_fock_state(4, {g.theta, k * dphi}, basis));
    const double base = wilson_phase_from_frames(frames);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
    for (auto& f : frames)
        f *= std::exp(Complex(0.0, u(rng)));
    const double rephased = wilson_phase_from_frames(frames);
    CHECK(std::abs(principal_phase(base - rephased)) <= 1e-12);
}

TEST_CASE("wilson_loop_phase: unwrapped mode recovers the winding")
{
    const FockBasis basis(6);
    const double theta = 1.0;  // |closed form| > pi for N = 5
    LoopSpec loop;
    loop.samples = 2048;
    loop.selector = {LevelLabel::singlet, 5, +1, 0};
    loop.unwrapped = true;
    const double gamma = wilson_loop_phase(geom_at(theta), basis, loop);
    CHECK(gamma ==
          doctest::Approx(berry_closed_form(5, theta, PhaseFamily::singlet_N))
              .epsilon(1e-6));
}

TEST_CASE("wilson_loop_phase: error paths")
{
    const FockBasis basis(6);
    LoopSpec loop;
    loop.samples = 2;
    loop.selector = {LevelLabel::singlet, 3, +1, 0};
    CHECK_THROWS_AS(wilson_loop_phase(geom_at(0.4), basis, loop),
                    std::invalid_argument);

    loop.samples = 3;  // far too coarse: adjacent overlap falls below 0.5
    loop.selector = {LevelLabel::singlet, 6, +1, 0};
    CHECK_THROWS_AS(wilson_loop_phase(geom_at(1.2), basis, loop),
                    ConvergenceError);
}

TEST_CASE("phase_difference: pi at theta = pi/6, zero at pi/4, numeric oracle")
{
    for (int N : {2, 4, 7}) {
        CHECK(phase_difference(N, pi / 6, PhaseFamily::ket_N) ==
              doctest::Approx(pi));
        CHECK(phase_difference(N, pi / 6, PhaseFamily::singlet_N) ==
              doctest::Approx(pi));
        CHECK(phase_difference(N, pi / 4, PhaseFamily::singlet_N) ==
              doctest::Approx(0.0));
    }

    const FockBasis basis(6);
    const double theta = 0.4;
    LoopSpec loop;
    loop.samples = 2048;
    loop.selector = {LevelLabel::singlet, 4, +1, 0};
    const double w4 = wilson_loop_phase(geom_at(theta), basis, loop);
    loop.selector.N = 5;
    const double w5 = wilson_loop_phase(geom_at(theta), basis, loop);
    CHECK(std::abs(principal_phase(
              (w4 - w5) - phase_difference(4, theta, PhaseFamily::singlet_N))) <
          1e-6);
}

TEST_CASE("doublet_holonomy: diagonal within 1e-8, abelian phases")
{
    const FockBasis basis(4);
    for (const double theta : {0.3, pi / 6, 1.1}) {
        const ComplexMatrix h = doublet_holonomy(geom_at(theta), basis, 1024);
        CHECK(std::abs(h(0, 1)) < 1e-8);
        CHECK(std::abs(h(1, 0)) < 1e-8);
        // |0>_phi is phi-independent: that entry is exactly 1
        CHECK(std::abs(h(0, 0) - Complex(1.0)) < 1e-12);
        // member 1 carries the ket-family N = 1 phase; the raw overlap
        // product loses magnitude at O(1/samples)
        CHECK(std::abs(std::abs(h(1, 1)) - 1.0) < 0.05);
        const double expected =
            principal_phase(berry_closed_form(1, theta, PhaseFamily::ket_N));
        CHECK(std::abs(principal_phase(-std::arg(h(1, 1)) - expected)) < 1e-4);
    }
}

TEST_CASE("wilson loop converges toward the closed form as samples grow")
{
    const FockBasis basis(6);
    const double theta = 0.3;
    const double target =
        principal_phase(berry_closed_form(4, theta, PhaseFamily::singlet_N));
    LoopSpec loop;
    loop.selector = {LevelLabel::singlet, 4, +1, 0};

    double prev_err = 1e9;
    for (int samples : {64, 256, 1024}) {
        loop.samples = samples;
        const double err = std::abs(principal_phase(
            wilson_loop_phase(geom_at(theta), basis, loop) - target));
        CHECK(err < prev_err + 1e-10);
        prev_err = err;
    }
    CHECK(prev_err < 1e-8);
}
