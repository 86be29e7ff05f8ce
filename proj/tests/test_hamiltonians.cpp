#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "bec/fock.hpp"
#include "bec/hamiltonians.hpp"
#include "bec/linalg.hpp"

using namespace bec;
using doctest::Approx;

namespace {

RamanParams sample_raman() {
    RamanParams p;
    p.g1 = Complex(0.7, 0.2);
    p.g2 = Complex(0.4, -0.3);
    p.delta1 = 2.0;
    p.delta2 = 1.5;
    p.lambda1 = 0.01;
    p.lambda2 = 0.02;
    p.lambda3 = 0.03;
    p.lambda12 = 0.004;
    p.lambda13 = 0.005;
    p.lambda23 = 0.006;
    return p;
}

}  // namespace

TEST_CASE("three-mode sector Hamiltonian matches a ladder-product oracle") {
    const RamanParams p = sample_raman();
    const int total = 3;
    const LinearOperator h = build_three_mode(p, total);
    CHECK(h.hermitian_flag());
    CHECK(hermiticity_defect(h.matrix()) == 0.0);

    // Independent route: assemble the same Hamiltonian in the full three-mode
    // basis from ladder matrices, then read off the sector entries.
    const FockBasis full(3, total);
    const auto [b1, b1d] = make_ladder(full, 1);
    const auto [b2, b2d] = make_ladder(full, 2);
    const auto [b3, b3d] = make_ladder(full, 3);
    const Matrix n1 = number_op(full, 1).matrix();
    const Matrix n2 = number_op(full, 2).matrix();
    const Matrix n3 = number_op(full, 3).matrix();
    const Matrix id = Matrix::Identity(full.dimension(), full.dimension());

    Matrix oracle = (p.delta1 - p.delta2) * n3 + p.delta1 * n2;
    oracle -= p.g1 * (b2d.matrix() * b1.matrix()) + std::conj(p.g1) * (b1d.matrix() * b2.matrix());
    oracle -= p.g2 * (b2d.matrix() * b3.matrix()) + std::conj(p.g2) * (b3d.matrix() * b2.matrix());
    oracle += p.lambda1 * n1 * (n1 - id) + p.lambda2 * n2 * (n2 - id) + p.lambda3 * n3 * (n3 - id);
    oracle += p.lambda12 * n1 * n2 + p.lambda13 * n1 * n3 + p.lambda23 * n2 * n3;

    const FockBasis sector = h.basis();
    REQUIRE(sector.dimension() == 10);
    for (Eigen::Index i = 0; i < sector.dimension(); ++i) {
        const Eigen::Index fi = full.encode(sector.decode(i));
        for (Eigen::Index j = 0; j < sector.dimension(); ++j) {
            const Eigen::Index fj = full.encode(sector.decode(j));
            CHECK(std::abs(h.matrix()(i, j) - oracle(fi, fj)) < 1e-13);
        }
    }
}

TEST_CASE("parameter reduction from the microscopic model") {
    RamanParams p;
    p.g1 = Complex(0.3, 0.0);
    p.g2 = Complex(0.3, 0.0);
    p.delta1 = p.delta2 = 30.0;
    p.lambda1 = p.lambda3 = 0.01;
    p.lambda13 = 0.02;

    const EffectiveParams eff = effective_from_raman(p);
    CHECK(eff.g == Approx(-0.003).epsilon(1e-14));
    CHECK(eff.q == Approx(0.01));
    CHECK(eff.chi == Approx(0.01));
    CHECK(eff.omega() == Approx(eff.g - (eff.chi + eff.q) / 2.0));

    // A shared complex phase is allowed: g1 conj(g2) stays real.
    RamanParams rotated = p;
    rotated.g1 = std::polar(0.3, 1.1);
    rotated.g2 = std::polar(0.3, 1.1);
    CHECK(effective_from_raman(rotated).g == Approx(-0.003).epsilon(1e-12));

    RamanParams bad = p;
    bad.delta2 = 25.0;
    CHECK_THROWS_AS(effective_from_raman(bad), std::invalid_argument);
    bad = p;
    bad.delta1 = bad.delta2 = 0.0;
    CHECK_THROWS_AS(effective_from_raman(bad), std::invalid_argument);
    bad = p;
    bad.g2 = Complex(0.4, 0.0);
    CHECK_THROWS_AS(effective_from_raman(bad), std::invalid_argument);
    bad = p;
    bad.g2 = Complex(0.0, 0.3);  // |g2| matches but the product is imaginary
    CHECK_THROWS_AS(effective_from_raman(bad), std::invalid_argument);
    bad = p;
    bad.lambda3 = 0.02;
    CHECK_THROWS_AS(effective_from_raman(bad), std::invalid_argument);
}

TEST_CASE("the symmetric two-mode form is a special case of the general one") {
    const EffectiveParams p{-0.45, 0.1, 0.05};
    const FockBasis basis = FockBasis::two_mode(8);

    TwoModeCouplings c;
    c.omega1 = c.omega3 = p.g;
    c.g = Complex(p.g, 0.0);
    c.lambda1 = c.lambda3 = p.q;
    c.lambda13 = 2.0 * p.chi;

    const Matrix diff = build_effective(p, basis).matrix() - build_two_mode(c, basis).matrix();
    CHECK(diff.norm() < 1e-13);

    CHECK_THROWS_AS(build_effective(p, FockBasis::single_mode(8)), std::invalid_argument);
    CHECK_THROWS_AS(build_two_mode(c, FockBasis::single_mode(8)), std::invalid_argument);
}

TEST_CASE("rotating-wave Hamiltonian: diagonal, with the closed-form spectrum") {
    const EffectiveParams p{-0.45, 0.1, 0.05};
    const FockBasis basis = FockBasis::two_mode(6);
    const LinearOperator h = build_rwa(p, basis);
    CHECK(h.hermitian_flag());

    for (Eigen::Index i = 0; i < basis.dimension(); ++i) {
        for (Eigen::Index j = 0; j < basis.dimension(); ++j) {
            if (i != j) CHECK(h.matrix()(i, j) == Complex(0.0, 0.0));
        }
    }
    for (int n = 0; n <= 6; ++n) {
        for (int m = 0; m <= 6; ++m) {
            CHECK(std::abs(h.matrix()(basis.encode({n, m}), basis.encode({n, m})).real() -
                           eigenvalue(n, m, p)) < 1e-12);
        }
    }

    CHECK(std::abs(eigenvalue(0, 0, p)) < 1e-15);
    CHECK(std::abs(eigenvalue(0, 1, p)) < 1e-15);
    CHECK(eigenvalue(1, 0, p) == Approx(2.0 * p.g).epsilon(1e-14));
    CHECK(eigenvalue(1, 1, p) == Approx(2.0 * p.g + 2.0 * p.q).epsilon(1e-14));
    CHECK(eigenvalue(3, 2, p) == Approx(-0.9).epsilon(1e-13));
}

TEST_CASE("the rotating-wave residual vanishes for pure tunnelling") {
    const EffectiveParams tunnelling{-0.45, 0.0, 0.0};
    const LinearOperator residual = rwa_residual(tunnelling, FockBasis::two_mode(8));
    CHECK(residual.matrix().norm() < 1e-12);
}

TEST_CASE("the rotating-wave residual is purely off-diagonal on complete sectors") {
    const EffectiveParams p{-0.45, 0.1, 0.05};
    const FockBasis basis = FockBasis::two_mode(10);
    const LinearOperator residual = rwa_residual(p, basis);
    CHECK(residual.hermitian_flag());
    double max_diag = 0.0;
    double max_offdiag = 0.0;
    for (Eigen::Index i = 0; i < basis.dimension(); ++i) {
        if (basis.total_occupation(i) > basis.cutoff()) continue;
        max_diag = std::max(max_diag, std::abs(residual.matrix()(i, i)));
        for (Eigen::Index j = 0; j < basis.dimension(); ++j) {
            if (i != j) max_offdiag = std::max(max_offdiag, std::abs(residual.matrix()(i, j)));
        }
    }
    CHECK(max_diag < 1e-12);
    CHECK(max_offdiag > 0.01);  // the dropped terms are genuinely present
}
