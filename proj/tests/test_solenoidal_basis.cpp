#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <micropolar/beam.hpp>
#include <micropolar/random.hpp>
#include <micropolar/solenoidal_basis.hpp>

#include <cmath>

using namespace micropolar;

namespace {

Resolution small_res(int Nx, int Jy) {
    Resolution r;
    r.Nx = Nx;
    r.My = Jy;
    r.Jy = Jy;
    r.finalize();
    return r;
}

}  // namespace

TEST_CASE("gradient Gram of the beam functions matches pinned values") {
    DomainSpec dom{1.0};
    SolenoidalBasis b(dom, small_res(1, 3));
    const Mat& P = b.beam_grad_gram();
    REQUIRE(P.rows() == 3);
    CHECK(P(0, 0) == doctest::Approx(12.302618622966002).epsilon(1e-12));
    CHECK(std::abs(P(0, 1)) < 1e-12);  // opposite parity
    CHECK(P(0, 2) == doctest::Approx(-9.7307922130842644).epsilon(1e-12));
    CHECK((P - P.transpose()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("mean-flow block has identity mass and sine-Laplacian stiffness") {
    DomainSpec dom{2.0 * pi};
    SolenoidalBasis b(dom, small_res(2, 4));
    CHECK((b.mass(0) - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
    for (int j = 1; j <= 4; ++j) {
        CHECK(b.stiffness(0)(j - 1, j - 1) ==
              doctest::Approx(std::pow(j * pi, 2)).epsilon(1e-13));
        for (int j2 = 1; j2 <= 4; ++j2)
            if (j2 != j) CHECK(std::abs(b.stiffness(0)(j - 1, j2 - 1)) < 1e-12);
    }
    CHECK(b.lambda()[0] == doctest::Approx(4.7300407448627040).epsilon(1e-14));
}

TEST_CASE("block Gram matrices match direct quadrature of the elements") {
    DomainSpec dom{1.7};
    Resolution res = small_res(2, 3);
    SolenoidalBasis b(dom, res);
    GridQuadrature q = GridQuadrature::build(dom, res.quad_x, res.quad_y);
    SolenoidalTransform tr(b, q);
    for (int n : {-2, 0, 1}) {
        for (int j = 1; j <= 3; ++j)
            for (int j2 = 1; j2 <= 3; ++j2) {
                SolenoidalField a = SolenoidalField::zero(b);
                SolenoidalField c = SolenoidalField::zero(b);
                a.block(n)[j - 1] = 1.0;
                c.block(n)[j2 - 1] = 1.0;
                GridVec ga = tr.synth(a), gc = tr.synth(c);
                const Real mass_quad = q.inner(ga.x, gc.x) + q.inner(ga.y, gc.y);
                CHECK(mass_quad == doctest::Approx(b.mass(n)(j - 1, j2 - 1)).epsilon(1e-12));

                GridGrad da = tr.synth_grad(a), dc = tr.synth_grad(c);
                const Real stiff_quad = q.inner(da.u1x, dc.u1x) + q.inner(da.u1y, dc.u1y) +
                                        q.inner(da.u2x, dc.u2x) + q.inner(da.u2y, dc.u2y);
                // parity-zero entries carry quadrature roundoff scaled by the
                // largest entries (~lambda^4), so the tolerance must be too
                const Real stiff_tol = 1e-12 * b.stiffness(n).cwiseAbs().maxCoeff();
                CHECK(std::abs(stiff_quad - b.stiffness(n)(j - 1, j2 - 1)) < stiff_tol);
            }
    }
}

TEST_CASE("different x harmonics are L2 and H1 orthogonal") {
    DomainSpec dom{2.0};
    Resolution res = small_res(2, 2);
    SolenoidalBasis b(dom, res);
    SolenoidalField u = SolenoidalField::zero(b);
    SolenoidalField v = SolenoidalField::zero(b);
    u.block(1)[0] = 1.0;
    u.block(1)[1] = -0.5;
    v.block(-1)[0] = 0.7;
    v.block(2)[1] = 0.3;
    CHECK(std::abs(inner_l2(u, v)) < 1e-13);
    CHECK(std::abs(inner_h1(u, v)) < 1e-12);
}

TEST_CASE("synthesized fields are solenoidal and the rot matches the gradient") {
    DomainSpec dom{2.5};
    Resolution res = small_res(3, 3);
    SolenoidalBasis b(dom, res);
    GridQuadrature q = GridQuadrature::build(dom, res.quad_x, res.quad_y);
    SolenoidalTransform tr(b, q);
    Rng rng(23);
    SolenoidalField u = random_velocity(b, rng, 1.0);
    GridGrad g = tr.synth_grad(u);
    const Real scale = g.u1x.cwiseAbs().maxCoeff() + g.u2y.cwiseAbs().maxCoeff();
    CHECK((g.u1x + g.u2y).cwiseAbs().maxCoeff() < 1e-12 * scale);
    Mat rot = tr.rot_grid(u);
    CHECK((rot - (g.u2x - g.u1y)).cwiseAbs().maxCoeff() < 1e-13 * scale);
}

TEST_CASE("norms agree with direct quadrature") {
    DomainSpec dom{1.3};
    Resolution res = small_res(2, 3);
    SolenoidalBasis b(dom, res);
    GridQuadrature q = GridQuadrature::build(dom, res.quad_x, res.quad_y);
    SolenoidalTransform tr(b, q);
    Rng rng(29);
    SolenoidalField u = random_velocity(b, rng, 1.0);
    VelocityNorms nm = velocity_norms(u);
    GridVec g = tr.synth(u);
    GridGrad d = tr.synth_grad(u);
    const Real l2sq = q.inner(g.x, g.x) + q.inner(g.y, g.y);
    const Real h1sq = q.inner(d.u1x, d.u1x) + q.inner(d.u1y, d.u1y) + q.inner(d.u2x, d.u2x) +
                      q.inner(d.u2y, d.u2y);
    CHECK(nm.l2 * nm.l2 == doctest::Approx(l2sq).epsilon(1e-12));
    CHECK(nm.h1 * nm.h1 == doctest::Approx(h1sq).epsilon(1e-11));
}

TEST_CASE("Stokes action: (A_S u, u) = ||u||^2 and mean-flow eigenvalues") {
    DomainSpec dom{2.0 * pi};
    SolenoidalBasis b(dom, small_res(2, 3));
    Rng rng(31);
    SolenoidalField u = random_velocity(b, rng, 1.0);
    SolenoidalField Au = apply_stokes(u);
    VelocityNorms nm = velocity_norms(u);
    CHECK(inner_l2(Au, u) == doctest::Approx(nm.h1 * nm.h1).epsilon(1e-12));
    CHECK(velocity_norms(Au).l2 == doctest::Approx(nm.a2).epsilon(1e-12));

    SolenoidalField m = SolenoidalField::zero(b);
    m.block(0)[2] = 1.0;  // sin(3 pi y) mean flow
    SolenoidalField Am = apply_stokes(m);
    CHECK(Am.block(0)[2] == doctest::Approx(std::pow(3 * pi, 2)).epsilon(1e-13));
}

TEST_CASE("weak rot-rot identity: (rot u, rot v) = H1 inner product") {
    DomainSpec dom{1.9};
    Resolution res = small_res(2, 3);
    SolenoidalBasis b(dom, res);
    GridQuadrature q = GridQuadrature::build(dom, res.quad_x, res.quad_y);
    SolenoidalTransform tr(b, q);
    Rng rng(37);
    for (int trial = 0; trial < 5; ++trial) {
        SolenoidalField u = random_velocity(b, rng, 1.0);
        SolenoidalField v = random_velocity(b, rng, 1.0);
        const Real lhs = q.inner(tr.rot_grid(u), tr.rot_grid(v));
        const Real rhs = inner_h1(u, v);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("Leray projection inverts synthesis and kills gradients") {
    DomainSpec dom{2.0 * pi};
    Resolution res = small_res(3, 3);
    SolenoidalBasis b(dom, res);
    GridQuadrature q = GridQuadrature::build(dom, res.quad_x, res.quad_y);
    SolenoidalTransform tr(b, q);
    Rng rng(41);
    SolenoidalField u = random_velocity(b, rng, 1.0);
    SolenoidalField back = tr.leray_project(tr.synth(u));
    CHECK((back.coef - u.coef).cwiseAbs().maxCoeff() < 1e-11 * u.coef.cwiseAbs().maxCoeff());

    // gradient of a periodic potential projects to zero
    GridVec gradchi;
    gradchi.x.resize(q.nx(), q.ny());
    gradchi.y.resize(q.nx(), q.ny());
    for (Index i = 0; i < q.nx(); ++i)
        for (Index j = 0; j < q.ny(); ++j) {
            const Real kx = 2.0 * pi / dom.l;
            gradchi.x(i, j) = kx * std::cos(kx * q.x[i]) * std::sin(pi * q.y[j]);
            gradchi.y(i, j) = pi * std::sin(kx * q.x[i]) * std::cos(pi * q.y[j]);
        }
    SolenoidalField p = tr.leray_project(gradchi);
    CHECK(p.coef.cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("load vector is the adjoint of synthesis") {
    DomainSpec dom{1.0};
    Resolution res = small_res(2, 2);
    SolenoidalBasis b(dom, res);
    GridQuadrature q = GridQuadrature::build(dom, res.quad_x, res.quad_y);
    SolenoidalTransform tr(b, q);
    Rng rng(43);
    SolenoidalField u = random_velocity(b, rng, 1.0);
    GridVec F = tr.synth(random_velocity(b, rng, 1.0));
    // (F, synth(u)) = load(F) . coef(u)
    const Real lhs = q.inner(F.x, tr.synth(u).x) + q.inner(F.y, tr.synth(u).y);
    const Real rhs = tr.load(F).dot(u.coef);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}
