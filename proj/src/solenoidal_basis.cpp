#include <micropolar/solenoidal_basis.hpp>

#include <micropolar/beam.hpp>

#include <cmath>
#include <stdexcept>

namespace micropolar {

SolenoidalBasis::SolenoidalBasis(const DomainSpec& dom, const Resolution& res)
    : dom_(dom), res_(res) {
    dom_.validate();
    res_.validate();
    const int Nx = res_.Nx, Jy = res_.Jy;
    lambda_ = beam::roots(Jy);

    // P is assembled with an internal Gauss rule sized from Jy alone, so the
    // matrices do not depend on the caller's grid choice.
    Vec gy, gw;
    gauss_legendre_01(Resolution::default_quad_y(Jy, Jy), gy, gw);
    Mat dphi(gy.size(), Jy);
    for (int j = 0; j < Jy; ++j) {
        beam::Eval ev = beam::eval(lambda_[j], gy);
        dphi.col(j) = ev.df;
    }
    P_ = dphi.transpose() * gw.asDiagonal() * dphi;
    P_ = 0.5 * (P_ + P_.transpose()).eval();

    M_.resize(blocks());
    K_.resize(blocks());
    mllt_.resize(blocks());
    Vec r = lambda_.array().pow(4).matrix();
    for (int n = -Nx; n <= Nx; ++n) {
        const int b = n + Nx;
        if (n == 0) {
            M_[b] = Mat::Identity(Jy, Jy);
            K_[b] = Mat::Zero(Jy, Jy);
            for (int j = 1; j <= Jy; ++j) K_[b](j - 1, j - 1) = (j * pi) * (j * pi);
        } else {
            const Real k2 = k(n) * k(n);
            M_[b] = 2.0 * (P_ + k2 * Mat::Identity(Jy, Jy));
            K_[b] = 2.0 * (Mat(r.asDiagonal()) + 2.0 * k2 * P_ + k2 * k2 * Mat::Identity(Jy, Jy));
        }
        mllt_[b].compute(M_[b]);
        if (mllt_[b].info() != Eigen::Success)
            throw std::runtime_error("SolenoidalBasis: mass block not SPD");
    }
}

namespace {

void check_basis(const SolenoidalField& u) {
    if (!u.basis || u.coef.size() != u.basis->size())
        throw std::invalid_argument("velocity field does not match its basis");
}

}  // namespace

SolenoidalField apply_stokes(const SolenoidalField& u) {
    check_basis(u);
    const SolenoidalBasis& b = *u.basis;
    SolenoidalField w = SolenoidalField::zero(b);
    for (int n = -b.res().Nx; n <= b.res().Nx; ++n)
        w.block(n) = b.mass_llt(n).solve(b.stiffness(n) * u.block(n));
    return w;
}

VelocityNorms velocity_norms(const SolenoidalField& u) {
    check_basis(u);
    const SolenoidalBasis& b = *u.basis;
    Real l2 = 0, h1 = 0, a2 = 0;
    for (int n = -b.res().Nx; n <= b.res().Nx; ++n) {
        const auto a = u.block(n);
        const Vec Ka = b.stiffness(n) * a;
        l2 += a.dot(b.mass(n) * a);
        h1 += a.dot(Ka);
        a2 += Ka.dot(b.mass_llt(n).solve(Ka));
    }
    return {std::sqrt(l2), std::sqrt(h1), std::sqrt(a2)};
}

Real inner_l2(const SolenoidalField& u, const SolenoidalField& v) {
    check_basis(u);
    check_basis(v);
    if (!u.basis->same(*v.basis)) throw std::invalid_argument("inner_l2: mismatched bases");
    Real s = 0;
    for (int n = -u.basis->res().Nx; n <= u.basis->res().Nx; ++n)
        s += u.block(n).dot(u.basis->mass(n) * v.block(n));
    return s;
}

Real inner_h1(const SolenoidalField& u, const SolenoidalField& v) {
    check_basis(u);
    check_basis(v);
    if (!u.basis->same(*v.basis)) throw std::invalid_argument("inner_h1: mismatched bases");
    Real s = 0;
    for (int n = -u.basis->res().Nx; n <= u.basis->res().Nx; ++n)
        s += u.block(n).dot(u.basis->stiffness(n) * v.block(n));
    return s;
}

SolenoidalTransform::SolenoidalTransform(const SolenoidalBasis& basis, const GridQuadrature& quad)
    : basis_(&basis), quad_(&quad) {
    const int Nx = basis.res().Nx, Jy = basis.res().Jy;
    const Index qx = quad.nx(), qy = quad.ny();
    const Real norm = std::sqrt(2.0 / basis.domain().l);
    Bx_.resize(qx, 2 * Nx + 1);
    for (int n = -Nx; n <= Nx; ++n) {
        const Real kn = basis.k(n);
        for (Index i = 0; i < qx; ++i)
            Bx_(i, n + Nx) = norm * (std::sin(kn * quad.x[i]) + std::cos(kn * quad.x[i]));
    }
    Phi_.resize(qy, Jy);
    Phid_.resize(qy, Jy);
    Phid2_.resize(qy, Jy);
    Phid3_.resize(qy, Jy);
    for (int j = 0; j < Jy; ++j) {
        beam::Eval ev = beam::eval(basis.lambda()[j], quad.y);
        Phi_.col(j) = ev.f;
        Phid_.col(j) = ev.df;
        Phid2_.col(j) = ev.d2f;
        Phid3_.col(j) = ev.d3f;
    }
    Sin_.resize(qy, Jy);
    Cos_.resize(qy, Jy);
    for (int j = 1; j <= Jy; ++j) {
        for (Index q = 0; q < qy; ++q) {
            Sin_(q, j - 1) = std::sin(j * pi * quad.y[q]);
            Cos_(q, j - 1) = std::cos(j * pi * quad.y[q]);
        }
    }
}

namespace {

// coefficient matrix, rows n = -Nx..Nx, with the n=0 row optionally zeroed
Mat block_matrix(const SolenoidalField& u, bool zero_mean) {
    const int Nx = u.basis->res().Nx, Jy = u.basis->res().Jy;
    Mat A(2 * Nx + 1, Jy);
    for (int n = -Nx; n <= Nx; ++n) A.row(n + Nx) = u.block(n).transpose();
    if (zero_mean) A.row(Nx).setZero();
    return A;
}

void check_same(const SolenoidalBasis* b, const SolenoidalField& u) {
    if (!u.basis || !b->same(*u.basis))
        throw std::invalid_argument("transform: velocity field built on another basis");
}

}  // namespace

GridVec SolenoidalTransform::synth(const SolenoidalField& u) const {
    check_same(basis_, u);
    const int Nx = basis_->res().Nx;
    Mat A = block_matrix(u, false);
    Mat Anz = A;
    Anz.row(Nx).setZero();
    // u2 collects by output x index n': coefficient k_{n'} a_{-n', j}
    Mat A2(A.rows(), A.cols());
    for (int n = -Nx; n <= Nx; ++n) A2.row(n + Nx) = basis_->k(n) * A.row(-n + Nx);
    GridVec g;
    g.x = Bx_ * Anz * Phid_.transpose() +
          Bx_.col(Nx) * (A.row(Nx) * Sin_.transpose());
    g.y = Bx_ * A2 * Phi_.transpose();
    return g;
}

GridGrad SolenoidalTransform::synth_grad(const SolenoidalField& u) const {
    check_same(basis_, u);
    const int Nx = basis_->res().Nx, Jy = basis_->res().Jy;
    Mat A = block_matrix(u, false);
    Mat Anz = A;
    Anz.row(Nx).setZero();
    Mat A2(A.rows(), A.cols());
    Mat D1(A.rows(), A.cols());  // x-derivative map of Anz
    Mat D2(A.rows(), A.cols());  // x-derivative map of A2
    for (int n = -Nx; n <= Nx; ++n) {
        const Real kn = basis_->k(n);
        A2.row(n + Nx) = kn * A.row(-n + Nx);
        D1.row(n + Nx) = -kn * Anz.row(-n + Nx);
        D2.row(n + Nx) = kn * kn * A.row(n + Nx);
    }
    GridGrad g;
    g.u1x = Bx_ * D1 * Phid_.transpose();
    Vec jpi(Jy);
    for (int j = 1; j <= Jy; ++j) jpi[j - 1] = j * pi;
    g.u1y = Bx_ * Anz * Phid2_.transpose() +
            Bx_.col(Nx) * ((A.row(Nx).transpose().cwiseProduct(jpi)).transpose() * Cos_.transpose());
    g.u2x = Bx_ * D2 * Phi_.transpose();
    g.u2y = Bx_ * A2 * Phid_.transpose();
    return g;
}

Mat SolenoidalTransform::rot_grid(const SolenoidalField& u) const {
    GridGrad g = synth_grad(u);
    return g.u2x - g.u1y;
}

Vec SolenoidalTransform::load(const GridVec& F) const {
    if (F.x.rows() != quad_->nx() || F.x.cols() != quad_->ny() || F.y.rows() != F.x.rows() ||
        F.y.cols() != F.x.cols())
        throw std::invalid_argument("load: grid size does not match quadrature");
    const int Nx = basis_->res().Nx, Jy = basis_->res().Jy;
    Mat W1 = quad_->wx.asDiagonal() * F.x * quad_->wy.asDiagonal();
    Mat W2 = quad_->wx.asDiagonal() * F.y * quad_->wy.asDiagonal();
    Mat T1 = Bx_.transpose() * W1 * Phid_;  // (F1, s X_n phi_j')
    Mat T2 = Bx_.transpose() * W2 * Phi_;   // (F2, s X_n phi_j)
    Vec mean_load = (Bx_.col(Nx).transpose() * W1 * Sin_).transpose();
    Vec out(basis_->size());
    for (int n = -Nx; n <= Nx; ++n) {
        auto seg = out.segment(static_cast<Index>(n + Nx) * Jy, Jy);
        if (n == 0)
            seg = mean_load;
        else
            seg = (T1.row(n + Nx) - basis_->k(n) * T2.row(-n + Nx)).transpose();
    }
    return out;
}

SolenoidalField SolenoidalTransform::leray_project(const GridVec& F) const {
    Vec L = load(F);
    const int Nx = basis_->res().Nx, Jy = basis_->res().Jy;
    SolenoidalField out = SolenoidalField::zero(*basis_);
    for (int n = -Nx; n <= Nx; ++n)
        out.block(n) = basis_->mass_llt(n).solve(L.segment(static_cast<Index>(n + Nx) * Jy, Jy));
    return out;
}

}  // namespace micropolar
