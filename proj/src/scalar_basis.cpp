#include <micropolar/scalar_basis.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace micropolar {

ScalarBasis::ScalarBasis(const DomainSpec& dom, const Resolution& res) : dom_(dom), res_(res) {
    dom_.validate();
    res_.validate();
    const int Nx = res_.Nx, My = res_.My;
    modes_.reserve(static_cast<size_t>(2 * Nx + 1) * My);
    for (int n = -Nx; n <= Nx; ++n) {
        const Real kn = k(n);
        for (int m = 1; m <= My; ++m) {
            const Real beta = kn * kn + (m * pi) * (m * pi);
            modes_.push_back({n, m, beta});
        }
    }
    std::sort(modes_.begin(), modes_.end(), [](const ScalarMode& a, const ScalarMode& b) {
        if (a.beta != b.beta) return a.beta < b.beta;
        if (std::abs(a.n) != std::abs(b.n)) return std::abs(a.n) < std::abs(b.n);
        if (a.n != b.n) return a.n < b.n;
        return a.m < b.m;
    });
    beta_.resize(size());
    pos_.assign(modes_.size(), -1);
    for (Index i = 0; i < size(); ++i) {
        const ScalarMode& md = modes_[i];
        beta_[i] = md.beta;
        pos_[static_cast<size_t>(md.n + Nx) * My + (md.m - 1)] = i;
    }
}

Index ScalarBasis::pos(int n, int m) const {
    const int Nx = res_.Nx, My = res_.My;
    if (n < -Nx || n > Nx || m < 1 || m > My)
        throw std::out_of_range("ScalarBasis::pos: mode outside truncation");
    return pos_[static_cast<size_t>(n + Nx) * My + (m - 1)];
}

namespace {

void check_basis(const ScalarField& f) {
    if (!f.basis || f.coef.size() != f.basis->size())
        throw std::invalid_argument("scalar field does not match its basis");
}

}  // namespace

ScalarField apply_A(const ScalarField& f) {
    check_basis(f);
    return {f.basis, f.basis->beta().cwiseProduct(f.coef)};
}

ScalarField apply_A_frac(const ScalarField& f, Real p) {
    check_basis(f);
    const bool ok = p == 0.5 || p == 1.0 || p == 1.5 || p == 2.0 || p == 3.0;
    if (!ok) throw std::invalid_argument("apply_A_frac: exponent must be one of 1/2, 1, 3/2, 2, 3");
    return {f.basis, f.basis->beta().array().pow(p).matrix().cwiseProduct(f.coef).eval()};
}

ScalarNorms scalar_norms(const ScalarField& f) {
    check_basis(f);
    const auto c2 = f.coef.array().square();
    const auto b = f.basis->beta().array();
    ScalarNorms n;
    n.l2 = std::sqrt(c2.sum());
    n.h1 = std::sqrt((b * c2).sum());
    n.a2 = std::sqrt((b.square() * c2).sum());
    n.a3 = std::sqrt((b.cube() * c2).sum());
    return n;
}

Real inner_l2(const ScalarField& f, const ScalarField& g) {
    check_basis(f);
    check_basis(g);
    if (!f.basis->same(*g.basis)) throw std::invalid_argument("inner_l2: mismatched bases");
    return f.coef.dot(g.coef);
}

ScalarTransform::ScalarTransform(const ScalarBasis& basis, const GridQuadrature& quad)
    : basis_(&basis), quad_(&quad) {
    const int Nx = basis.res().Nx, My = basis.res().My;
    const Index qx = quad.nx(), qy = quad.ny();
    const Real norm = std::sqrt(2.0 / basis.domain().l);
    Bx_.resize(qx, 2 * Nx + 1);
    for (int n = -Nx; n <= Nx; ++n) {
        const Real kn = basis.k(n);
        for (Index i = 0; i < qx; ++i)
            Bx_(i, n + Nx) = norm * (std::sin(kn * quad.x[i]) + std::cos(kn * quad.x[i]));
    }
    By_.resize(qy, My);
    Bydy_.resize(qy, My);
    for (int m = 1; m <= My; ++m) {
        for (Index q = 0; q < qy; ++q) {
            By_(q, m - 1) = std::sin(m * pi * quad.y[q]);
            Bydy_(q, m - 1) = m * pi * std::cos(m * pi * quad.y[q]);
        }
    }
}

Mat ScalarBasis::to_matrix(const ScalarField& f) const {
    check_basis(f);
    if (!same(*f.basis)) throw std::invalid_argument("to_matrix: field built on another basis");
    const int Nx = res_.Nx, My = res_.My;
    Mat C(2 * Nx + 1, My);
    for (Index i = 0; i < size(); ++i) {
        const ScalarMode& md = modes_[i];
        C(md.n + Nx, md.m - 1) = f.coef[i];
    }
    return C;
}

ScalarField ScalarBasis::from_matrix(const Mat& C) const {
    const int Nx = res_.Nx;
    ScalarField f = ScalarField::zero(*this);
    for (Index i = 0; i < size(); ++i) {
        const ScalarMode& md = modes_[i];
        f.coef[i] = C(md.n + Nx, md.m - 1);
    }
    return f;
}

Mat ScalarTransform::synth(const ScalarField& f) const {
    return Bx_ * basis_->to_matrix(f) * By_.transpose();
}

Mat ScalarTransform::synth_dx(const ScalarField& f) const {
    return Bx_ * basis_->to_matrix(dx_coef(f)) * By_.transpose();
}

Mat ScalarTransform::synth_dy(const ScalarField& f) const {
    return Bx_ * basis_->to_matrix(f) * Bydy_.transpose();
}

ScalarField ScalarTransform::analyze(const Mat& grid) const {
    if (grid.rows() != quad_->nx() || grid.cols() != quad_->ny())
        throw std::invalid_argument("analyze: grid size does not match quadrature");
    Mat C = Bx_.transpose() * quad_->wx.asDiagonal() * grid * quad_->wy.asDiagonal() * By_;
    return basis_->from_matrix(C);
}

ScalarField dx_coef(const ScalarField& f) {
    check_basis(f);
    const ScalarBasis& b = *f.basis;
    // d/dx [sin(kx)+cos(kx)] = k [sin(-kx)+cos(-kx)]: mode n feeds slot -n
    ScalarField out = ScalarField::zero(b);
    for (Index i = 0; i < b.size(); ++i) {
        const ScalarMode& md = b.modes()[i];
        out.coef[b.pos(-md.n, md.m)] = b.k(md.n) * f.coef[i];
    }
    return out;
}

GridVec rot_scalar(const ScalarTransform& tr, const ScalarField& f) {
    return {tr.synth_dy(f), -tr.synth_dx(f)};
}

}  // namespace micropolar
