#pragma once

#include <micropolar/domain.hpp>

#include <Eigen/Cholesky>

#include <vector>

namespace micropolar {

/// Divergence-free velocity basis on the periodic channel, no-slip walls.
/// For n != 0 the elements come from streamfunctions
///   psi_{nj} = sqrt(2/l) phi_j(y) X_n(x),  X_n = sin(k_n x) + cos(k_n x),
/// with phi_j the clamped-beam eigenfunctions, so
///   U_{nj} = (dpsi/dy, -dpsi/dx) = sqrt(2/l) (phi_j' X_n, -k_n phi_j X_{-n}).
/// The mean-flow block n = 0 is U_{0j} = sqrt(2/l) (sin(j pi y), 0).
/// Every element is exactly solenoidal and vanishes on both walls, so the
/// pressure never appears in the Galerkin system.
///
/// Blocks with different n are L2- and H1-orthogonal; per block
///   M^(n) = 2 (P + k_n^2 I)           (L2 Gram)
///   K^(n) = 2 (R + 2 k_n^2 P + k_n^4 I)  (Dirichlet stiffness)
/// with P_{jj'} = int phi_j' phi_{j'}', R = diag(lambda_j^4); block 0 has
/// M = I, K = diag((j pi)^2). The Stokes operator acts per block as
/// w = M^{-1} K a, which makes (A_S u, u) = ||u||^2 an algebraic identity.
class SolenoidalBasis {
  public:
    SolenoidalBasis(const DomainSpec& dom, const Resolution& res);

    const DomainSpec& domain() const { return dom_; }
    const Resolution& res() const { return res_; }
    int blocks() const { return 2 * res_.Nx + 1; }  // n = -Nx..Nx
    Index size() const { return static_cast<Index>(blocks()) * res_.Jy; }

    Real k(int n) const { return 2.0 * pi * n / dom_.l; }
    const Vec& lambda() const { return lambda_; }  // beam roots, j=1..Jy

    const Mat& mass(int n) const { return M_[n + res_.Nx]; }
    const Mat& stiffness(int n) const { return K_[n + res_.Nx]; }
    const Eigen::LLT<Mat>& mass_llt(int n) const { return mllt_[n + res_.Nx]; }

    /// P_{jj'} = int_0^1 phi_j' phi_{j'}' dy (dense, checkerboard by parity).
    const Mat& beam_grad_gram() const { return P_; }

    bool same(const SolenoidalBasis& other) const { return this == &other; }

  private:
    DomainSpec dom_;
    Resolution res_;
    Vec lambda_;
    Mat P_;
    std::vector<Mat> M_, K_;
    std::vector<Eigen::LLT<Mat>> mllt_;
};

/// Coefficient vector over the blocks n = -Nx..Nx, j ascending inside each.
struct SolenoidalField {
    const SolenoidalBasis* basis = nullptr;
    Vec coef;

    static SolenoidalField zero(const SolenoidalBasis& b) {
        return {&b, Vec::Zero(b.size())};
    }
    auto block(int n) {
        return coef.segment(static_cast<Index>(n + basis->res().Nx) * basis->res().Jy,
                            basis->res().Jy);
    }
    auto block(int n) const {
        return coef.segment(static_cast<Index>(n + basis->res().Nx) * basis->res().Jy,
                            basis->res().Jy);
    }
};

struct VelocityNorms {
    Real l2;  // |u|
    Real h1;  // ||u||
    Real a2;  // |A_S u|
};

/// Stokes action in coordinates: per block solve M w = K a.
SolenoidalField apply_stokes(const SolenoidalField& u);
VelocityNorms velocity_norms(const SolenoidalField& u);
Real inner_l2(const SolenoidalField& u, const SolenoidalField& v);
Real inner_h1(const SolenoidalField& u, const SolenoidalField& v);

/// Gradient of a velocity field sampled on the grid.
struct GridGrad {
    Mat u1x, u1y, u2x, u2y;
};

/// Evaluation tables for a SolenoidalBasis on a quadrature grid.
class SolenoidalTransform {
  public:
    SolenoidalTransform(const SolenoidalBasis& basis, const GridQuadrature& quad);

    const SolenoidalBasis& basis() const { return *basis_; }
    const GridQuadrature& quad() const { return *quad_; }

    GridVec synth(const SolenoidalField& u) const;
    GridGrad synth_grad(const SolenoidalField& u) const;
    /// rot u = du2/dx - du1/dy on the grid.
    Mat rot_grid(const SolenoidalField& u) const;

    /// Galerkin load vector L_{nj} = (F, U_{nj}), flat in block order.
    Vec load(const GridVec& F) const;

    /// L2 projection of an arbitrary grid vector field onto the basis:
    /// per-block load (F, U_{nj}) followed by a mass solve. Divergent and
    /// wall-violating parts drop out automatically.
    SolenoidalField leray_project(const GridVec& F) const;

  private:
    const SolenoidalBasis* basis_;
    const GridQuadrature* quad_;
    Mat Bx_;                          // qx x (2Nx+1): sqrt(2/l) X_n
    Mat Phi_, Phid_, Phid2_, Phid3_;  // qy x Jy beam tables
    Mat Sin_, Cos_;                   // qy x Jy mean-flow tables: sin(j pi y), cos(j pi y)
};

}  // namespace micropolar
