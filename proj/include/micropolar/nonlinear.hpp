#pragma once

#include <micropolar/scalar_basis.hpp>
#include <micropolar/solenoidal_basis.hpp>

#include <memory>

namespace micropolar {

/// Shared workspace for the quadratic terms: one quadrature grid plus the
/// evaluation tables of both bases on it. The grid is sized so that every
/// product of two basis elements is integrated exactly against a third, which
/// is what makes the Galerkin advection terms energy-neutral in exact
/// arithmetic (pseudospectral evaluation, no aliasing error in the projections).
class DealiasPlan {
  public:
    DealiasPlan(const ScalarBasis& sb, const SolenoidalBasis& vb);

    const ScalarBasis& scalar_basis() const { return *sb_; }
    const SolenoidalBasis& solenoidal_basis() const { return *vb_; }
    const GridQuadrature& quad() const { return quad_; }
    const ScalarTransform& scalar_transform() const { return *st_; }
    const SolenoidalTransform& solenoidal_transform() const { return *vt_; }

    DealiasPlan(const DealiasPlan&) = delete;
    DealiasPlan& operator=(const DealiasPlan&) = delete;

  private:
    const ScalarBasis* sb_;
    const SolenoidalBasis* vb_;
    GridQuadrature quad_;
    std::unique_ptr<ScalarTransform> st_;
    std::unique_ptr<SolenoidalTransform> vt_;
};

/// b_S(u,v,w) = int (u . grad) v . w  for solenoidal fields.
/// Skew in (v,w): b_S(u,v,v) = 0 whenever u is solenoidal and wall-bounded.
Real trilinear_bS(const DealiasPlan& plan, const SolenoidalField& u, const SolenoidalField& v,
                  const SolenoidalField& w);

/// b(u,f,g) = int (u . grad f) g  for scalar fields f,g.
Real trilinear_b(const DealiasPlan& plan, const SolenoidalField& u, const ScalarField& f,
                 const ScalarField& g);

/// Loads L_{nj} = b_S(u, u, U_{nj}), flat in block order.
Vec advect_velocity_load(const DealiasPlan& plan, const SolenoidalField& u);

/// Projection of (u . grad) f onto the scalar basis.
ScalarField advect_scalar(const DealiasPlan& plan, const SolenoidalField& u, const ScalarField& f);

/// Projection of rot(w) . grad(f) = w_y f_x - w_x f_y onto the scalar basis.
ScalarField rotw_grad(const DealiasPlan& plan, const ScalarField& w, const ScalarField& f);

}  // namespace micropolar
