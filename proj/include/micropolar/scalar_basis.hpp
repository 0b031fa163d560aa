#pragma once

#include <micropolar/domain.hpp>

#include <vector>

namespace micropolar {

/// One element of the scalar eigenbasis
///   v_{nm}(x,y) = sqrt(2/l) * [sin(k_n x) + cos(k_n x)] * sin(m pi y),
/// k_n = 2 pi n / l, n = -Nx..Nx, m = 1..My. These are orthonormal in L2 and
/// diagonalize -Laplace with Dirichlet walls / periodic x:
///   -Laplace v_{nm} = beta_{nm} v_{nm},  beta_{nm} = k_n^2 + (m pi)^2.
struct ScalarMode {
    int n;
    int m;
    Real beta;
};

struct ScalarField;

class ScalarBasis {
  public:
    ScalarBasis(const DomainSpec& dom, const Resolution& res);

    const DomainSpec& domain() const { return dom_; }
    const Resolution& res() const { return res_; }
    Index size() const { return static_cast<Index>(modes_.size()); }

    /// Modes sorted by (beta, |n|, n, m); ties broken deterministically.
    const std::vector<ScalarMode>& modes() const { return modes_; }
    const Vec& beta() const { return beta_; }
    Real k(int n) const { return 2.0 * pi * n / dom_.l; }

    Index pos(int n, int m) const;  // flat index of mode (n,m)

    /// coef vector <-> (2Nx+1) x My matrix, rows n=-Nx..Nx, cols m=1..My
    Mat to_matrix(const ScalarField& f) const;
    ScalarField from_matrix(const Mat& C) const;

    bool same(const ScalarBasis& other) const { return this == &other; }

  private:
    DomainSpec dom_;
    Resolution res_;
    std::vector<ScalarMode> modes_;
    Vec beta_;
    std::vector<Index> pos_;  // (n+Nx)*My + (m-1) -> sorted slot
};

/// Coefficient vector against a ScalarBasis, indexed in the basis's sorted
/// mode order.
struct ScalarField {
    const ScalarBasis* basis = nullptr;
    Vec coef;

    static ScalarField zero(const ScalarBasis& b) {
        return {&b, Vec::Zero(b.size())};
    }
};

struct ScalarNorms {
    Real l2;  // |v|
    Real h1;  // |A^{1/2} v| = ||v||
    Real a2;  // |A v|
    Real a3;  // |A^{3/2} v|
};

ScalarField apply_A(const ScalarField& f);
/// A^p for p in {1/2, 1, 3/2, 2, 3}; other exponents are rejected.
ScalarField apply_A_frac(const ScalarField& f, Real p);
ScalarNorms scalar_norms(const ScalarField& f);
Real inner_l2(const ScalarField& f, const ScalarField& g);

/// Coefficients of d/dx within the same basis: (dx f)_{n,m} = -k_n f_{-n,m}.
ScalarField dx_coef(const ScalarField& f);

/// Dense evaluation tables tying a ScalarBasis to a quadrature grid.
class ScalarTransform {
  public:
    ScalarTransform(const ScalarBasis& basis, const GridQuadrature& quad);

    const ScalarBasis& basis() const { return *basis_; }
    const GridQuadrature& quad() const { return *quad_; }

    Mat synth(const ScalarField& f) const;     // values on the grid
    Mat synth_dx(const ScalarField& f) const;  // d/dx on the grid
    Mat synth_dy(const ScalarField& f) const;  // d/dy on the grid

    /// L2 projection of grid samples onto the basis; exact when the sampled
    /// function is in the span and the quadrature resolves the products.
    ScalarField analyze(const Mat& grid) const;

  private:
    const ScalarBasis* basis_;
    const GridQuadrature* quad_;
    Mat Bx_;    // qx x (2Nx+1): sqrt(2/l) X_n(x_i)
    Mat By_;    // qy x My:      sin(m pi y_q)
    Mat Bydy_;  // qy x My:      m pi cos(m pi y_q)
};

/// rot of a scalar field: (d/dy, -d/dx), sampled on the grid.
GridVec rot_scalar(const ScalarTransform& tr, const ScalarField& f);

}  // namespace micropolar
