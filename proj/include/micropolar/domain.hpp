#pragma once

#include <micropolar/types.hpp>

namespace micropolar {

/// Periodic channel (0,l) x (0,1): periodic in x, walls at y=0 and y=1.
struct DomainSpec {
    Real l = 2.0 * pi;

    void validate() const;
};

/// Truncation orders and quadrature sizes.
///   Nx  : x harmonics n = -Nx..Nx (scalar fields and velocity alike)
///   My  : wall-normal sine modes for scalar fields
///   Jy  : wall-normal beam / mean-flow modes for velocity
/// quad_x / quad_y default to sizes that integrate triple products of basis
/// elements exactly (trapezoid in x is exact once quad_x > 3*Nx; Gauss in y
/// needs roughly 0.34 nodes per unit frequency plus slack).
struct Resolution {
    int Nx = 8;
    int My = 8;
    int Jy = 8;
    int quad_x = 0;  // 0: pick default
    int quad_y = 0;

    static int default_quad_x(int Nx);
    static int default_quad_y(int My, int Jy);

    /// Fills in defaulted quadrature sizes and checks bounds.
    void finalize();
    void validate() const;
};

/// Tensor quadrature on (0,l) x (0,1): uniform trapezoid (= midpoint on a
/// periodic direction) in x, Gauss-Legendre in y.
struct GridQuadrature {
    Vec x, wx;
    Vec y, wy;

    static GridQuadrature build(const DomainSpec& dom, int quad_x, int quad_y);

    Index nx() const { return x.size(); }
    Index ny() const { return y.size(); }

    /// Integral over the domain of a grid-sampled scalar.
    Real integrate(const Mat& f) const;
    /// L2 inner product of two grid-sampled scalars.
    Real inner(const Mat& f, const Mat& g) const;
};

/// Gauss-Legendre nodes and weights on (0,1), exact for polynomials of
/// degree 2n-1.
void gauss_legendre_01(int n, Vec& nodes, Vec& weights);

}  // namespace micropolar
