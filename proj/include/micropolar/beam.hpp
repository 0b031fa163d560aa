#pragma once

#include <micropolar/types.hpp>

namespace micropolar::beam {

/// First `count` positive roots of cos(lambda)*cosh(lambda) = 1, bisected to
/// ~1e-14 relative accuracy. Root j sits near (j + 1/2)*pi.
Vec roots(int count);

/// sigma_j = (cosh - cos)/(sinh - sin) at lambda_j, evaluated without
/// catastrophic cancellation (sigma -> 1 exponentially fast).
Real sigma(Real lambda);

/// Clamped-beam eigenfunction phi(y) = cosh(ly) - cos(ly) - sigma*(sinh(ly) - sin(ly))
/// and its first three derivatives on y in [0,1]. phi(0)=phi(1)=phi'(0)=phi'(1)=0,
/// phi'''' = lambda^4 phi, int_0^1 phi^2 = 1. Uses exponential splitting so the
/// huge cosh/sinh tails cancel analytically instead of numerically.
struct Eval {
    Vec f, df, d2f, d3f;
};
Eval eval(Real lambda, const Vec& y);

}  // namespace micropolar::beam
