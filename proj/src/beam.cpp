#include <micropolar/beam.hpp>

#include <cmath>
#include <stdexcept>

namespace micropolar::beam {

namespace {

// cos(l) - sech(l): same roots as cos*cosh = 1, but bounded, so bisection is
// well behaved at large l.
Real root_fn(Real l) { return std::cos(l) - 1.0 / std::cosh(l); }

}  // namespace

Vec roots(int count) {
    if (count < 1) throw std::invalid_argument("beam::roots: count must be >= 1");
    Vec out(count);
    for (int j = 1; j <= count; ++j) {
        Real lo = (j + 0.5) * pi - 0.4;
        Real hi = (j + 0.5) * pi + 0.4;
        Real flo = root_fn(lo);
        for (int it = 0; it < 200; ++it) {
            Real mid = 0.5 * (lo + hi);
            Real fm = root_fn(mid);
            if ((flo < 0) == (fm < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
            if (hi - lo < 1e-15 * mid) break;
        }
        out[j - 1] = 0.5 * (lo + hi);
    }
    return out;
}

Real sigma(Real l) {
    // divide numerator and denominator of (cosh-cos)/(sinh-sin) by e^l / 2
    Real e1 = std::exp(-l), e2 = e1 * e1;
    return (1.0 + e2 - 2.0 * e1 * std::cos(l)) / (1.0 - e2 - 2.0 * e1 * std::sin(l));
}

Eval eval(Real l, const Vec& y) {
    Eval ev;
    const Index n = y.size();
    ev.f.resize(n);
    ev.df.resize(n);
    ev.d2f.resize(n);
    ev.d3f.resize(n);

    const Real s = sigma(l);
    const Real e1 = std::exp(-l);
    // (1 - sigma) e^{l y} stays O(1): 1 - sigma = (cos - sin - e^{-l}) e^{-l} r
    const Real r = 2.0 / (1.0 - e1 * e1 - 2.0 * e1 * std::sin(l));
    const Real a_coef = (std::cos(l) - std::sin(l) - e1) * r;

    for (Index i = 0; i < n; ++i) {
        const Real t = l * y[i];
        const Real A = a_coef * std::exp(l * (y[i] - 1.0));  // (1-sigma) e^t
        const Real B = (1.0 + s) * std::exp(-t);             // (1+sigma) e^{-t}
        const Real ep = 0.5 * (A + B);  // cosh t - sigma sinh t
        const Real em = 0.5 * (A - B);  // sinh t - sigma cosh t
        const Real c = std::cos(t), sn = std::sin(t);
        ev.f[i] = ep - c + s * sn;
        ev.df[i] = l * (em + sn + s * c);
        ev.d2f[i] = l * l * (ep + c - s * sn);
        ev.d3f[i] = l * l * l * (em - sn - s * c);
    }
    return ev;
}

}  // namespace micropolar::beam
