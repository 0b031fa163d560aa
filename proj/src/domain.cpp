#include <micropolar/domain.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace micropolar {

void DomainSpec::validate() const {
    if (!(l > 0.0) || !std::isfinite(l))
        throw std::invalid_argument("domain.l: period must be finite and positive, got " +
                                    std::to_string(l));
}

int Resolution::default_quad_x(int Nx) {
    // trapezoid with P uniform nodes integrates e^{ikx} exactly unless P | k;
    // triple products reach harmonic 3*Nx, so any P >= 3*Nx+1 is exact.
    return std::max(8, 3 * Nx + 2);
}

int Resolution::default_quad_y(int My, int Jy) {
    // highest y frequency in a triple product is ~3*pi*max(My,Jy); Gauss
    // integrates oscillation omega to machine accuracy once Q >~ 0.34*omega,
    // i.e. ~3.2 nodes per mode here. 3.75 per mode plus slack covers the
    // beam-function boundary layers as well.
    int m = std::max(My, Jy);
    return static_cast<int>(std::ceil(3.75 * m)) + 12;
}

void Resolution::finalize() {
    if (quad_x == 0) quad_x = default_quad_x(Nx);
    if (quad_y == 0) quad_y = default_quad_y(My, Jy);
    validate();
}

void Resolution::validate() const {
    if (Nx < 0) throw std::invalid_argument("resolution.Nx: must be >= 0");
    if (My < 1) throw std::invalid_argument("resolution.My: must be >= 1");
    if (Jy < 1) throw std::invalid_argument("resolution.Jy: must be >= 1");
    if (quad_x < 3 * Nx || quad_x < 1)
        throw std::invalid_argument("resolution.quad_x: need at least 3*Nx nodes, got " +
                                    std::to_string(quad_x));
    int m = std::max(My, Jy);
    if (quad_y < 2 * m + 8)
        throw std::invalid_argument("resolution.quad_y: need at least 2*max(My,Jy)+8 nodes, got " +
                                    std::to_string(quad_y));
}

GridQuadrature GridQuadrature::build(const DomainSpec& dom, int quad_x, int quad_y) {
    GridQuadrature g;
    g.x.resize(quad_x);
    g.wx = Vec::Constant(quad_x, dom.l / quad_x);
    for (int i = 0; i < quad_x; ++i) g.x[i] = dom.l * i / quad_x;
    gauss_legendre_01(quad_y, g.y, g.wy);
    return g;
}

Real GridQuadrature::integrate(const Mat& f) const {
    return wx.dot(f * wy);
}

Real GridQuadrature::inner(const Mat& f, const Mat& g) const {
    return wx.dot((f.array() * g.array()).matrix() * wy);
}

void gauss_legendre_01(int n, Vec& nodes, Vec& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_01: n must be >= 1");
    nodes.resize(n);
    weights.resize(n);
    // Newton on P_n over (-1,1), Chebyshev-like initial guesses.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1) { p1 = x; }
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = (n == 1) ? x : p1;
            double pm = (n == 1) ? 1.0 : p0;
            pp = n * (x * pn - pm) / (x * x - 1.0);
            double dx = pn / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // map (-1,1) -> (0,1), descending x gives ascending node order reversed
        nodes[n - 1 - i] = 0.5 * (x + 1.0);
        weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
}

}  // namespace micropolar
