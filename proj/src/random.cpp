#include <micropolar/random.hpp>

#include <cmath>
#include <stdexcept>

namespace micropolar {

Real Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    Real u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const Real u2 = uniform();
    const Real r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * pi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * pi * u2);
}

ScalarField random_scalar(const ScalarBasis& b, Rng& rng, Real s) {
    ScalarField f = ScalarField::zero(b);
    for (Index i = 0; i < b.size(); ++i)
        f.coef[i] = rng.normal() * std::pow(b.beta()[i], -0.5 * s);
    return f;
}

SolenoidalField random_velocity(const SolenoidalBasis& b, Rng& rng, Real s) {
    SolenoidalField u = SolenoidalField::zero(b);
    const int Nx = b.res().Nx, Jy = b.res().Jy;
    for (int n = -Nx; n <= Nx; ++n) {
        const Real k2 = b.k(n) * b.k(n);
        auto seg = u.block(n);
        for (int j = 0; j < Jy; ++j) {
            const Real nu = k2 + b.lambda()[j] * b.lambda()[j];
            seg[j] = rng.normal() * std::pow(nu, -0.5 * s);
        }
    }
    return u;
}

namespace {

Real safe_factor(Real target, Real current) {
    if (current <= 0.0) throw std::runtime_error("cannot rescale a zero field");
    return target / current;
}

}  // namespace

ScalarField scale_to_l2(const ScalarField& f, Real target) {
    return {f.basis, f.coef * safe_factor(target, scalar_norms(f).l2)};
}

SolenoidalField scale_to_l2(const SolenoidalField& u, Real target) {
    return {u.basis, u.coef * safe_factor(target, velocity_norms(u).l2)};
}

ScalarField scale_to_h1(const ScalarField& f, Real target) {
    return {f.basis, f.coef * safe_factor(target, scalar_norms(f).h1)};
}

SolenoidalField scale_to_h1(const SolenoidalField& u, Real target) {
    return {u.basis, u.coef * safe_factor(target, velocity_norms(u).h1)};
}

State preset_state(const DealiasPlan& plan, Preset kind, std::uint64_t seed) {
    State s = zero_state(plan);
    if (kind == Preset::conduction) return s;
    Rng rng(seed);
    const Real each = std::sqrt(1.0 / 3.0);  // unit total energy, split evenly
    const Real su = (kind == Preset::h1) ? 2.0 : 1.0;
    const Real som = (kind == Preset::small_ra) ? 1.0 : 2.0;
    const Real sth = (kind == Preset::h1) ? 2.0 : 1.0;
    s.u = scale_to_l2(random_velocity(plan.solenoidal_basis(), rng, su), each);
    s.omega = scale_to_l2(random_scalar(plan.scalar_basis(), rng, som), each);
    s.theta = scale_to_l2(random_scalar(plan.scalar_basis(), rng, sth), each);
    return s;
}

Preset preset_from_name(const std::string& name) {
    if (name == "conduction") return Preset::conduction;
    if (name == "smallRa") return Preset::small_ra;
    if (name == "H1") return Preset::h1;
    if (name == "mixed-L2H1") return Preset::mixed_l2h1;
    throw std::invalid_argument("unknown preset: " + name +
                                " (expected conduction, smallRa, H1, or mixed-L2H1)");
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::conduction: return "conduction";
        case Preset::small_ra: return "smallRa";
        case Preset::h1: return "H1";
        case Preset::mixed_l2h1: return "mixed-L2H1";
    }
    return "?";
}

PhysParams preset_params(Preset) {
    return PhysParams{1.0, 1.0, 0.5, 1.0, 1.0};
}

}  // namespace micropolar
