#pragma once

#include <micropolar/ledger.hpp>
#include <micropolar/nonlinear.hpp>

namespace micropolar {

/// The five nondimensional numbers of the transformed system. theta denotes
/// the deviation from the conduction profile, so zero state = pure conduction.
struct PhysParams {
    Real Pr = 1.0;   // Prandtl
    Real Ra = 1.0;   // Rayleigh
    Real Nsq = 0.5;  // coupling number N^2, must lie in (0,1)
    Real Lsq = 1.0;  // micro-inertia L^2
    Real D = 1.0;    // micropolar heat transport

    void validate() const;
};

struct State {
    SolenoidalField u;
    ScalarField omega;
    ScalarField theta;
    Real t = 0.0;
};

State zero_state(const DealiasPlan& plan, Real t = 0.0);

/// Linear coupling operators between the two bases, assembled from the exact
/// closed forms
///   S_{jm} = int_0^1 phi_j sin(m pi y) dy,  C_{jm} = int_0^1 cos(j pi y) sin(m pi y) dy.
/// The same matrices back each operator and its adjoint, so the discrete
/// adjoint identities (rot omega, u) = (omega, rot u) and
/// (theta e2, u) = (u_2, theta) hold to roundoff by construction.
class Couplings {
  public:
    Couplings(const SolenoidalBasis& vb, const ScalarBasis& sb);

    const Mat& S() const { return S_; }
    const Mat& C() const { return C_; }

    /// Load vector (rot omega, U_{nj}) over velocity blocks.
    Vec rot_to_velocity(const ScalarField& omega) const;
    /// Projection of rot u onto the scalar basis ((rot u, v_{nm}) coefficients).
    ScalarField rot_of_velocity(const SolenoidalField& u) const;
    /// Load vector (theta e2, U_{nj}).
    Vec buoyancy(const ScalarField& theta) const;
    /// Projection of the vertical velocity u_2 onto the scalar basis.
    ScalarField vertical_velocity(const SolenoidalField& u) const;

  private:
    const SolenoidalBasis* vb_;
    const ScalarBasis* sb_;
    Mat S_, Sm2_;  // Sm2 = S scaled by (m pi)^2 per column
    Mat C_;
    Mat G0_;  // mean-flow rot coupling: -2 j pi C_{jm}
};

/// Conduction-state change of variables theta = T - (1 - y): subtract the
/// profile on the grid and project. The profile itself is not in the sine
/// span, so lifting general data leaves a projection residual.
ScalarField lift_temperature(const ScalarTransform& tr, const Mat& T_grid);
Mat unlift(const ScalarTransform& tr, const ScalarField& theta);

struct Rhs {
    Vec du;      // da/dt, mass-solved, velocity block order
    Vec domega;  // db/dt
    Vec dtheta;  // dc/dt
};

Rhs assemble_rhs(const DealiasPlan& plan, const Couplings& coup, const PhysParams& p,
                 const State& s);

enum class Scheme { imex_euler, cnab2 };

struct StepperConfig {
    Scheme scheme = Scheme::cnab2;
    Real dt = 1e-3;
    Real t_end = 1.0;
    int ledger_stride = 1;

    void validate() const;
};

/// Static stability cap 0.25 * h_min^2 * L^2 from the explicit coupling block,
/// h_min = min(l/(2Nx+1), 1/max(My,Jy)).
Real dt_cap(const PhysParams& p, const DomainSpec& dom, const Resolution& res);
/// Advective cap 0.5 * h_min / max|u|; +inf for (near-)quiescent fields.
Real dt_cap_advective(const DealiasPlan& plan, const SolenoidalField& u);

/// IMEX stepping: all linear self-adjoint dissipative terms (including the
/// 4 N^2 omega relaxation) implicit, quadratic terms and rot/buoyancy
/// couplings explicit. imex_euler is backward-Euler/forward-Euler; cnab2 is
/// Crank-Nicolson/Adams-Bashforth-2 with a CN/forward-Euler first step.
class Stepper {
  public:
    Stepper(const DealiasPlan& plan, const Couplings& coup, const PhysParams& p,
            const StepperConfig& cfg);

    void step(State& s);
    const StepperConfig& config() const { return cfg_; }

    /// Explicit-part history; lets a resumed cnab2 run reproduce an
    /// uninterrupted one bit for bit.
    bool has_history() const { return have_prev_; }
    void history(Vec& eu, Vec& eo, Vec& et) const;
    void set_history(const Vec& eu, const Vec& eo, const Vec& et);

  private:
    void explicit_parts(const State& s, Vec& eu, Vec& eo, Vec& et) const;

    const DealiasPlan* plan_;
    const Couplings* coup_;
    PhysParams p_;
    StepperConfig cfg_;
    std::vector<Eigen::LLT<Mat>> solver_;  // per velocity block
    Vec dom_, dth_;                        // implicit diagonal rates for omega, theta
    bool have_prev_ = false;
    Vec eu_prev_, eo_prev_, et_prev_;
};

LedgerRow measure(const State& s);

/// Advances s to cfg.t_end with fixed dt; rows at the starting time, every
/// ledger_stride steps, and at the end. Throws on numerical blowup with the
/// offending time. The Stepper overload lets callers carry scheme history
/// across a checkpoint boundary.
EnergyLedger simulate(Stepper& st, State& s);
EnergyLedger simulate(const DealiasPlan& plan, const Couplings& coup, const PhysParams& p,
                      const StepperConfig& cfg, State& s);

}  // namespace micropolar
