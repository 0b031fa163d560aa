#include <micropolar/dynamics.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace micropolar {

void PhysParams::validate() const {
    auto fin = [](Real v) { return std::isfinite(v); };
    if (!fin(Pr) || Pr <= 0.0) throw std::invalid_argument("params.Pr: violates Pr > 0");
    if (!fin(Ra) || Ra <= 0.0) throw std::invalid_argument("params.Ra: violates Ra > 0");
    if (!fin(Nsq) || Nsq <= 0.0 || Nsq >= 1.0)
        throw std::invalid_argument("params.Nsq: violates 0 < N² < 1");
    if (!fin(Lsq) || Lsq <= 0.0) throw std::invalid_argument("params.Lsq: violates L² > 0");
    if (!fin(D) || D < 0.0) throw std::invalid_argument("params.D: violates D >= 0");
}

void StepperConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("stepper.dt: must be > 0");
    if (!std::isfinite(t_end) || t_end < 0.0)
        throw std::invalid_argument("stepper.t_end: must be >= 0");
    if (ledger_stride < 1) throw std::invalid_argument("stepper.ledger_stride: must be >= 1");
}

State zero_state(const DealiasPlan& plan, Real t) {
    return {SolenoidalField::zero(plan.solenoidal_basis()), ScalarField::zero(plan.scalar_basis()),
            ScalarField::zero(plan.scalar_basis()), t};
}

Couplings::Couplings(const SolenoidalBasis& vb, const ScalarBasis& sb) : vb_(&vb), sb_(&sb) {
    if (vb.domain().l != sb.domain().l || vb.res().Nx != sb.res().Nx)
        throw std::invalid_argument("Couplings: bases disagree on domain or x truncation");
    const int Jy = vb.res().Jy, My = sb.res().My;
    const Vec& lam = vb.lambda();
    S_.resize(Jy, My);
    Sm2_.resize(Jy, My);
    C_.resize(Jy, My);
    G0_.resize(Jy, My);
    for (int j = 1; j <= Jy; ++j) {
        const Real l2 = lam[j - 1] * lam[j - 1];
        const Real l4 = l2 * l2;
        for (int m = 1; m <= My; ++m) {
            const Real mp = m * pi;
            // int phi_j sin(m pi y): integrate phi'''' = lambda^4 phi by parts
            // four times; only the phi'' boundary terms survive.
            const Real par = ((j + m) % 2 == 0) ? 2.0 : 0.0;
            S_(j - 1, m - 1) = par * 2.0 * l2 * mp / (l4 - mp * mp * mp * mp);
            Sm2_(j - 1, m - 1) = mp * mp * S_(j - 1, m - 1);
            if (j == m)
                C_(j - 1, m - 1) = 0.0;
            else
                C_(j - 1, m - 1) = m * (1.0 - (((j + m) % 2 == 0) ? 1.0 : -1.0)) /
                                   (pi * (static_cast<Real>(m) * m - static_cast<Real>(j) * j));
            G0_(j - 1, m - 1) = -2.0 * j * pi * C_(j - 1, m - 1);
        }
    }
}

Vec Couplings::rot_to_velocity(const ScalarField& omega) const {
    Mat B = sb_->to_matrix(omega);  // rows n, cols m
    const int Nx = vb_->res().Nx, Jy = vb_->res().Jy;
    Vec out(vb_->size());
    for (int n = -Nx; n <= Nx; ++n) {
        auto seg = out.segment(static_cast<Index>(n + Nx) * Jy, Jy);
        const Vec bn = B.row(n + Nx).transpose();
        if (n == 0) {
            seg = G0_ * bn;
        } else {
            const Real k2 = vb_->k(n) * vb_->k(n);
            seg = 2.0 * k2 * (S_ * bn) + 2.0 * (Sm2_ * bn);
        }
    }
    return out;
}

ScalarField Couplings::rot_of_velocity(const SolenoidalField& u) const {
    const int Nx = vb_->res().Nx, My = sb_->res().My;
    Mat Cm(2 * Nx + 1, My);
    for (int n = -Nx; n <= Nx; ++n) {
        const auto a = u.block(n);
        if (n == 0) {
            Cm.row(n + Nx) = (G0_.transpose() * a).transpose();
        } else {
            const Real k2 = vb_->k(n) * vb_->k(n);
            Cm.row(n + Nx) = (2.0 * k2 * (S_.transpose() * a) + 2.0 * (Sm2_.transpose() * a))
                                 .transpose();
        }
    }
    return sb_->from_matrix(Cm);
}

Vec Couplings::buoyancy(const ScalarField& theta) const {
    Mat B = sb_->to_matrix(theta);
    const int Nx = vb_->res().Nx, Jy = vb_->res().Jy;
    Vec out(vb_->size());
    for (int n = -Nx; n <= Nx; ++n) {
        auto seg = out.segment(static_cast<Index>(n + Nx) * Jy, Jy);
        if (n == 0)
            seg.setZero();
        else
            seg = -2.0 * vb_->k(n) * (S_ * B.row(-n + Nx).transpose());
    }
    return out;
}

ScalarField Couplings::vertical_velocity(const SolenoidalField& u) const {
    const int Nx = vb_->res().Nx, My = sb_->res().My;
    Mat Cm(2 * Nx + 1, My);
    for (int n = -Nx; n <= Nx; ++n) {
        if (n == 0)
            Cm.row(n + Nx).setZero();
        else
            Cm.row(n + Nx) = 2.0 * vb_->k(n) * (S_.transpose() * u.block(-n)).transpose();
    }
    return sb_->from_matrix(Cm);
}

ScalarField lift_temperature(const ScalarTransform& tr, const Mat& T_grid) {
    const GridQuadrature& q = tr.quad();
    if (T_grid.rows() != q.nx() || T_grid.cols() != q.ny())
        throw std::invalid_argument("lift_temperature: grid size does not match quadrature");
    Mat theta = T_grid;
    for (Index c = 0; c < q.ny(); ++c) theta.col(c).array() -= (1.0 - q.y[c]);
    return tr.analyze(theta);
}

Mat unlift(const ScalarTransform& tr, const ScalarField& theta) {
    Mat T = tr.synth(theta);
    const GridQuadrature& q = tr.quad();
    for (Index c = 0; c < q.ny(); ++c) T.col(c).array() += (1.0 - q.y[c]);
    return T;
}

namespace {

void check_state(const DealiasPlan& plan, const State& s) {
    if (!s.u.basis || !s.u.basis->same(plan.solenoidal_basis()) || !s.omega.basis ||
        !s.omega.basis->same(plan.scalar_basis()) || !s.theta.basis ||
        !s.theta.basis->same(plan.scalar_basis()))
        throw std::invalid_argument("state fields do not live on the plan's bases");
}

struct ExplicitParts {
    Vec eu, eo, et;
};

ExplicitParts explicit_rhs(const DealiasPlan& plan, const Couplings& coup, const PhysParams& p,
                           const State& s) {
    ExplicitParts e;
    e.eu = -advect_velocity_load(plan, s.u) +
           p.Pr * (2.0 * p.Nsq * coup.rot_to_velocity(s.omega) + p.Ra * coup.buoyancy(s.theta));
    e.eo = -advect_scalar(plan, s.u, s.omega).coef +
           2.0 * p.Nsq * p.Pr * coup.rot_of_velocity(s.u).coef;
    e.et = -advect_scalar(plan, s.u, s.theta).coef + p.D * rotw_grad(plan, s.omega, s.theta).coef +
           p.D * dx_coef(s.omega).coef + coup.vertical_velocity(s.u).coef;
    return e;
}

}  // namespace

Rhs assemble_rhs(const DealiasPlan& plan, const Couplings& coup, const PhysParams& p,
                 const State& s) {
    check_state(plan, s);
    ExplicitParts e = explicit_rhs(plan, coup, p, s);
    const SolenoidalBasis& vb = plan.solenoidal_basis();
    const ScalarBasis& sb = plan.scalar_basis();
    const int Nx = vb.res().Nx, Jy = vb.res().Jy;
    Rhs r;
    r.du.resize(vb.size());
    for (int n = -Nx; n <= Nx; ++n) {
        const Index off = static_cast<Index>(n + Nx) * Jy;
        Vec rhs = e.eu.segment(off, Jy) - p.Pr * (vb.stiffness(n) * s.u.block(n));
        r.du.segment(off, Jy) = vb.mass_llt(n).solve(rhs);
    }
    const auto beta = sb.beta().array();
    r.domega = e.eo - (p.Pr * (beta / p.Lsq + 4.0 * p.Nsq) * s.omega.coef.array()).matrix();
    r.dtheta = e.et - (beta * s.theta.coef.array()).matrix();
    return r;
}

Real dt_cap(const PhysParams& p, const DomainSpec& dom, const Resolution& res) {
    const Real hx = dom.l / (2 * res.Nx + 1);
    const Real hy = 1.0 / std::max(res.My, res.Jy);
    const Real h = std::min(hx, hy);
    return 0.25 * h * h * p.Lsq;
}

Real dt_cap_advective(const DealiasPlan& plan, const SolenoidalField& u) {
    GridVec g = plan.solenoidal_transform().synth(u);
    const Real umax = std::max(g.x.cwiseAbs().maxCoeff(), g.y.cwiseAbs().maxCoeff());
    if (umax < 1e-12) return std::numeric_limits<Real>::infinity();
    const DomainSpec& dom = plan.solenoidal_basis().domain();
    const Resolution& res = plan.solenoidal_basis().res();
    const Real hx = dom.l / (2 * res.Nx + 1);
    const Real hy = 1.0 / std::max(res.My, res.Jy);
    return 0.5 * std::min(hx, hy) / umax;
}

Stepper::Stepper(const DealiasPlan& plan, const Couplings& coup, const PhysParams& p,
                 const StepperConfig& cfg)
    : plan_(&plan), coup_(&coup), p_(p), cfg_(cfg) {
    cfg_.validate();
    const SolenoidalBasis& vb = plan.solenoidal_basis();
    const ScalarBasis& sb = plan.scalar_basis();
    const Real cap = dt_cap(p, vb.domain(), vb.res());
    if (cfg_.dt > cap)
        throw std::invalid_argument("stepper.dt: exceeds stability cap " + std::to_string(cap));
    const Real w = (cfg_.scheme == Scheme::imex_euler) ? cfg_.dt : 0.5 * cfg_.dt;
    const int Nx = vb.res().Nx;
    solver_.resize(2 * Nx + 1);
    for (int n = -Nx; n <= Nx; ++n) {
        solver_[n + Nx].compute(vb.mass(n) + w * p_.Pr * vb.stiffness(n));
        if (solver_[n + Nx].info() != Eigen::Success)
            throw std::runtime_error("Stepper: implicit velocity block not SPD");
    }
    dom_ = (p_.Pr * (sb.beta().array() / p_.Lsq + 4.0 * p_.Nsq)).matrix();
    dth_ = sb.beta();
}

void Stepper::history(Vec& eu, Vec& eo, Vec& et) const {
    if (!have_prev_) throw std::runtime_error("Stepper: no history recorded yet");
    eu = eu_prev_;
    eo = eo_prev_;
    et = et_prev_;
}

void Stepper::set_history(const Vec& eu, const Vec& eo, const Vec& et) {
    const auto& vb = plan_->solenoidal_basis();
    const auto& sb = plan_->scalar_basis();
    if (eu.size() != vb.size() || eo.size() != sb.size() || et.size() != sb.size())
        throw std::invalid_argument("Stepper: history size mismatch");
    eu_prev_ = eu;
    eo_prev_ = eo;
    et_prev_ = et;
    have_prev_ = true;
}

void Stepper::step(State& s) {
    check_state(*plan_, s);
    const Real adv = dt_cap_advective(*plan_, s.u);
    if (cfg_.dt > adv)
        throw std::runtime_error("advective CFL violated at t=" + std::to_string(s.t) +
                                 ": dt > " + std::to_string(adv));
    const SolenoidalBasis& vb = plan_->solenoidal_basis();
    const int Nx = vb.res().Nx, Jy = vb.res().Jy;
    const Real dt = cfg_.dt;
    ExplicitParts e = explicit_rhs(*plan_, *coup_, p_, s);

    if (cfg_.scheme == Scheme::imex_euler) {
        for (int n = -Nx; n <= Nx; ++n) {
            const Index off = static_cast<Index>(n + Nx) * Jy;
            Vec rhs = vb.mass(n) * s.u.block(n) + dt * e.eu.segment(off, Jy);
            s.u.block(n) = solver_[n + Nx].solve(rhs);
        }
        s.omega.coef = ((s.omega.coef + dt * e.eo).array() / (1.0 + dt * dom_.array())).matrix();
        s.theta.coef = ((s.theta.coef + dt * e.et).array() / (1.0 + dt * dth_.array())).matrix();
    } else {
        const Vec ebu = have_prev_ ? Vec(1.5 * e.eu - 0.5 * eu_prev_) : e.eu;
        const Vec ebo = have_prev_ ? Vec(1.5 * e.eo - 0.5 * eo_prev_) : e.eo;
        const Vec ebt = have_prev_ ? Vec(1.5 * e.et - 0.5 * et_prev_) : e.et;
        for (int n = -Nx; n <= Nx; ++n) {
            const Index off = static_cast<Index>(n + Nx) * Jy;
            Vec rhs = (vb.mass(n) - 0.5 * dt * p_.Pr * vb.stiffness(n)) * s.u.block(n) +
                      dt * ebu.segment(off, Jy);
            s.u.block(n) = solver_[n + Nx].solve(rhs);
        }
        s.omega.coef = (((1.0 - 0.5 * dt * dom_.array()) * s.omega.coef.array() +
                         dt * ebo.array()) /
                        (1.0 + 0.5 * dt * dom_.array()))
                           .matrix();
        s.theta.coef = (((1.0 - 0.5 * dt * dth_.array()) * s.theta.coef.array() +
                         dt * ebt.array()) /
                        (1.0 + 0.5 * dt * dth_.array()))
                           .matrix();
        eu_prev_ = e.eu;
        eo_prev_ = e.eo;
        et_prev_ = e.et;
        have_prev_ = true;
    }
    s.t += dt;
    if (!s.u.coef.allFinite() || !s.omega.coef.allFinite() || !s.theta.coef.allFinite())
        throw std::runtime_error("numerical blowup at t=" + std::to_string(s.t));
}

LedgerRow measure(const State& s) {
    VelocityNorms un = velocity_norms(s.u);
    ScalarNorms on = scalar_norms(s.omega);
    ScalarNorms tn = scalar_norms(s.theta);
    LedgerRow r;
    r.t = s.t;
    r.u_l2sq = un.l2 * un.l2;
    r.u_h1sq = un.h1 * un.h1;
    r.u_a2sq = un.a2 * un.a2;
    r.om_l2sq = on.l2 * on.l2;
    r.om_h1sq = on.h1 * on.h1;
    r.om_a2sq = on.a2 * on.a2;
    r.th_l2sq = tn.l2 * tn.l2;
    r.th_h1sq = tn.h1 * tn.h1;
    r.th_a2sq = tn.a2 * tn.a2;
    r.y = r.u_l2sq + r.om_l2sq + r.th_l2sq;
    r.y_strong = r.u_h1sq + r.om_h1sq + r.th_h1sq;
    return r;
}

EnergyLedger simulate(Stepper& st, State& s) {
    const StepperConfig& cfg = st.config();
    EnergyLedger led;
    led.push(measure(s));
    const long n = std::lround((cfg.t_end - s.t) / cfg.dt);
    if (n < 0) throw std::invalid_argument("simulate: t_end before current time");
    for (long i = 1; i <= n; ++i) {
        st.step(s);
        if (i % cfg.ledger_stride == 0 || i == n) led.push(measure(s));
    }
    return led;
}

EnergyLedger simulate(const DealiasPlan& plan, const Couplings& coup, const PhysParams& p,
                      const StepperConfig& cfg, State& s) {
    Stepper st(plan, coup, p, cfg);
    return simulate(st, s);
}

}  // namespace micropolar
