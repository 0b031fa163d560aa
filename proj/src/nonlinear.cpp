#include <micropolar/nonlinear.hpp>

#include <stdexcept>

namespace micropolar {

DealiasPlan::DealiasPlan(const ScalarBasis& sb, const SolenoidalBasis& vb) : sb_(&sb), vb_(&vb) {
    if (sb.domain().l != vb.domain().l)
        throw std::invalid_argument("DealiasPlan: bases live on different domains");
    if (sb.res().Nx != vb.res().Nx)
        throw std::invalid_argument("DealiasPlan: bases truncate x differently");
    if (sb.res().quad_x != vb.res().quad_x || sb.res().quad_y != vb.res().quad_y)
        throw std::invalid_argument("DealiasPlan: bases disagree on the quadrature grid");
    quad_ = GridQuadrature::build(sb.domain(), sb.res().quad_x, sb.res().quad_y);
    st_ = std::make_unique<ScalarTransform>(sb, quad_);
    vt_ = std::make_unique<SolenoidalTransform>(vb, quad_);
}

Real trilinear_bS(const DealiasPlan& plan, const SolenoidalField& u, const SolenoidalField& v,
                  const SolenoidalField& w) {
    const auto& vt = plan.solenoidal_transform();
    GridVec ug = vt.synth(u);
    GridGrad gv = vt.synth_grad(v);
    GridVec wg = vt.synth(w);
    Mat integrand = (ug.x.array() * gv.u1x.array() + ug.y.array() * gv.u1y.array()) * wg.x.array() +
                    (ug.x.array() * gv.u2x.array() + ug.y.array() * gv.u2y.array()) * wg.y.array();
    return plan.quad().integrate(integrand);
}

Real trilinear_b(const DealiasPlan& plan, const SolenoidalField& u, const ScalarField& f,
                 const ScalarField& g) {
    const auto& vt = plan.solenoidal_transform();
    const auto& st = plan.scalar_transform();
    GridVec ug = vt.synth(u);
    Mat fx = st.synth_dx(f), fy = st.synth_dy(f);
    Mat gg = st.synth(g);
    Mat integrand = (ug.x.array() * fx.array() + ug.y.array() * fy.array()) * gg.array();
    return plan.quad().integrate(integrand);
}

Vec advect_velocity_load(const DealiasPlan& plan, const SolenoidalField& u) {
    const auto& vt = plan.solenoidal_transform();
    GridVec ug = vt.synth(u);
    GridGrad gu = vt.synth_grad(u);
    GridVec adv;
    adv.x = (ug.x.array() * gu.u1x.array() + ug.y.array() * gu.u1y.array()).matrix();
    adv.y = (ug.x.array() * gu.u2x.array() + ug.y.array() * gu.u2y.array()).matrix();
    return vt.load(adv);
}

ScalarField advect_scalar(const DealiasPlan& plan, const SolenoidalField& u, const ScalarField& f) {
    const auto& vt = plan.solenoidal_transform();
    const auto& st = plan.scalar_transform();
    GridVec ug = vt.synth(u);
    Mat fx = st.synth_dx(f), fy = st.synth_dy(f);
    Mat prod = (ug.x.array() * fx.array() + ug.y.array() * fy.array()).matrix();
    return st.analyze(prod);
}

ScalarField rotw_grad(const DealiasPlan& plan, const ScalarField& w, const ScalarField& f) {
    const auto& st = plan.scalar_transform();
    Mat wx = st.synth_dx(w), wy = st.synth_dy(w);
    Mat fx = st.synth_dx(f), fy = st.synth_dy(f);
    Mat prod = (wy.array() * fx.array() - wx.array() * fy.array()).matrix();
    return st.analyze(prod);
}

}  // namespace micropolar
