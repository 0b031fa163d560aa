#include <micropolar/checkpoint.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace micropolar {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char magic[8] = {'M', 'P', 'C', 'H', 'K', 'P', 'T', '1'};
constexpr std::uint32_t format_version = 1;

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("checkpoint: truncated file");
    return v;
}

void put_vec(std::ostream& os, const Vec& v) {
    os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
}

Vec get_vec(std::istream& is, Index n) {
    Vec v(n);
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * 8));
    if (!is) throw std::runtime_error("checkpoint: truncated coefficient array");
    return v;
}

}  // namespace

void write_checkpoint(const std::string& path, const State& s, const PhysParams& p,
                      const Stepper* stepper) {
    const SolenoidalBasis& vb = *s.u.basis;
    const ScalarBasis& sb = *s.omega.basis;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("checkpoint: cannot open for writing: " + path);
    os.write(magic, 8);
    put(os, format_version);
    put(os, vb.domain().l);
    const Resolution& r = vb.res();
    put(os, static_cast<std::int32_t>(r.Nx));
    put(os, static_cast<std::int32_t>(r.My));
    put(os, static_cast<std::int32_t>(r.Jy));
    put(os, static_cast<std::int32_t>(r.quad_x));
    put(os, static_cast<std::int32_t>(r.quad_y));
    put(os, p.Pr);
    put(os, p.Ra);
    put(os, p.Nsq);
    put(os, p.Lsq);
    put(os, p.D);
    put(os, s.t);
    put(os, static_cast<std::uint64_t>(vb.size()));
    put(os, static_cast<std::uint64_t>(sb.size()));
    put_vec(os, s.u.coef);
    put_vec(os, s.omega.coef);
    put_vec(os, s.theta.coef);
    if (stepper && stepper->has_history()) {
        put(os, static_cast<std::uint8_t>(1));
        put(os, static_cast<std::uint32_t>(stepper->config().scheme == Scheme::cnab2 ? 1 : 0));
        Vec eu, eo, et;
        stepper->history(eu, eo, et);
        put_vec(os, eu);
        put_vec(os, eo);
        put_vec(os, et);
    } else {
        put(os, static_cast<std::uint8_t>(0));
    }
    if (!os) throw std::runtime_error("checkpoint: write failed: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open for reading: " + path);
    char m[8];
    is.read(m, 8);
    if (!is || std::memcmp(m, magic, 8) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    const auto ver = get<std::uint32_t>(is);
    if (ver != format_version)
        throw std::runtime_error("checkpoint: unsupported version " + std::to_string(ver));
    Checkpoint ck;
    ck.dom.l = get<Real>(is);
    ck.res.Nx = get<std::int32_t>(is);
    ck.res.My = get<std::int32_t>(is);
    ck.res.Jy = get<std::int32_t>(is);
    ck.res.quad_x = get<std::int32_t>(is);
    ck.res.quad_y = get<std::int32_t>(is);
    ck.params.Pr = get<Real>(is);
    ck.params.Ra = get<Real>(is);
    ck.params.Nsq = get<Real>(is);
    ck.params.Lsq = get<Real>(is);
    ck.params.D = get<Real>(is);
    ck.t = get<Real>(is);
    const auto nu = static_cast<Index>(get<std::uint64_t>(is));
    const auto ns = static_cast<Index>(get<std::uint64_t>(is));
    const Index exp_u = static_cast<Index>(2 * ck.res.Nx + 1) * ck.res.Jy;
    const Index exp_s = static_cast<Index>(2 * ck.res.Nx + 1) * ck.res.My;
    if (nu != exp_u || ns != exp_s)
        throw std::runtime_error("checkpoint: coefficient counts inconsistent with resolution");
    ck.u = get_vec(is, nu);
    ck.omega = get_vec(is, ns);
    ck.theta = get_vec(is, ns);
    const auto flag = get<std::uint8_t>(is);
    if (flag == 1) {
        ck.has_history = true;
        ck.scheme = get<std::uint32_t>(is) == 1 ? Scheme::cnab2 : Scheme::imex_euler;
        ck.eu = get_vec(is, nu);
        ck.eo = get_vec(is, ns);
        ck.et = get_vec(is, ns);
    }
    return ck;
}

State restore_state(const Checkpoint& ck, const DealiasPlan& plan) {
    const SolenoidalBasis& vb = plan.solenoidal_basis();
    const ScalarBasis& sb = plan.scalar_basis();
    if (vb.domain().l != ck.dom.l)
        throw std::invalid_argument("checkpoint: domain period mismatch");
    const Resolution& r = vb.res();
    if (r.Nx != ck.res.Nx || r.Jy != ck.res.Jy || sb.res().My != ck.res.My)
        throw std::invalid_argument("checkpoint: truncation mismatch");
    State s = zero_state(plan, ck.t);
    s.u.coef = ck.u;
    s.omega.coef = ck.omega;
    s.theta.coef = ck.theta;
    return s;
}

void restore_history(const Checkpoint& ck, Stepper& st) {
    if (!ck.has_history) return;
    if (st.config().scheme != ck.scheme)
        throw std::invalid_argument("checkpoint: history belongs to a different scheme");
    st.set_history(ck.eu, ck.eo, ck.et);
}

}  // namespace micropolar
