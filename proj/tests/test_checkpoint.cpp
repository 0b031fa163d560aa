#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <micropolar/checkpoint.hpp>
#include <micropolar/random.hpp>

#include <filesystem>
#include <fstream>

using namespace micropolar;
namespace fs = std::filesystem;

namespace {

struct World {
    DomainSpec dom;
    Resolution res;
    ScalarBasis sb;
    SolenoidalBasis vb;
    DealiasPlan plan;
    Couplings coup;

    explicit World(Real l = 1.0, int nmodes = 3)
        : dom{l},
          res([nmodes] {
              Resolution r;
              r.Nx = r.My = r.Jy = nmodes;
              r.finalize();
              return r;
          }()),
          sb(dom, res),
          vb(dom, res),
          plan(sb, vb),
          coup(vb, sb) {}
};

std::string tmpfile(const char* name) {
    return (fs::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("checkpoint roundtrip preserves every field bit for bit") {
    World w;
    PhysParams p;
    p.Ra = 1.25;
    p.D = 0.75;
    State s = preset_state(w.plan, Preset::small_ra, 77);
    s.t = 0.625;

    const std::string path = tmpfile("mp_roundtrip.chk");
    write_checkpoint(path, s, p);
    Checkpoint ck = read_checkpoint(path);
    fs::remove(path);

    CHECK(ck.dom.l == w.dom.l);
    CHECK(ck.res.Nx == w.res.Nx);
    CHECK(ck.res.My == w.res.My);
    CHECK(ck.res.Jy == w.res.Jy);
    CHECK(ck.params.Ra == 1.25);
    CHECK(ck.params.D == 0.75);
    CHECK(ck.t == 0.625);
    CHECK(ck.has_history == false);
    CHECK((ck.u - s.u.coef).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ck.omega - s.omega.coef).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ck.theta - s.theta.coef).cwiseAbs().maxCoeff() == 0.0);

    State r = restore_state(ck, w.plan);
    CHECK(r.t == s.t);
    CHECK((r.u.coef - s.u.coef).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("resumed cnab2 run is bit-identical to an uninterrupted one") {
    World w;
    PhysParams p;
    StepperConfig cfg;
    cfg.scheme = Scheme::cnab2;
    cfg.dt = 0.002;
    cfg.t_end = 1.0;

    State sA = preset_state(w.plan, Preset::small_ra, 5);
    Stepper stA(w.plan, w.coup, p, cfg);
    for (int i = 0; i < 20; ++i) stA.step(sA);

    State sB = preset_state(w.plan, Preset::small_ra, 5);
    Stepper stB(w.plan, w.coup, p, cfg);
    for (int i = 0; i < 10; ++i) stB.step(sB);
    const std::string path = tmpfile("mp_resume.chk");
    write_checkpoint(path, sB, p, &stB);

    Checkpoint ck = read_checkpoint(path);
    fs::remove(path);
    REQUIRE(ck.has_history);
    State sC = restore_state(ck, w.plan);
    Stepper stC(w.plan, w.coup, p, cfg);
    restore_history(ck, stC);
    for (int i = 0; i < 10; ++i) stC.step(sC);

    CHECK(sC.t == sA.t);
    CHECK((sC.u.coef - sA.u.coef).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sC.omega.coef - sA.omega.coef).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sC.theta.coef - sA.theta.coef).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a resume without history drifts from the unbroken run") {
    // cnab2 needs the previous explicit part; dropping it is a different
    // (still consistent) first step, so the trajectories must part ways
    World w;
    PhysParams p;
    StepperConfig cfg;
    cfg.scheme = Scheme::cnab2;
    cfg.dt = 0.002;
    cfg.t_end = 1.0;

    State sA = preset_state(w.plan, Preset::small_ra, 5);
    Stepper stA(w.plan, w.coup, p, cfg);
    for (int i = 0; i < 20; ++i) stA.step(sA);

    State sB = preset_state(w.plan, Preset::small_ra, 5);
    Stepper stB(w.plan, w.coup, p, cfg);
    for (int i = 0; i < 10; ++i) stB.step(sB);
    Stepper fresh(w.plan, w.coup, p, cfg);  // no history restored
    for (int i = 0; i < 10; ++i) fresh.step(sB);

    CHECK((sB.u.coef - sA.u.coef).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("mismatched geometry, truncation, or scheme is rejected") {
    World w;
    PhysParams p;
    State s = preset_state(w.plan, Preset::small_ra, 9);
    const std::string path = tmpfile("mp_mismatch.chk");

    StepperConfig cfg;
    cfg.scheme = Scheme::cnab2;
    cfg.dt = 0.002;
    Stepper st(w.plan, w.coup, p, cfg);
    st.step(s);
    write_checkpoint(path, s, p, &st);
    Checkpoint ck = read_checkpoint(path);
    fs::remove(path);

    World other(1.0, 4);
    CHECK_THROWS_AS(restore_state(ck, other.plan), std::invalid_argument);
    World stretched(2.0, 3);
    CHECK_THROWS_AS(restore_state(ck, stretched.plan), std::invalid_argument);

    StepperConfig euler = cfg;
    euler.scheme = Scheme::imex_euler;
    Stepper st2(w.plan, w.coup, p, euler);
    CHECK_THROWS_AS(restore_history(ck, st2), std::invalid_argument);
}

TEST_CASE("corrupted files are refused") {
    World w;
    PhysParams p;
    State s = zero_state(w.plan);
    const std::string path = tmpfile("mp_corrupt.chk");
    write_checkpoint(path, s, p);

    // flip the magic
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.put('X');
    }
    CHECK_THROWS_AS(read_checkpoint(path), std::runtime_error);

    // truncate
    write_checkpoint(path, s, p);
    fs::resize_file(path, fs::file_size(path) / 2);
    CHECK_THROWS_AS(read_checkpoint(path), std::runtime_error);

    fs::remove(path);
    CHECK_THROWS_AS(read_checkpoint(path), std::runtime_error);
}
