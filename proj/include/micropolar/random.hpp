#pragma once

#include <micropolar/dynamics.hpp>

#include <cstdint>
#include <random>
#include <string>

namespace micropolar {

/// Deterministic normal generator: mt19937_64 + explicit Box-Muller, so the
/// draw sequence is identical across standard libraries (std::normal_distribution
/// is implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    Real uniform() {  // [0,1)
        return static_cast<Real>(gen_() >> 11) * 0x1.0p-53;
    }

    Real normal();

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    Real spare_ = 0.0;
};

/// Coefficients i.i.d. N(0,1) scaled by beta^{-s/2}; s=1 is L2-rough data,
/// s=2 is H1 data. Draw order follows the basis's sorted mode order.
ScalarField random_scalar(const ScalarBasis& b, Rng& rng, Real s);

/// Velocity analogue with the decay surrogate nu_{nj} = k_n^2 + lambda_j^2.
SolenoidalField random_velocity(const SolenoidalBasis& b, Rng& rng, Real s);

ScalarField scale_to_l2(const ScalarField& f, Real target);
SolenoidalField scale_to_l2(const SolenoidalField& u, Real target);
ScalarField scale_to_h1(const ScalarField& f, Real target);
SolenoidalField scale_to_h1(const SolenoidalField& u, Real target);

enum class Preset { conduction, small_ra, h1, mixed_l2h1 };

/// Preset initial data at unit total energy |u|^2+|omega|^2+|theta|^2 = 1
/// (except conduction, which is the zero state):
///   small_ra:   all three fields L2-rough (s=1)
///   h1:         all three fields H1 (s=2)
///   mixed_l2h1: u, theta rough (s=1); omega smooth (s=2)
State preset_state(const DealiasPlan& plan, Preset kind, std::uint64_t seed);

Preset preset_from_name(const std::string& name);
std::string preset_name(Preset p);
/// Parameter values the named preset is meant to run with.
PhysParams preset_params(Preset p);

}  // namespace micropolar
