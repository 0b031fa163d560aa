#pragma once

#include <micropolar/dynamics.hpp>

#include <string>

namespace micropolar {

/// On-disk snapshot of a run: domain, truncation, parameters, time, raw
/// coefficient arrays, and (optionally) the stepper's explicit-part history so
/// a resumed cnab2 run is bit-identical to an uninterrupted one. Byte layout
/// in docs/checkpoint_format.md; 64-bit little-endian floats throughout.
struct Checkpoint {
    DomainSpec dom;
    Resolution res;
    PhysParams params;
    Real t = 0.0;
    Vec u, omega, theta;  // coefficients in basis order

    bool has_history = false;
    Scheme scheme = Scheme::cnab2;
    Vec eu, eo, et;
};

void write_checkpoint(const std::string& path, const State& s, const PhysParams& p,
                      const Stepper* stepper = nullptr);
Checkpoint read_checkpoint(const std::string& path);

/// Rebuilds a State on the plan's bases; throws if domain/truncation differ.
State restore_state(const Checkpoint& ck, const DealiasPlan& plan);
/// Injects saved history into a stepper of the same scheme.
void restore_history(const Checkpoint& ck, Stepper& st);

}  // namespace micropolar
