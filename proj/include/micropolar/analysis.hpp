#pragma once

#include <micropolar/checkpoint.hpp>
#include <micropolar/random.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace micropolar {

/// Constants of the weak-solution energy inequality
///   y' <= c3 y - c2 alpha,   y = |u|^2+|omega|^2+|theta|^2,
///   c2 = min{(1-N^2) Pr, 2 Pr / L^2, 1},
///   c3 = max{Ra^2 Pr / (1-N^2), 2 D^2, 2}.
struct DerivedConstants {
    Real c2;
    Real c3;
};
DerivedConstants derive_c2_c3(const PhysParams& p);

struct InequalityEntry {
    std::string name;
    Real max_violation = 0.0;  // signed; > tol means the bound is broken
    Real t_at_max = 0.0;
    std::optional<Real> t_first_violation;  // first ledger row crossing the bound
    Real tol = 0.0;
    bool asserted = false;  // participates in overall pass/fail
    bool pass = true;
};

struct InequalityReport {
    std::vector<InequalityEntry> entries;
    bool all_pass() const;  // over asserted entries only
    void write_text(std::ostream& os) const;
};

/// Empirical constants of the interpolation inequalities (k1 Poincare,
/// k2/k3 Gagliardo-Nirenberg, k4 Ladyzhenskaya, k5 gradient-L4, k6/k7 Agmon).
struct KConstants {
    Real k1, k2, k3, k4, k5, k6, k7;
};

/// Weak Gronwall envelope along a ledger:
///   y(s) <= e^{c3 s} y(0) (1+tol),  int_0^T y_strong <= (e^{c3 T}/c2) y(0) (1+tol),
/// trapezoid quadrature on the rows. tol = 1e-6 + 10*dt (dt inferred from row
/// spacing when not given). Entries assert only when Ra >= 1; the envelope
/// with the k1^2-corrected c3 is always reported unasserted.
InequalityReport check_gronwall_weak(const EnergyLedger& led, const PhysParams& p,
                                     Real tol = 1e-6, Real dt = 0.0);

/// Strong-solution Gronwall envelopes rebuilt from ledger columns:
///   ||u||^2+||omega||^2 against beta(t) = C1(|u|^2||u||^2 + |u|^2||omega||^2 + 1),
///                               alpha(t) = C1 |theta|^2,
///   ||theta||^2 against beta(t) = C2(|u|^2||u||^2 + ||omega||^2|A omega|^2),
///                       alpha(t) = C2(||omega||^2 + |u|^2),
/// with C1, C2 assembled from the Young-inequality bookkeeping and the
/// empirical k4, k5, k7. Report-only: nothing is asserted.
InequalityReport check_strong_differential(const EnergyLedger& led, const PhysParams& p,
                                           const KConstants& k);

struct ConstantEstimate {
    std::string name;
    Real value = 0.0;
    int trials = 0;
    std::string maximizer;          // human-readable descriptor
    Vec maximizer_coef;             // coefficients of the best field
    std::optional<Real> reference;  // exact value when known (k1)
    Real alignment_v1 = 0.0;        // |<f, v1>| / |f|, meaningful for k1
};

/// Supremum of the defining ratio over all basis elements, `trials` random
/// band-limited fields, and a deterministic hill climb from the best.
ConstantEstimate estimate_constant(const std::string& name, int trials, const Resolution& res,
                                   const DomainSpec& dom = {}, std::uint64_t seed = 12345);
KConstants estimate_all_constants(int trials, const Resolution& res, const DomainSpec& dom = {},
                                  std::uint64_t seed = 12345);

struct DependenceReport {
    Real delta;
    Real sup_diff;   // sup_t sqrt(|du|^2+|domega|^2+|dtheta|^2)
    Real sup_ratio;  // sup_diff / delta
    Real rate_K;     // fitted exponent: diff ~ C e^{K t}
    Real fit_C;
    bool uniqueness_condition;  // N^2 L^2 < 1
    std::uint64_t seed;
    std::vector<Real> times;
    std::vector<Real> diffs;
    void write_text(std::ostream& os) const;
    void write_csv(std::ostream& os) const;
};

/// Paired runs from s0 and s0 + delta * (random unit-H1 perturbation).
DependenceReport continuous_dependence_experiment(const DealiasPlan& plan, const Couplings& coup,
                                                  const State& s0, Real delta, const PhysParams& p,
                                                  const StepperConfig& cfg, std::uint64_t seed);

struct ConvergenceReport {
    std::vector<int> resolutions;
    std::vector<Real> sup_y;  // sup_t y per run
    /// Successive-truncation trajectory gaps sup_t |y_{r_{i+1}}(t) - y_{r_i}(t)|;
    /// spectral convergence shows as strict decrease along the list.
    std::vector<Real> diffs;
    bool strictly_decreasing;
    std::uint64_t seed;
    void write_text(std::ostream& os) const;
    void write_csv(std::ostream& os) const;
};

/// Runs the same preset data through increasing truncations. The initial data
/// is drawn once at the coarsest resolution and injected into the finer bases,
/// so successive runs differ only by truncation.
ConvergenceReport galerkin_convergence_study(Preset kind, const PhysParams& p,
                                             const StepperConfig& cfg, const DomainSpec& dom,
                                             const std::vector<int>& resolutions,
                                             std::uint64_t seed);

/// Direct spectral H^3 norm: sum over modes of c^2 * sum_{a+b<=3} k^{2a} (m pi)^{2b}.
Real h3_direct(const ScalarField& f);

/// Coefficient injection into a finer basis (same domain, larger truncation).
ScalarField embed(const ScalarField& f, const ScalarBasis& fine);
SolenoidalField embed(const SolenoidalField& u, const SolenoidalBasis& fine);

}  // namespace micropolar
