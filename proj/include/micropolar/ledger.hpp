#pragma once

#include <micropolar/types.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace micropolar {

/// One measurement along a trajectory. Column order is fixed and mirrors the
/// CSV layout exactly.
struct LedgerRow {
    Real t;
    Real u_l2sq;      // |u|^2
    Real u_h1sq;      // ||u||^2
    Real u_a2sq;      // |A_S u|^2
    Real om_l2sq;     // |omega|^2
    Real om_h1sq;     // ||omega||^2
    Real om_a2sq;     // |A omega|^2
    Real th_l2sq;     // |theta|^2
    Real th_h1sq;     // ||theta||^2
    Real th_a2sq;     // |A theta|^2
    Real y;           // |u|^2 + |omega|^2 + |theta|^2
    Real y_strong;    // ||u||^2 + ||omega||^2 + ||theta||^2
};

struct EnergyLedger {
    std::vector<LedgerRow> rows;

    void push(const LedgerRow& r);  // enforces strictly increasing t, finiteness
    bool empty() const { return rows.empty(); }
    Real t_end() const { return rows.empty() ? 0.0 : rows.back().t; }

    /// Fixed 17-significant-digit CSV with a header line; diffs cleanly.
    void write_csv(std::ostream& os) const;
    void write_csv_file(const std::string& path) const;
    static EnergyLedger read_csv(std::istream& is);
    static EnergyLedger read_csv_file(const std::string& path);
};

inline constexpr const char* ledger_csv_header =
    "t,u_l2sq,u_h1sq,u_a2sq,om_l2sq,om_h1sq,om_a2sq,th_l2sq,th_h1sq,th_a2sq,y,y_strong";

}  // namespace micropolar
