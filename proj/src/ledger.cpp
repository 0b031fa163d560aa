#include <micropolar/ledger.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace micropolar {

namespace {

std::array<Real, 12> row_values(const LedgerRow& r) {
    return {r.t,        r.u_l2sq,  r.u_h1sq,  r.u_a2sq, r.om_l2sq, r.om_h1sq,
            r.om_a2sq, r.th_l2sq, r.th_h1sq, r.th_a2sq, r.y,       r.y_strong};
}

}  // namespace

void EnergyLedger::push(const LedgerRow& r) {
    const auto v = row_values(r);
    for (int i = 0; i < 12; ++i)
        if (!std::isfinite(v[i])) throw std::invalid_argument("ledger: non-finite entry");
    for (int i = 1; i < 12; ++i)
        if (v[i] < 0.0) throw std::invalid_argument("ledger: negative norm entry");
    if (!rows.empty() && r.t <= rows.back().t)
        throw std::invalid_argument("ledger: time must strictly increase");
    rows.push_back(r);
}

void EnergyLedger::write_csv(std::ostream& os) const {
    os << ledger_csv_header << "\n";
    char buf[40];
    for (const LedgerRow& r : rows) {
        const auto v = row_values(r);
        for (int i = 0; i < 12; ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
            os << buf << (i == 11 ? '\n' : ',');
        }
    }
}

void EnergyLedger::write_csv_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_csv(os);
}

EnergyLedger EnergyLedger::read_csv(std::istream& is) {
    EnergyLedger led;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("ledger CSV: empty stream");
    if (line != ledger_csv_header)
        throw std::runtime_error("ledger CSV: unexpected header: " + line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Real v[12];
        std::string cell;
        for (int i = 0; i < 12; ++i) {
            if (!std::getline(ls, cell, ',')) throw std::runtime_error("ledger CSV: short row");
            v[i] = std::stod(cell);
        }
        led.push({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11]});
    }
    return led;
}

EnergyLedger EnergyLedger::read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_csv(is);
}

}  // namespace micropolar
