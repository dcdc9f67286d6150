#pragma once

#include <string>
#include <vector>

#include "sgf/diagnostics.hpp"
#include "sgf/grid.hpp"
#include "sgf/identities.hpp"

namespace sgf {

// Time-series CSV with the fixed column set
// t,tau,b1,b2,b3,E0..E6,err_L1,err_L2,err_Linf,err_vel_L2 (full precision).
void write_series_csv(const std::string& path, const std::vector<EnergyReport>& rows);

// Binary snapshot: magic "SGF3", little-endian u32 n, f64 box_length, f64 t,
// then components w1,w2,w3 as n^3 f64 each, x index fastest.
void write_snapshot(const std::string& path, const VectorField& w, double t);
struct Snapshot {
    VectorField w;
    double t;
};
Snapshot read_snapshot(const std::string& path);

// One record per line: name=... lhs=... rhs=... rel_err=... tol=... status=...
void write_identity_report(const std::string& path, const std::vector<IdentityReport>& reports);

}  // namespace sgf
