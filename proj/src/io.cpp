#include "sgf/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

namespace sgf {
namespace {

void put_f64(std::ostream& out, double v) {
    // On-disk format is little endian; this writes host doubles directly and
    // is correct on every platform we target (x86-64, aarch64).
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

double get_f64(std::istream& in) {
    double v;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

}  // namespace

void write_series_csv(const std::string& path, const std::vector<EnergyReport>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "t,tau,b1,b2,b3,E0,E1,E2,E3,E4,E5,E6,err_L1,err_L2,err_Linf,err_vel_L2\n";
    out << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.t << ',' << r.tau << ',' << r.b[0] << ',' << r.b[1] << ',' << r.b[2] << ','
            << r.E0 << ',' << r.E1 << ',' << r.E2 << ',' << r.E3 << ',' << r.E4 << ',' << r.E5
            << ',' << r.E6 << ',' << r.err_L1 << ',' << r.err_L2 << ',' << r.err_Linf << ','
            << r.err_vel_L2 << '\n';
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_snapshot(const std::string& path, const VectorField& w, double t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write("SGF3", 4);
    std::uint32_t n = static_cast<std::uint32_t>(w.grid.n);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    put_f64(out, w.grid.box_length);
    put_f64(out, t);
    for (int c = 0; c < 3; ++c)
        out.write(reinterpret_cast<const char*>(w.c[c].data()),
                  static_cast<std::streamsize>(w.c[c].size() * sizeof(double)));
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot '" + path + "'");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "SGF3", 4) != 0)
        throw std::runtime_error("'" + path + "' is not a snapshot file (bad magic)");
    std::uint32_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    double L = get_f64(in);
    double t = get_f64(in);
    if (!in) throw std::runtime_error("snapshot '" + path + "' is truncated");
    Grid3 g = make_grid(static_cast<int>(n), L);
    Snapshot snap{VectorField(g), t};
    for (int c = 0; c < 3; ++c)
        in.read(reinterpret_cast<char*>(snap.w.c[c].data()),
                static_cast<std::streamsize>(g.size() * sizeof(double)));
    if (!in) throw std::runtime_error("snapshot '" + path + "' is truncated");
    return snap;
}

void write_identity_report(const std::string& path, const std::vector<IdentityReport>& reports) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << std::setprecision(17);
    for (const auto& r : reports)
        out << "name=" << r.name << " lhs=" << r.lhs << " rhs=" << r.rhs
            << " rel_err=" << r.rel_err << " tol=" << r.tol
            << " status=" << (r.pass ? "pass" : "fail") << '\n';
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace sgf
