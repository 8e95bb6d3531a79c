#include "bulkedge/rep.hpp"

#include <bit>
#include <cstdint>
#include <fstream>

namespace bulkedge {

LatticeGeometry LatticeGeometry::open(std::vector<long> L, int nu) {
    LatticeGeometry g;
    g.d = int(L.size());
    g.bc.assign(g.d, Axis::Open);
    g.offset.assign(g.d, 0);
    g.twist.assign(g.d, 0.0);
    g.L = std::move(L);
    g.nu = nu;
    return g;
}

LatticeGeometry LatticeGeometry::periodic(std::vector<long> L, int nu) {
    auto g = open(std::move(L), nu);
    g.bc.assign(g.d, Axis::Periodic);
    return g;
}

std::size_t LatticeGeometry::sites() const {
    std::size_t n = 1;
    for (long l : L) n *= std::size_t(l);
    return n;
}

std::vector<long> LatticeGeometry::site(std::size_t s) const {
    std::vector<long> x(d);
    for (int j = 0; j < d; ++j) {
        x[j] = long(s % std::size_t(L[j]));
        s /= std::size_t(L[j]);
    }
    return x;
}

std::size_t LatticeGeometry::site_index(const std::vector<long>& x) const {
    std::size_t s = 0, stride = 1;
    for (int j = 0; j < d; ++j) {
        s += std::size_t(x[j]) * stride;
        stride *= std::size_t(L[j]);
    }
    return s;
}

std::vector<long> LatticeGeometry::absolute(const std::vector<long>& x) const {
    std::vector<long> y(d);
    for (int j = 0; j < d; ++j) y[j] = x[j] + offset[j];
    return y;
}

bool LatticeGeometry::any_periodic() const {
    for (auto b : bc)
        if (b == Axis::Periodic) return true;
    return false;
}

void LatticeGeometry::validate() const {
    if (d < 1) throw ConfigError("geometry: d must be positive");
    if (int(L.size()) != d || int(bc.size()) != d || int(offset.size()) != d || int(twist.size()) != d)
        throw ConfigError("geometry: per-axis fields must have length d");
    for (long l : L)
        if (l < 1) throw ConfigError("geometry: sizes must be positive");
    if (nu < 1) throw ConfigError("geometry: nu must be positive");
}

void check_flux_quantization(const Cocycle& c, const LatticeGeometry& g) {
    if (c.q <= 1) return;
    // Wrapping along axis j is single valued when every phase chi_i (i < j) is L_j-periodic in x_j.
    for (int j = 0; j < g.d; ++j) {
        if (g.bc[j] != Axis::Periodic) continue;
        for (int i = 0; i < j; ++i)
            if ((c.p[i][j] * g.L[j]) % c.q != 0)
                throw ConfigError("flux " + std::to_string(c.p[i][j]) + "/" + std::to_string(c.q) +
                                  " not quantized on periodic axis " + std::to_string(j + 1) + " of length " +
                                  std::to_string(g.L[j]));
    }
}

double default_origin(const LatticeGeometry& g, int j) { return double(g.offset[j]) + 0.5 * double(g.L[j] - 1); }

LatticeOperator position_operator(int j, const LatticeGeometry& g, std::optional<double> origin) {
    if (j < 1 || j > g.d) throw std::out_of_range("position_operator: axis out of range");
    if (g.bc[j - 1] == Axis::Periodic) throw ConfigError("position operator undefined on a periodic axis");
    double o = origin ? *origin : default_origin(g, j - 1);
    LatticeOperator op{g, CMat::Zero(g.dim(), g.dim()), true};
    for (std::size_t s = 0; s < g.sites(); ++s) {
        double v = double(g.site(s)[j - 1] + g.offset[j - 1]) - o;
        for (int a = 0; a < g.nu; ++a) op.m(s * g.nu + a, s * g.nu + a) = v;
    }
    return op;
}

std::vector<std::size_t> half_space_indices(const LatticeGeometry& g, long s) {
    std::vector<std::size_t> idx;
    for (std::size_t site = 0; site < g.sites(); ++site)
        if (g.site(site)[g.d - 1] <= s)
            for (int a = 0; a < g.nu; ++a) idx.push_back(site * g.nu + a);
    return idx;
}

LatticeOperator half_space_compress(const LatticeOperator& op, long s) {
    const auto& g = op.geom;
    if (g.bc[g.d - 1] != Axis::Open) throw ConfigError("half-space compression needs an open last axis");
    if (s < 0 || s >= g.L[g.d - 1]) throw std::out_of_range("half-space depth outside the lattice");
    auto idx = half_space_indices(g, s);
    LatticeOperator r;
    r.geom = g;
    r.geom.L[g.d - 1] = s + 1;
    r.geom.half_space = true;
    r.m = op.m(idx, idx);
    r.hermitian = op.hermitian;
    return r;
}

CMat boundary_layer(const LatticeGeometry& g) {
    CMat p = CMat::Zero(g.dim(), g.dim());
    for (std::size_t s = 0; s < g.sites(); ++s)
        if (g.site(s)[g.d - 1] == 0)
            for (int a = 0; a < g.nu; ++a) p(s * g.nu + a, s * g.nu + a) = 1.0;
    return p;
}

namespace {

void put_u64(std::ofstream& f, std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap64(v);
    f.write(reinterpret_cast<const char*>(&v), 8);
}

void put_f64(std::ofstream& f, double x) {
    std::uint64_t v = std::bit_cast<std::uint64_t>(x);
    put_u64(f, v);
}

std::uint64_t get_u64(std::ifstream& f) {
    std::uint64_t v = 0;
    f.read(reinterpret_cast<char*>(&v), 8);
    if (!f) throw std::runtime_error("import_binary: truncated file");
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap64(v);
    return v;
}

}  // namespace

void export_binary(const LatticeOperator& op, const std::string& path, bool complex_field) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    put_u64(f, std::uint64_t(op.m.rows()));
    put_u64(f, std::uint64_t(op.m.cols()));
    put_u64(f, complex_field ? 1 : 0);
    for (Eigen::Index i = 0; i < op.m.rows(); ++i)
        for (Eigen::Index j = 0; j < op.m.cols(); ++j) {
            put_f64(f, op.m(i, j).real());
            if (complex_field) put_f64(f, op.m(i, j).imag());
        }
}

CMat import_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    auto rows = get_u64(f), cols = get_u64(f), field = get_u64(f);
    CMat m(rows, cols);
    for (std::uint64_t i = 0; i < rows; ++i)
        for (std::uint64_t j = 0; j < cols; ++j) {
            double re = std::bit_cast<double>(get_u64(f));
            double im = field ? std::bit_cast<double>(get_u64(f)) : 0.0;
            m(i, j) = cplx(re, im);
        }
    return m;
}

}  // namespace bulkedge
