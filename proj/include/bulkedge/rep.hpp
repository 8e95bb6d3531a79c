#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bulkedge/crossed.hpp"
#include "bulkedge/linalg.hpp"
#include "bulkedge/toeplitz.hpp"

namespace bulkedge {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Axis { Open, Periodic };

// Box of sites x with 0 <= x_j < L_j (local); absolute position is x + offset.
// Index order: internal slot fastest, then x_1, ..., x_d.
struct LatticeGeometry {
    int d = 0;
    std::vector<long> L;
    std::vector<Axis> bc;
    std::vector<long> offset;
    std::vector<double> twist;  // boundary phase for periodic axes
    int nu = 1;
    bool half_space = false;    // last axis is a truncated half-space x_d <= depth - 1

    static LatticeGeometry open(std::vector<long> L, int nu);
    static LatticeGeometry periodic(std::vector<long> L, int nu);

    std::size_t sites() const;
    std::size_t dim() const { return sites() * std::size_t(nu); }
    std::vector<long> site(std::size_t s) const;
    std::size_t site_index(const std::vector<long>& x) const;
    std::vector<long> absolute(const std::vector<long>& x) const;
    bool any_periodic() const;
    void validate() const;
};

struct LatticeOperator {
    LatticeGeometry geom;
    CMat m;
    bool hermitian = false;
};

void check_flux_quantization(const Cocycle& c, const LatticeGeometry& g);

namespace detail {

// Apply pi(S^n) to delta_x (local coordinates); false if the walk leaves an open box.
template <class S>
bool walk(const Cocycle& coc, const LatticeGeometry& g, const MultiIndex& n, std::vector<long>& y, cplx& phase) {
    for (int i = g.d - 1; i >= 0; --i) {
        long steps = n[i];
        long dir = steps > 0 ? 1 : -1;
        for (long s = 0; s != steps; s += dir) {
            if (dir > 0) {
                phase *= ScalarTraits<cplx>::root(coc.q, coc.chi_exp(i, g.absolute(y)));
                y[i] += 1;
                if (y[i] >= g.L[i]) {
                    if (g.bc[i] == Axis::Open) return false;
                    y[i] = 0;
                    phase *= std::polar(1.0, g.twist[i]);
                }
            } else {
                y[i] -= 1;
                if (y[i] < 0) {
                    if (g.bc[i] == Axis::Open) return false;
                    y[i] = g.L[i] - 1;
                    phase *= std::polar(1.0, -g.twist[i]);
                }
                phase *= std::conj(ScalarTraits<cplx>::root(coc.q, coc.chi_exp(i, g.absolute(y))));
            }
        }
    }
    return true;
}

template <class S>
void represent_site(const CrossedElement<S>& a, std::size_t omega_pt, const LatticeGeometry& g, std::size_t s,
                    CMat& m) {
    const auto& ctx = *a.context();
    const int nu = g.nu;
    auto x = g.site(s);
    std::size_t pt = ctx.omega->shift(omega_pt, g.absolute(x));
    for (const auto& [n, b] : a.terms()) {
        std::vector<long> y = x;
        cplx phase = 1.0;
        if (!walk<S>(ctx.cocycle, g, n, y, phase)) continue;
        std::size_t t = g.site_index(y);
        const auto& bm = b.at(pt);
        for (int r = 0; r < nu; ++r)
            for (int c = 0; c < nu; ++c) {
                const auto& v = bm(r, c);
                if (ScalarTraits<S>::is_zero(v)) continue;
                m(t * nu + r, s * nu + c) += phase * ScalarTraits<S>::to_complex(v);
            }
    }
}

}  // namespace detail

// pi_omega(a) on the box: pi(g) delta_x = g(shift(omega, x)) delta_x,
// pi(S_i) delta_x = zeta^{chi_i(x)} delta_{x + e_i}; open axes truncate, periodic axes wrap.
template <class S>
LatticeOperator represent(const CrossedElement<S>& a, std::size_t omega_pt, const LatticeGeometry& g,
                          Exec exec = Exec::Parallel) {
    const auto& ctx = *a.context();
    if (ctx.d != g.d) throw StructuralError("represent: algebra and geometry dimensions differ");
    if (ctx.nu != g.nu) throw StructuralError("represent: internal rank differs from geometry");
    g.validate();
    check_flux_quantization(ctx.cocycle, g);
    LatticeOperator op{g, CMat::Zero(g.dim(), g.dim()), false};
    const long ns = long(g.sites());
    if (exec == Exec::Parallel) {
        // each site writes only its own column block
#pragma omp parallel for schedule(static)
        for (long s = 0; s < ns; ++s) detail::represent_site(a, omega_pt, g, std::size_t(s), op.m);
    } else {
        for (long s = 0; s < ns; ++s) detail::represent_site(a, omega_pt, g, std::size_t(s), op.m);
    }
    op.hermitian = a.is_self_adjoint();
    return op;
}

LatticeOperator position_operator(int j, const LatticeGeometry& g, std::optional<double> origin = std::nullopt);

// Default origin: centre of the box, half-integer when L_j is even.
double default_origin(const LatticeGeometry& g, int j);

LatticeOperator half_space_compress(const LatticeOperator& op, long s);

// Indices of the sites with x_d <= s.
std::vector<std::size_t> half_space_indices(const LatticeGeometry& g, long s);

// Boundary layer projection x_d == 0 and truncated isometry along the last axis.
CMat boundary_layer(const LatticeGeometry& g);

template <class S>
LatticeOperator represent_toeplitz(const ToeplitzElement<S>& t, std::size_t omega_pt, const LatticeGeometry& g) {
    if (g.bc.back() != Axis::Open) throw ConfigError("Toeplitz representation needs an open last axis");
    const auto& ctx = t.context();
    CMat st = represent(CrossedElement<S>::generator(ctx, ctx->d - 1), omega_pt, g).m;
    CMat sts = st.adjoint();
    CMat p = boundary_layer(g);
    auto power = [](const CMat& x, long k) {
        CMat r = CMat::Identity(x.rows(), x.cols());
        for (long i = 0; i < k; ++i) r = x * r;
        return r;
    };
    LatticeOperator op{g, CMat::Zero(g.dim(), g.dim()), false};
    for (const auto& [w, c] : t.terms()) {
        CMat wm = w.kind == Word::Iso ? (w.a >= 0 ? power(st, w.a) : power(sts, -w.a))
                                      : CMat(power(st, w.a) * p * power(sts, w.b));
        op.m += wm * represent(c, omega_pt, g).m;
    }
    return op;
}

// Little-endian binary export: uint64 rows, cols, field (0 real, 1 complex), then row-major doubles.
void export_binary(const LatticeOperator& op, const std::string& path, bool complex_field = true);
CMat import_binary(const std::string& path);

}  // namespace bulkedge
