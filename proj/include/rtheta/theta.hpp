#pragma once

#include <cstdint>
#include <vector>

#include "rtheta/lattice.hpp"
#include "rtheta/matrix.hpp"
#include "rtheta/siegel.hpp"

namespace rtheta {

// Half-integer characteristic m = (eps; delta) with eps, delta in {0,1}^g.
class Characteristic {
  public:
    Characteristic() = default;
    Characteristic(std::vector<uint8_t> eps, std::vector<uint8_t> delta);
    static Characteristic zero(int g);

    int genus() const { return static_cast<int>(eps_.size()); }
    const std::vector<uint8_t>& eps() const { return eps_; }
    const std::vector<uint8_t>& delta() const { return delta_; }
    int parity_sign() const;  // (-1)^(eps . delta)
    bool is_even() const { return parity_sign() == 1; }

    bool operator==(const Characteristic& o) const {
        return eps_ == o.eps_ && delta_ == o.delta_;
    }
    bool operator<(const Characteristic& o) const {
        if (eps_ != o.eps_) return eps_ < o.eps_;
        return delta_ < o.delta_;
    }

  private:
    std::vector<uint8_t> eps_, delta_;
};

int parity(const Characteristic& m);

// Directional-derivative specification D(k1, ..., kN).  Directions are scaled
// to unit Euclidean norm on construction; the scalar factor (product of the
// original norms, with phases kept inside the stored unit vectors) is applied
// to evaluation results, so D(c k) = c D(k) holds exactly.
class DerivativeSpec {
  public:
    DerivativeSpec() = default;
    explicit DerivativeSpec(const std::vector<std::vector<cplx>>& directions);

    int order() const { return static_cast<int>(dirs_.size()); }
    const std::vector<std::vector<cplx>>& directions() const { return dirs_; }
    double scale() const { return scale_; }

  private:
    std::vector<std::vector<cplx>> dirs_;
    double scale_ = 1.0;
};

// Precomputed per-tau evaluation state.  Immutable once built; any number of
// evaluations may share one context concurrently.
struct RiemannContext {
    ComplexMatrix tau_original;
    ComplexMatrix tau_reduced;
    SymplecticTransform gamma;
    bool reduction_stalled = false;

    RealMatrix x_part, y_part;  // Re, Im of tau_reduced
    RealMatrix chol;            // T with T^t T = y_part
    RealMatrix y_inv;
    double rho = 0.0;        // shortest vector of sqrt(pi) T Z^g
    double tinv_norm = 0.0;  // |T^{-1}|_2
    double eps_target = 0.0;
    int nderivs = 0;

    std::vector<double> radii;           // per derivative order 0..nderivs
    std::vector<EllipsoidCache> caches;  // matching radii

    int genus() const { return tau_reduced.rows(); }
};

RiemannContext build_context(const ComplexMatrix& tau, double eps_target = 1e-12,
                             int nderivs = 0, bool use_siegel = true,
                             long long ellipsoid_cap = 10000000);

// z = z0 + p + tau q with z0 = a + tau b, a,b in [0,1)^g.  `exponent` is the
// w with theta(z) = e^{2 pi i w} theta(z0) for the zero characteristic; for
// characteristic (eps; delta) an extra sign (-1)^(eps.p + delta.q) applies.
struct ReducedArgument {
    std::vector<cplx> z0;
    std::vector<long long> int_shift;  // p
    std::vector<long long> tau_shift;  // q
    cplx exponent;                     // w
    std::vector<double> a, b;          // fractional parts, b = Y^{-1} Im z0
};

ReducedArgument reduce_argument(const std::vector<cplx>& z, const RiemannContext& ctx);

// theta = mantissa * exp(exponent); split to keep the growth factor
// e^{pi y^t Y^{-1} y} (plus the quasi-periodicity prefactor) away from
// overflow.  The truncation error promise is eps_target * |e^exponent|
// times the derivative scaling.
struct ThetaParts {
    cplx mantissa;
    cplx exponent;
    cplx combined() const;
};

ThetaParts theta_split(const std::vector<cplx>& z, const RiemannContext& ctx,
                       const Characteristic& m, const DerivativeSpec& derivs);

cplx theta(const std::vector<cplx>& z, const RiemannContext& ctx,
           const Characteristic& m, const DerivativeSpec& derivs);
cplx theta(const std::vector<cplx>& z, const RiemannContext& ctx,
           const Characteristic& m);
cplx theta(const std::vector<cplx>& z, const RiemannContext& ctx);

// Direct summation over the integer box [-r, r]^g; the reference oracle.
cplx theta_naive(const std::vector<cplx>& z, const ComplexMatrix& tau,
                 const Characteristic& m, const DerivativeSpec& derivs,
                 int box_radius);

}  // namespace rtheta
