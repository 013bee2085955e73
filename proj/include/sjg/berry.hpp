// Berry connections and phases: the generic derivation from a Kahler
// potential, the closed forms on each space, coherent-state kernels,
// dA_B = -omega residuals, and Stokes/holonomy loop values.
#ifndef SJG_BERRY_HPP
#define SJG_BERRY_HPP

#include <functional>

#include "sjg/charts.hpp"
#include "sjg/config.hpp"
#include "sjg/forms.hpp"
#include "sjg/integrate.hpp"
#include "sjg/metrics.hpp"

namespace sjg {

// A_B = (i/2) sum_a (d_a f dz_a - dbar_a f dzbar_a), expanded over the
// real slots of the chart; coefficients are real for real-valued f
Form berry_connection(const ScalarField& f, const Chart& ch);

// omega = i sum h_{a bbar} dz_a ^ dzbar_b expanded over real slots
Form kahler_two_form(const HermitianMetric& hm);

// printed closed forms, keyed by space id:
//   D1, X1, S2, CP1..CP3, Gr{nm}{p,m}, DJ1, XJ1, XJ1_eta, XJ1_real
Form closed_form_berry(const std::string& space, const ModelParams& mp);
std::vector<std::string> closed_form_berry_ids();
std::string closed_form_berry_chart(const std::string& space);

// potential id -> Berry connection of that potential
Form berry_of_potential(const std::string& potential_id, const ModelParams& mp);

// max coefficient of d(A_B) + omega at x, both derived from the potential
double d_berry_residual(const std::string& potential_id, std::span<const double> x,
                        const ModelParams& mp);

struct LoopPhase {
  double loop = 0.0;     // contour integral of A_B
  double surface = 0.0;  // Stokes value, integral of dA_B over the bounded patch
};

LoopPhase berry_phase_loop(const Form& a, const Curve& c, const Surface& s,
                           LineBundleConvention conv = LineBundleConvention::minus_i,
                           const Quadrature& q = {});

// counterclockwise boundary / patch of [q0,q1] x [p0,p1] in slots (iq, ip),
// remaining coordinates held at `base`; integrate the curve with a panel
// count divisible by 4 so the corners fall on panel boundaries
Curve rect_curve(std::vector<double> base, int iq, int ip, double q0, double q1,
                 double p0, double p1);
Surface rect_surface(std::vector<double> base, int iq, int ip, double q0, double q1,
                     double p0, double p1);

// reproducing kernels K(zbar, z'); points are chart coordinates
struct CSKernel {
  std::string space;
  std::string chart;
  int rdim = 0;
  std::function<cplx(std::span<const double>, std::span<const double>)> K;
};

// kernel ids: hot (DJ1), disk (D1), sphere (S2), Gr{nm}{p,m}
CSKernel cs_kernel(const std::string& id, const ModelParams& mp);
cplx cs_kernel_eval(const std::string& id, std::span<const double> a,
                    std::span<const double> b, const ModelParams& mp);

// A_B from the kernel diagonal, -Im <e|d|e>/(e,e) route
Form berry_from_kernel(const CSKernel& kern, const Chart& ch);

// linear Hamiltonian coefficients in the group generators
struct EnergyCoeffs {
  double a = 0.0, b = 0.0, c = 0.0, m = 0.0, n = 0.0;
};

// energy function on (x, y, q, p), split H(q,p) + H(x,y)
double energy_function(const EnergyCoeffs& ec, std::span<const double> x,
                       const ModelParams& mp);
// closed-form gradient (dH/dx, dH/dy, dH/dq, dH/dp)
std::array<double, 4> energy_gradient(const EnergyCoeffs& ec, std::span<const double> x,
                                      const ModelParams& mp);

}  // namespace sjg

#endif
