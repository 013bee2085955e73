// Geodesic and Hamiltonian flows: ODE right-hand sides built from the
// Christoffel fields, a fixed-step RK4 integrator, parallel transport along
// parametrized curves, and the equations of motion on the extended
// half-plane for the linear Hamiltonian with a kappa term.
#ifndef SJG_DYNAMICS_HPP
#define SJG_DYNAMICS_HPP

#include <array>

#include "sjg/berry.hpp"
#include "sjg/connections.hpp"
#include "sjg/integrate.hpp"

namespace sjg {

struct DomainExit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> x;  // chart points
  std::vector<std::vector<double>> v;  // velocities
  bool exited = false;                 // halted before t_max at the last in-domain state
};

// u'' ^i = -Gamma^i_{jk} v^j v^k
std::vector<double> geodesic_rhs(const RealMetric& rm, std::span<const double> x,
                                 std::span<const double> v);

// z'' ^b = -Gamma^b_{ac} zdot^a zdot^c over the complex pairs of the chart
std::vector<cplx> complex_geodesic_rhs(const HermitianMetric& hm, std::span<const double> x,
                                       std::span<const cplx> v);

double metric_speed(const RealMetric& rm, std::span<const double> x,
                    std::span<const double> v);

// classical RK4, fixed step; a step whose stages or result leave the chart
// domain is rejected and the trajectory halts at the last in-domain state
Trajectory integrate_geodesic(const RealMetric& rm, std::span<const double> x0,
                              std::span<const double> v0, double t_max,
                              double step = 1e-3);

// same integrator driven through the holomorphic Christoffels; the point is
// carried in the real chart slots, the velocity per complex pair
Trajectory integrate_complex_geodesic(const HermitianMetric& hm, std::span<const double> x0,
                                      std::span<const cplx> v0, double t_max,
                                      double step = 1e-3);

enum class TransportKind { vector, one_form };

// lambda' ^a + Gamma^a_{b i} u' ^i lambda^b = 0 along c (one-form components
// pick up the opposite sign); throws DomainExit if the curve leaves the chart
std::vector<double> parallel_transport(const RealMetric& rm, const Curve& c,
                                       std::span<const double> lam0,
                                       TransportKind kind = TransportKind::vector,
                                       double step = 1e-3);

// linear Hamiltonian coefficients plus an arbitrary kappa term; h is a field
// of the single variable kappa and may be null (h = 0)
struct HamiltonianSpec {
  EnergyCoeffs coeffs;
  ScalarField h;
};

// total energy H(q,p) + H(x,y) + h(kappa) at a state (x, y, q, p, kappa)
double extended_energy(const HamiltonianSpec& hs, std::span<const double> s,
                       const ModelParams& mp);

// time derivatives (x', y', q', p', kappa') at a state (x, y, q, p, kappa)
std::array<double, 5> hamilton_eom_extended(const HamiltonianSpec& hs,
                                            std::span<const double> s,
                                            const ModelParams& mp);

// the kappa equation comes in two printed forms: the compact line used by
// hamilton_eom_extended and an expanded line; `expanded` reproduces the
// latter verbatim so the disagreement between the two can be measured
struct KappaDotForms {
  double primary = 0.0;
  double expanded = 0.0;
};

KappaDotForms kappa_dot_forms(const HamiltonianSpec& hs, std::span<const double> s,
                              const ModelParams& mp);

Trajectory integrate_flow(const HamiltonianSpec& hs, std::span<const double> s0,
                          double t_max, const ModelParams& mp, double step = 1e-3);

}  // namespace sjg

#endif
