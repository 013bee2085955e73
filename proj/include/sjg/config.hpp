// Shared numeric configuration, model parameters, and error types.
#ifndef SJG_CONFIG_HPP
#define SJG_CONFIG_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace sjg {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// single knob set shared by derivative checks and integral comparisons
struct Tolerances {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  bool close(double err, double scale) const {
    return err <= abs_tol + rel_tol * std::abs(scale);
  }
};

enum class TwoFormConvention {
  riemannian,  // omega from g via the complex structure
  minus_i_h    // omega = -i h_{ab} dz^a ^ dzbar^b bookkeeping
};

enum class LineBundleConvention {
  minus_i,     // curvature Omega_L = -i omega
  minus_two_i  // Omega_L = -2i omega (doubles loop phases)
};

// positive model parameters (k, nu, delta) with the derived constants
// used throughout the closed-form tables
struct ModelParams {
  double k = 1.0;
  double nu = 1.0;
  double delta = 1.0;

  ModelParams() = default;
  ModelParams(double k_, double nu_, double delta_ = 1.0) : k(k_), nu(nu_), delta(delta_) {
    if (!(k > 0.0) || !(nu > 0.0) || !(delta > 0.0))
      throw DomainError("model parameters must be positive");
  }

  double alpha() const { return k / 2.0; }      // weight of the hyperbolic block
  double gamma() const { return nu; }
  double eps() const { return 2.0 * nu / k; }
  double lambda() const { return nu / (2.0 * k); }
  double iota() const { return k / nu; }
  double tau() const { return delta / nu; }
};

struct RunConfig {
  Tolerances tol;
  int quad_nodes = 64;
  int quad_panels = 1;
  double ode_step = 1e-3;
  unsigned long long seed = 0;
  int samples = 200;
  TwoFormConvention two_form = TwoFormConvention::riemannian;
  LineBundleConvention line_bundle = LineBundleConvention::minus_i;
};

}  // namespace sjg

#endif
