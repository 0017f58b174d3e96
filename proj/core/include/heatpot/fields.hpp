#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heatpot/geometry.hpp"

namespace heatpot {

// Time and space Hoelder exponents, both in (0, 1).
struct AnisotropicExponents {
  double alpha = 0.5;  // time
  double beta = 0.5;   // space

  void validate() const;
};

// A density f(t, x) with the metadata the potential operators and norm
// estimators need. Time-independent fields ignore t by construction; fields
// with support_start = 0 vanish for all t <= 0 (zero-before-zero convention
// used by the initial-boundary value problems).
class ScalarField {
 public:
  using Eval = std::function<double(double, const Vec&)>;
  using GradEval = std::function<Vec(double, const Vec&)>;

  ScalarField() = default;
  ScalarField(std::string name, Eval eval);

  static constexpr double kFullRange =
      -std::numeric_limits<double>::infinity();

  double operator()(double t, const Vec& x) const { return eval_(t, x); }

  const std::string& name() const { return name_; }
  double support_start() const { return support_start_; }
  bool time_independent() const { return time_independent_; }
  bool supported() const { return std::isfinite(support_start_); }

  const std::optional<AnisotropicExponents>& claimed_exponents() const {
    return claimed_exponents_;
  }

  bool has_gradient() const { return static_cast<bool>(gradient_); }
  Vec gradient(double t, const Vec& x) const;

  bool has_time_derivative() const { return static_cast<bool>(time_deriv_); }
  double time_derivative(double t, const Vec& x) const;

  // Builder-style setters returning *this for chaining.
  ScalarField& with_support_start(double t0);
  ScalarField& mark_time_independent();
  ScalarField& with_claimed_exponents(const AnisotropicExponents& e);
  ScalarField& with_gradient(GradEval g);
  ScalarField& with_time_derivative(Eval g);

 private:
  std::string name_ = "unnamed";
  Eval eval_;
  double support_start_ = kFullRange;
  bool time_independent_ = false;
  std::optional<AnisotropicExponents> claimed_exponents_;
  GradEval gradient_;
  Eval time_deriv_;
};

// --- closed density catalog -------------------------------------------------
//
// Every density the CLI and the verification campaigns can use comes from
// this catalog: named analytic families with parameters, so that gradients
// and time derivatives are exact. There is no expression parser.

ScalarField zero_field();
ScalarField constant_field(double value);

// c * |x - z|^p, time-independent.
ScalarField radial_power_field(double c, double p, const Vec& z = {0, 0, 0});

// x_i, time-independent.
ScalarField coordinate_field(int i);

// c * exp(-|x - z|^2 / w^2), time-independent.
ScalarField space_bump_field(double c, double w, const Vec& z = {0, 0, 0});

// x_1 * (a - |x|^2), time-independent and sign-changing.
ScalarField sign_poly_field(double a);

// max(t,0)^p * prod_i sin(k pi x_i), supported at 0. Smooth for p >= 2.
ScalarField tpow_sin_field(double p, double k, int n);

// max(t,0)^p * prod_i cos(k pi x_i), supported at 0.
ScalarField tpow_cos_field(double p, double k, int n);

// max(t,0)^p * exp(-|x - z|^2 / w^2), supported at 0.
ScalarField tpow_bump_field(double p, double w, const Vec& z = {0, 0, 0});

// t * x_1, full range, smooth.
ScalarField t_linear_coordinate_field();

// sqrt(|t|), space-constant; the 1/2-Hoelder calibration field.
ScalarField sqrt_abs_t_field();

// |t - t0|^gamma, space-constant; over-exponent divergence probe.
ScalarField abs_tpower_field(double gamma, double t0);

// |x_1|^(1 + gamma); gradient is (1+gamma)|x_1|^gamma sign(x_1).
ScalarField abs_xpower_field(double gamma);

// Densities of the manufactured solver cases (see solver module).
ScalarField mms_density_1d_sine();
ScalarField mms_density_1d_cosine();
ScalarField mms_density_2d_sine();

// CLI-facing construction: name plus numeric parameters. Throws on unknown
// names or missing parameters.
ScalarField make_catalog_field(const std::string& name,
                               const std::map<std::string, double>& params,
                               int dimension);
std::vector<std::string> catalog_field_names();

}  // namespace heatpot
