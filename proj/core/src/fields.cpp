#include "heatpot/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heatpot {

namespace {
constexpr double kPi = std::numbers::pi;

double tplus(double t) { return t > 0.0 ? t : 0.0; }
}  // namespace

void AnisotropicExponents::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument(
        "AnisotropicExponents: alpha and beta must lie in (0, 1)");
  }
}

ScalarField::ScalarField(std::string name, Eval eval)
    : name_(std::move(name)), eval_(std::move(eval)) {
  if (!eval_) {
    throw std::invalid_argument("ScalarField: evaluator must be callable");
  }
}

Vec ScalarField::gradient(double t, const Vec& x) const {
  if (!gradient_) {
    throw std::logic_error("ScalarField '" + name_ + "': no analytic gradient");
  }
  return gradient_(t, x);
}

double ScalarField::time_derivative(double t, const Vec& x) const {
  if (!time_deriv_) {
    throw std::logic_error("ScalarField '" + name_ +
                           "': no analytic time derivative");
  }
  return time_deriv_(t, x);
}

ScalarField& ScalarField::with_support_start(double t0) {
  support_start_ = t0;
  return *this;
}

ScalarField& ScalarField::mark_time_independent() {
  time_independent_ = true;
  return *this;
}

ScalarField& ScalarField::with_claimed_exponents(
    const AnisotropicExponents& e) {
  e.validate();
  claimed_exponents_ = e;
  return *this;
}

ScalarField& ScalarField::with_gradient(GradEval g) {
  gradient_ = std::move(g);
  return *this;
}

ScalarField& ScalarField::with_time_derivative(Eval g) {
  time_deriv_ = std::move(g);
  return *this;
}

ScalarField zero_field() {
  ScalarField f("zero", [](double, const Vec&) { return 0.0; });
  f.mark_time_independent()
      .with_gradient([](double, const Vec&) { return Vec{0, 0, 0}; })
      .with_time_derivative([](double, const Vec&) { return 0.0; });
  return f;
}

ScalarField constant_field(double value) {
  ScalarField f("constant", [value](double, const Vec&) { return value; });
  f.mark_time_independent()
      .with_gradient([](double, const Vec&) { return Vec{0, 0, 0}; })
      .with_time_derivative([](double, const Vec&) { return 0.0; });
  return f;
}

ScalarField radial_power_field(double c, double p, const Vec& z) {
  ScalarField f("radial_power",
                [c, p, z](double, const Vec& x) {
                  const double r = dist(x, z);
                  return c * std::pow(r, p);
                });
  f.mark_time_independent().with_time_derivative(
      [](double, const Vec&) { return 0.0; });
  if (p >= 2.0) {
    f.with_gradient([c, p, z](double, const Vec& x) {
      const Vec d = sub(x, z);
      const double r = norm(d);
      if (r == 0.0) return Vec{0, 0, 0};
      return scale(d, c * p * std::pow(r, p - 2.0));
    });
  }
  return f;
}

ScalarField coordinate_field(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("coordinate_field: bad axis");
  ScalarField f("coordinate", [i](double, const Vec& x) { return x[i]; });
  f.mark_time_independent()
      .with_gradient([i](double, const Vec&) {
        Vec g{0, 0, 0};
        g[i] = 1.0;
        return g;
      })
      .with_time_derivative([](double, const Vec&) { return 0.0; });
  return f;
}

ScalarField space_bump_field(double c, double w, const Vec& z) {
  if (!(w > 0.0)) throw std::invalid_argument("space_bump_field: width <= 0");
  ScalarField f("space_bump",
                [c, w, z](double, const Vec& x) {
                  const double r2 = dot(sub(x, z), sub(x, z));
                  return c * std::exp(-r2 / (w * w));
                });
  f.mark_time_independent()
      .with_gradient([c, w, z](double, const Vec& x) {
        const Vec d = sub(x, z);
        const double r2 = dot(d, d);
        const double v = c * std::exp(-r2 / (w * w));
        return scale(d, -2.0 * v / (w * w));
      })
      .with_time_derivative([](double, const Vec&) { return 0.0; });
  return f;
}

ScalarField sign_poly_field(double a) {
  ScalarField f("sign_poly",
                [a](double, const Vec& x) {
                  return x[0] * (a - dot(x, x));
                });
  f.mark_time_independent()
      .with_gradient([a](double, const Vec& x) {
        Vec g = scale(x, -2.0 * x[0]);
        g[0] += a - dot(x, x);
        return g;
      })
      .with_time_derivative([](double, const Vec&) { return 0.0; });
  return f;
}

namespace {

double sin_prod(double k, int n, const Vec& x) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= std::sin(k * kPi * x[i]);
  return v;
}

Vec sin_prod_grad(double k, int n, const Vec& x) {
  Vec g{0, 0, 0};
  for (int i = 0; i < n; ++i) {
    double v = k * kPi * std::cos(k * kPi * x[i]);
    for (int j = 0; j < n; ++j) {
      if (j != i) v *= std::sin(k * kPi * x[j]);
    }
    g[i] = v;
  }
  return g;
}

double cos_prod(double k, int n, const Vec& x) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= std::cos(k * kPi * x[i]);
  return v;
}

Vec cos_prod_grad(double k, int n, const Vec& x) {
  Vec g{0, 0, 0};
  for (int i = 0; i < n; ++i) {
    double v = -k * kPi * std::sin(k * kPi * x[i]);
    for (int j = 0; j < n; ++j) {
      if (j != i) v *= std::cos(k * kPi * x[j]);
    }
    g[i] = v;
  }
  return g;
}

}  // namespace

ScalarField tpow_sin_field(double p, double k, int n) {
  if (!(p >= 1.0)) throw std::invalid_argument("tpow_sin_field: p < 1");
  ScalarField f("tpow_sin",
                [p, k, n](double t, const Vec& x) {
                  return std::pow(tplus(t), p) * sin_prod(k, n, x);
                });
  f.with_support_start(0.0)
      .with_gradient([p, k, n](double t, const Vec& x) {
        return scale(sin_prod_grad(k, n, x), std::pow(tplus(t), p));
      })
      .with_time_derivative([p, k, n](double t, const Vec& x) {
        if (t <= 0.0) return 0.0;
        return p * std::pow(t, p - 1.0) * sin_prod(k, n, x);
      });
  return f;
}

ScalarField tpow_cos_field(double p, double k, int n) {
  if (!(p >= 1.0)) throw std::invalid_argument("tpow_cos_field: p < 1");
  ScalarField f("tpow_cos",
                [p, k, n](double t, const Vec& x) {
                  return std::pow(tplus(t), p) * cos_prod(k, n, x);
                });
  f.with_support_start(0.0)
      .with_gradient([p, k, n](double t, const Vec& x) {
        return scale(cos_prod_grad(k, n, x), std::pow(tplus(t), p));
      })
      .with_time_derivative([p, k, n](double t, const Vec& x) {
        if (t <= 0.0) return 0.0;
        return p * std::pow(t, p - 1.0) * cos_prod(k, n, x);
      });
  return f;
}

ScalarField tpow_bump_field(double p, double w, const Vec& z) {
  if (!(p >= 1.0) || !(w > 0.0)) {
    throw std::invalid_argument("tpow_bump_field: need p >= 1 and w > 0");
  }
  auto bump = [w, z](const Vec& x) {
    const Vec d = sub(x, z);
    return std::exp(-dot(d, d) / (w * w));
  };
  ScalarField f("tpow_bump",
                [p, bump](double t, const Vec& x) {
                  return std::pow(tplus(t), p) * bump(x);
                });
  f.with_support_start(0.0)
      .with_gradient([p, w, z, bump](double t, const Vec& x) {
        const Vec d = sub(x, z);
        return scale(d, -2.0 / (w * w) * std::pow(tplus(t), p) * bump(x));
      })
      .with_time_derivative([p, bump](double t, const Vec& x) {
        if (t <= 0.0) return 0.0;
        return p * std::pow(t, p - 1.0) * bump(x);
      });
  return f;
}

ScalarField t_linear_coordinate_field() {
  ScalarField f("t_linear_x1",
                [](double t, const Vec& x) { return t * x[0]; });
  f.with_gradient([](double t, const Vec&) { return Vec{t, 0, 0}; })
      .with_time_derivative([](double, const Vec& x) { return x[0]; });
  return f;
}

ScalarField sqrt_abs_t_field() {
  ScalarField f("sqrt_abs_t",
                [](double t, const Vec&) { return std::sqrt(std::abs(t)); });
  f.with_gradient([](double, const Vec&) { return Vec{0, 0, 0}; });
  return f;
}

ScalarField abs_tpower_field(double gamma, double t0) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("abs_tpower_field: gamma outside (0, 1)");
  }
  ScalarField f("abs_tpower",
                [gamma, t0](double t, const Vec&) {
                  return std::pow(std::abs(t - t0), gamma);
                });
  f.with_gradient([](double, const Vec&) { return Vec{0, 0, 0}; });
  return f;
}

ScalarField abs_xpower_field(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("abs_xpower_field: gamma outside (0, 1)");
  }
  ScalarField f("abs_xpower",
                [gamma](double, const Vec& x) {
                  return std::pow(std::abs(x[0]), 1.0 + gamma);
                });
  f.mark_time_independent()
      .with_gradient([gamma](double, const Vec& x) {
        const double s = x[0] >= 0.0 ? 1.0 : -1.0;
        return Vec{(1.0 + gamma) * std::pow(std::abs(x[0]), gamma) * s, 0, 0};
      })
      .with_time_derivative([](double, const Vec&) { return 0.0; });
  return f;
}

// Densities reverse-engineered so that d_t u - Lap u = d_t f for the
// manufactured solutions u = t sin(pi x), t cos(pi x), t sin sin.
ScalarField mms_density_1d_sine() {
  ScalarField f("mms_dirichlet_1d",
                [](double t, const Vec& x) {
                  const double tp = tplus(t);
                  return (tp + 0.5 * kPi * kPi * tp * tp) * std::sin(kPi * x[0]);
                });
  f.with_support_start(0.0)
      .with_gradient([](double t, const Vec& x) {
        const double tp = tplus(t);
        return Vec{(tp + 0.5 * kPi * kPi * tp * tp) * kPi * std::cos(kPi * x[0]),
                   0, 0};
      })
      .with_time_derivative([](double t, const Vec& x) {
        if (t <= 0.0) return 0.0;
        return (1.0 + kPi * kPi * t) * std::sin(kPi * x[0]);
      });
  return f;
}

ScalarField mms_density_1d_cosine() {
  ScalarField f("mms_neumann_1d",
                [](double t, const Vec& x) {
                  const double tp = tplus(t);
                  return (tp + 0.5 * kPi * kPi * tp * tp) * std::cos(kPi * x[0]);
                });
  f.with_support_start(0.0)
      .with_gradient([](double t, const Vec& x) {
        const double tp = tplus(t);
        return Vec{-(tp + 0.5 * kPi * kPi * tp * tp) * kPi * std::sin(kPi * x[0]),
                   0, 0};
      })
      .with_time_derivative([](double t, const Vec& x) {
        if (t <= 0.0) return 0.0;
        return (1.0 + kPi * kPi * t) * std::cos(kPi * x[0]);
      });
  return f;
}

ScalarField mms_density_2d_sine() {
  ScalarField f("mms_dirichlet_2d",
                [](double t, const Vec& x) {
                  const double tp = tplus(t);
                  return (tp + kPi * kPi * tp * tp) * std::sin(kPi * x[0]) *
                         std::sin(kPi * x[1]);
                });
  f.with_support_start(0.0)
      .with_gradient([](double t, const Vec& x) {
        const double tp = tplus(t);
        const double a = tp + kPi * kPi * tp * tp;
        return Vec{a * kPi * std::cos(kPi * x[0]) * std::sin(kPi * x[1]),
                   a * kPi * std::sin(kPi * x[0]) * std::cos(kPi * x[1]), 0};
      })
      .with_time_derivative([](double t, const Vec& x) {
        if (t <= 0.0) return 0.0;
        return (1.0 + 2.0 * kPi * kPi * t) * std::sin(kPi * x[0]) *
               std::sin(kPi * x[1]);
      });
  return f;
}

namespace {

double require(const std::map<std::string, double>& params,
               const std::string& key, const std::string& name) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument("density '" + name + "': missing parameter '" +
                                key + "'");
  }
  return it->second;
}

double get_or(const std::map<std::string, double>& params,
              const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

ScalarField make_catalog_field(const std::string& name,
                               const std::map<std::string, double>& params,
                               int dimension) {
  if (name == "zero") return zero_field();
  if (name == "constant") return constant_field(require(params, "value", name));
  if (name == "radial_power") {
    return radial_power_field(get_or(params, "scale", 1.0),
                              require(params, "power", name));
  }
  if (name == "coordinate") {
    return coordinate_field(static_cast<int>(get_or(params, "axis", 0.0)));
  }
  if (name == "space_bump") {
    return space_bump_field(get_or(params, "scale", 1.0),
                            get_or(params, "width", 0.5));
  }
  if (name == "sign_poly") return sign_poly_field(get_or(params, "a", 1.0));
  if (name == "tpow_sin") {
    return tpow_sin_field(get_or(params, "power", 2.0),
                          get_or(params, "wavenumber", 1.0), dimension);
  }
  if (name == "tpow_cos") {
    return tpow_cos_field(get_or(params, "power", 2.0),
                          get_or(params, "wavenumber", 1.0), dimension);
  }
  if (name == "tpow_bump") {
    return tpow_bump_field(get_or(params, "power", 2.0),
                           get_or(params, "width", 0.5));
  }
  if (name == "t_linear_x1") return t_linear_coordinate_field();
  if (name == "sqrt_abs_t") return sqrt_abs_t_field();
  if (name == "abs_tpower") {
    return abs_tpower_field(get_or(params, "gamma", 0.2),
                            get_or(params, "t0", 0.5));
  }
  if (name == "abs_xpower") {
    return abs_xpower_field(get_or(params, "gamma", 0.5));
  }
  if (name == "mms_dirichlet_1d") return mms_density_1d_sine();
  if (name == "mms_neumann_1d") return mms_density_1d_cosine();
  if (name == "mms_dirichlet_2d") return mms_density_2d_sine();
  throw std::invalid_argument("unknown catalog density '" + name + "'");
}

std::vector<std::string> catalog_field_names() {
  return {"zero",        "constant",    "radial_power", "coordinate",
          "space_bump",  "sign_poly",   "tpow_sin",     "tpow_cos",
          "tpow_bump",   "t_linear_x1", "sqrt_abs_t",   "abs_tpower",
          "abs_xpower",  "mms_dirichlet_1d", "mms_neumann_1d",
          "mms_dirichlet_2d"};
}

}  // namespace heatpot
