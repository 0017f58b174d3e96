#include "heatpot/holder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heatpot/rng.hpp"

namespace heatpot {

void SamplingGrid::validate() const {
  if (times.size() < 2 || points.size() < 2) {
    throw std::invalid_argument(
        "SamplingGrid: need at least 2 times and 2 points");
  }
  if (!std::is_sorted(times.begin(), times.end())) {
    throw std::invalid_argument("SamplingGrid: times must be sorted");
  }
  if (pair_budget < 1) {
    throw std::invalid_argument("SamplingGrid: pair_budget must be positive");
  }
}

SamplingGrid uniform_grid(const Domain& domain, int nt, int np, double t0,
                          double t1) {
  if (nt < 2 || np < 2 || !(t1 > t0)) {
    throw std::invalid_argument("uniform_grid: bad layout");
  }
  SamplingGrid grid;
  grid.times.resize(nt);
  for (int i = 0; i < nt; ++i) {
    grid.times[i] = t0 + (t1 - t0) * i / (nt - 1);
  }
  const int n = domain.dimension();
  if (domain.kind() == DomainKind::Box) {
    std::array<int, 3> id{0, 0, 0};
    while (true) {
      Vec x{0, 0, 0};
      for (int i = 0; i < n; ++i) {
        x[i] = domain.lo()[i] +
               (domain.hi()[i] - domain.lo()[i]) * id[i] / (np - 1);
      }
      grid.points.push_back(x);
      int i = 0;
      for (; i < n; ++i) {
        if (++id[i] < np) break;
        id[i] = 0;
      }
      if (i == n) break;
    }
  } else {
    // Tensor grid over the bounding box, filtered to the closed ball.
    std::array<int, 3> id{0, 0, 0};
    while (true) {
      Vec x{0, 0, 0};
      for (int i = 0; i < n; ++i) {
        x[i] = domain.center()[i] - domain.radius() +
               2.0 * domain.radius() * id[i] / (np - 1);
      }
      if (dist(x, domain.center()) <= domain.radius() * (1.0 + 1e-12)) {
        grid.points.push_back(x);
      }
      int i = 0;
      for (; i < n; ++i) {
        if (++id[i] < np) break;
        id[i] = 0;
      }
      if (i == n) break;
    }
    if (grid.points.size() < 2) {
      throw std::invalid_argument("uniform_grid: ball grid too coarse");
    }
  }
  return grid;
}

double HolderEstimate::total() const {
  return sup_norm + time_seminorm + space_seminorm;
}

double HolderEstimate::schauder_total() const {
  double s = sup_norm + time_seminorm;
  for (const auto& g : gradient) s += g.total();
  return s;
}

namespace {

// Shared worker: value table plus budgeted pair maxima. `values[it][ip]`.
struct ValueTable {
  std::vector<std::vector<double>> values;
  const SamplingGrid* grid = nullptr;
};

ValueTable tabulate(const ScalarField& field, const SamplingGrid& grid) {
  ValueTable table;
  table.grid = &grid;
  table.values.resize(grid.times.size());
  for (size_t it = 0; it < grid.times.size(); ++it) {
    table.values[it].resize(grid.points.size());
    for (size_t ip = 0; ip < grid.points.size(); ++ip) {
      const double v = field(grid.times[it], grid.points[ip]);
      if (!std::isfinite(v)) {
        throw std::runtime_error("holder estimate: field value not finite at t=" +
                                 std::to_string(grid.times[it]));
      }
      table.values[it][ip] = v;
    }
  }
  return table;
}

double tabulated_sup(const ValueTable& t) {
  double s = 0.0;
  for (const auto& row : t.values) {
    for (double v : row) s = std::max(s, std::abs(v));
  }
  return s;
}

// max over (t1 < t2, x) of |u(t1,x) - u(t2,x)| / |t1 - t2|^alpha.
double time_quotient_max(const ValueTable& table, double alpha, long budget,
                         std::uint64_t seed, long* pairs_out) {
  const auto& times = table.grid->times;
  const size_t nt = times.size(), np = table.grid->points.size();
  const long n_time_pairs = static_cast<long>(nt * (nt - 1) / 2);
  const long total = n_time_pairs * static_cast<long>(np);
  double best = 0.0;
  if (total <= budget) {
    *pairs_out = total;
    for (size_t i = 0; i < nt; ++i) {
      for (size_t j = i + 1; j < nt; ++j) {
        const double dt = times[j] - times[i];
        if (dt <= 0.0) continue;
        const double denom = std::pow(dt, alpha);
        for (size_t p = 0; p < np; ++p) {
          best = std::max(
              best, std::abs(table.values[i][p] - table.values[j][p]) / denom);
        }
      }
    }
    return best;
  }
  *pairs_out = budget;
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (long k = 0; k < budget; ++k) {
    const size_t i = rng.next_index(nt);
    size_t j = rng.next_index(nt - 1);
    if (j >= i) ++j;
    const double dt = std::abs(times[j] - times[i]);
    if (dt <= 0.0) continue;
    const size_t p = rng.next_index(np);
    best = std::max(best, std::abs(table.values[i][p] - table.values[j][p]) /
                              std::pow(dt, alpha));
  }
  return best;
}

// max over (t, x1 != x2) of |u(t,x1) - u(t,x2)| / |x1 - x2|^beta.
double space_quotient_max(const ValueTable& table, double beta, long budget,
                          std::uint64_t seed, long* pairs_out) {
  const auto& points = table.grid->points;
  const size_t nt = table.grid->times.size(), np = points.size();
  const long n_space_pairs = static_cast<long>(np * (np - 1) / 2);
  const long total = n_space_pairs * static_cast<long>(nt);
  double best = 0.0;
  if (total <= budget) {
    *pairs_out = total;
    for (size_t p = 0; p < np; ++p) {
      for (size_t q = p + 1; q < np; ++q) {
        const double dx = dist(points[p], points[q]);
        if (dx <= 0.0) continue;
        const double denom = std::pow(dx, beta);
        for (size_t i = 0; i < nt; ++i) {
          best = std::max(
              best, std::abs(table.values[i][p] - table.values[i][q]) / denom);
        }
      }
    }
    return best;
  }
  *pairs_out = budget;
  Rng rng(seed ^ 0xbf58476d1ce4e5b9ull);
  for (long k = 0; k < budget; ++k) {
    const size_t p = rng.next_index(np);
    size_t q = rng.next_index(np - 1);
    if (q >= p) ++q;
    const double dx = dist(points[p], points[q]);
    if (dx <= 0.0) continue;
    const size_t i = rng.next_index(nt);
    best = std::max(best, std::abs(table.values[i][p] - table.values[i][q]) /
                              std::pow(dx, beta));
  }
  return best;
}

double grid_diameter(const SamplingGrid& grid) {
  Vec lo = grid.points.front(), hi = grid.points.front();
  for (const Vec& p : grid.points) {
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  return std::max(dist(lo, hi), 1e-12);
}

}  // namespace

HolderEstimate estimate_anisotropic_norm(const ScalarField& field,
                                         const AnisotropicExponents& exps,
                                         const SamplingGrid& grid) {
  exps.validate();
  grid.validate();
  const ValueTable table = tabulate(field, grid);
  HolderEstimate est;
  est.sup_norm = tabulated_sup(table);
  est.time_seminorm = time_quotient_max(table, exps.alpha, grid.pair_budget,
                                        grid.rng_seed, &est.time_pairs);
  est.space_seminorm = space_quotient_max(table, exps.beta, grid.pair_budget,
                                          grid.rng_seed, &est.space_pairs);
  return est;
}

HolderEstimate estimate_parabolic_schauder_norm(const ScalarField& field,
                                                double alpha,
                                                const SamplingGrid& grid) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("schauder estimate: alpha outside (0, 1)");
  }
  grid.validate();
  const ValueTable table = tabulate(field, grid);
  HolderEstimate est;
  est.sup_norm = tabulated_sup(table);
  est.time_seminorm =
      time_quotient_max(table, 0.5 * (1.0 + alpha), grid.pair_budget,
                        grid.rng_seed, &est.time_pairs);

  // Gradient components measured in C^{alpha/2; alpha}. Infer the dimension
  // from the spread of the grid points.
  int n = 1;
  for (int i = 1; i < 3; ++i) {
    for (const Vec& p : grid.points) {
      if (p[i] != grid.points.front()[i]) {
        n = std::max(n, i + 1);
        break;
      }
    }
  }

  const bool fallback = !field.has_gradient();
  est.gradient_fallback = fallback;
  const double fd_step = 1e-5 * grid_diameter(grid);
  const AnisotropicExponents grad_exps{0.5 * alpha, alpha};
  for (int i = 0; i < n; ++i) {
    ScalarField component(
        field.name() + "_d" + std::to_string(i + 1),
        [&field, i, fd_step, fallback](double t, const Vec& x) {
          if (!fallback) return field.gradient(t, x)[i];
          Vec xp = x, xm = x;
          xp[i] += fd_step;
          xm[i] -= fd_step;
          return (field(t, xp) - field(t, xm)) / (2.0 * fd_step);
        });
    est.gradient.push_back(
        estimate_anisotropic_norm(component, grad_exps, grid));
  }
  return est;
}

double quotient_norm_upper_bound(
    const std::vector<ScalarField>& representatives,
    const AnisotropicExponents& exps, const SamplingGrid& grid) {
  if (representatives.empty()) {
    throw std::invalid_argument(
        "quotient_norm_upper_bound: no representatives");
  }
  grid.validate();

  // Spot-check: every representative must differ from the first by a
  // time-independent field.
  const ScalarField& ref = representatives.front();
  const double scale_tol =
      1e-9 * std::max(1.0, std::abs(ref(grid.times.front(),
                                        grid.points.front())));
  for (size_t k = 1; k < representatives.size(); ++k) {
    const ScalarField& g = representatives[k];
    for (const Vec& x : {grid.points.front(), grid.points.back()}) {
      const double d0 = g(grid.times.front(), x) - ref(grid.times.front(), x);
      for (double t : {grid.times[grid.times.size() / 2], grid.times.back()}) {
        const double d = g(t, x) - ref(t, x);
        if (std::abs(d - d0) > scale_tol + 1e-9 * std::abs(d0)) {
          throw std::invalid_argument(
              "quotient_norm_upper_bound: representatives '" + ref.name() +
              "' and '" + g.name() + "' do not differ by a time-independent "
              "field");
        }
      }
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (const ScalarField& g : representatives) {
    best = std::min(best, estimate_anisotropic_norm(g, exps, grid).total());
  }
  return best;
}

}  // namespace heatpot
