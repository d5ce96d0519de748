// Copyright 2026 The rotovort Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <mutex>
#include <random>

#include <boost/math/tools/minima.hpp>
#include <fftw3.h>

#include "rotovort/error.hpp"
#include "rotovort/gp_field.hpp"

namespace rotovort {

namespace {

constexpr double kPi = std::numbers::pi;

// Per-ring face coefficients. Angular faces: w |z b - conj(z) a|^2 with
// z = 1/(r dtheta) - i Omega r / 4. Radial faces: k |b - a|^2 with
// k = r_{i+1/2} dr dtheta / dr^2.
struct Stencil {
  std::vector<double> w;       // node weight on ring i
  std::vector<cplx> z;         // angular face factor on ring i
  std::vector<double> k;       // radial face (i, i+1); size n_r - 1
  std::vector<double> centrif; // -Omega^2 r_i^2 / 4

  Stencil(const PolarGrid& g, double Omega) {
    const double dr = g.dr(), dt = g.dtheta();
    w.resize(g.n_r);
    z.resize(g.n_r);
    centrif.resize(g.n_r);
    k.resize(g.n_r - 1);
    for (int i = 0; i < g.n_r; ++i) {
      const double r = g.r(i);
      w[i] = g.weight(i);
      z[i] = cplx(1.0 / (r * dt), -0.25 * Omega * r);
      centrif[i] = -0.25 * Omega * Omega * r * r;
    }
    for (int i = 0; i + 1 < g.n_r; ++i) k[i] = (i + 1) * dr * dr * dt / (dr * dr);
  }
};

void check_finite(const ComplexField2D& f, const char* who) {
  for (const auto& v : f.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorKind::Numeric, std::string(who) + ": non-finite field value");
  }
}

void check_shape(const ComplexField2D& f, const char* who) {
  f.grid.validate();
  if (f.values.size() != f.grid.size()) fail(ErrorKind::Argument, std::string(who) + ": field size does not match grid");
}

struct QuadParts {
  double kinetic = 0.0;
  double centrifugal = 0.0;
  double combined = 0.0;  // kinetic + centrifugal, summed without cancellation error
};

// Per ring, with a = Re z, b = -Im z, D = psi' - psi, S = psi' + psi:
//   |z psi' - conj(z) psi|^2 = a^2 |D|^2 + b^2 |S|^2 - 2ab Im(D conj S)
// and b^2 sum |S|^2 = 4 b^2 sum |psi|^2 - b^2 sum |D|^2, whose first part is
// minus the centrifugal term. The combined sum below therefore vanishes
// identically for a constant field.

// Quadratic part of the functional; optionally accumulates its unweighted
// gradient (dQ = Re sum conj(G) d).
QuadParts quadratic(const PolarGrid& g, const Stencil& st, const cplx* psi, cplx* G) {
  const int nr = g.n_r, nt = g.n_theta;
  QuadParts q;
  for (int i = 0; i < nr; ++i) {
    const cplx* row = psi + g.index(i, 0);
    cplx* grow = G ? G + g.index(i, 0) : nullptr;
    const cplx z = st.z[i], zc = std::conj(z);
    const double w = st.w[i];
    const double a = z.real(), b = -z.imag();
    double comb = 0.0, cen = 0.0;
    for (int j = 0; j < nt; ++j) {
      const int jn = j + 1 == nt ? 0 : j + 1;
      const cplx D = row[jn] - row[j], S = row[jn] + row[j];
      comb += (a * a - b * b) * std::norm(D) - 2.0 * a * b * (D.imag() * S.real() - D.real() * S.imag());
      cen += std::norm(row[j]);
      if (grow) {
        const cplx L = z * row[jn] - zc * row[j];
        grow[jn] += 2.0 * w * zc * L;
        grow[j] -= 2.0 * w * z * L;
        grow[j] += 2.0 * w * st.centrif[i] * row[j];
      }
    }
    q.combined += w * comb;
    q.centrifugal += w * st.centrif[i] * cen;
    if (i + 1 < nr) {
      const cplx* up = psi + g.index(i + 1, 0);
      cplx* gup = G ? G + g.index(i + 1, 0) : nullptr;
      const double k = st.k[i];
      double rad = 0.0;
      for (int j = 0; j < nt; ++j) {
        const cplx L = up[j] - row[j];
        rad += std::norm(L);
        if (G) {
          gup[j] += 2.0 * k * L;
          grow[j] -= 2.0 * k * L;
        }
      }
      q.combined += k * rad;
    }
  }
  q.kinetic = q.combined - q.centrifugal;
  return q;
}

double quartic(const PolarGrid& g, const Stencil& st, const cplx* psi, cplx* G, double inv_e2) {
  double sum = 0.0;
  for (int i = 0; i < g.n_r; ++i) {
    const double w = st.w[i];
    const cplx* row = psi + g.index(i, 0);
    cplx* grow = G ? G + g.index(i, 0) : nullptr;
    double ring = 0.0;
    for (int j = 0; j < g.n_theta; ++j) {
      const double n = std::norm(row[j]);
      ring += n * n;
      if (grow) grow[j] += 4.0 * inv_e2 * w * n * row[j];
    }
    sum += w * ring;
  }
  return inv_e2 * sum;
}

EnergyBreakdown assemble(const QuadParts& q, double interaction) {
  EnergyBreakdown e;
  e.kinetic_covariant = q.kinetic;
  e.centrifugal = q.centrifugal;
  e.interaction = interaction;
  e.trap = 0.0;
  e.total = q.combined + interaction;
  return e;
}

double wdot(const PolarGrid& g, const std::vector<double>& w, const cplx* a, const cplx* b) {
  double sum = 0.0;
  for (int i = 0; i < g.n_r; ++i) {
    double ring = 0.0;
    const cplx* ra = a + g.index(i, 0);
    const cplx* rb = b + g.index(i, 0);
    for (int j = 0; j < g.n_theta; ++j) ring += ra[j].real() * rb[j].real() + ra[j].imag() * rb[j].imag();
    sum += w[i] * ring;
  }
  return sum;
}

// Portable uniform double in [0, 1) from the top 53 bits.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

// ---------------------------------------------------------------------------

PolarGrid::PolarGrid(int nr, int nt) : n_r(nr), n_theta(nt) { validate(); }

double PolarGrid::dtheta() const { return 2.0 * kPi / n_theta; }

double PolarGrid::total_weight() const {
  double sum = 0.0;
  for (int i = 0; i < n_r; ++i) sum += weight(i) * n_theta;
  return sum;
}

void PolarGrid::validate() const {
  require(n_r >= 16, "PolarGrid: n_r must be >= 16");
  require(n_theta >= 8 && n_theta % 2 == 0, "PolarGrid: n_theta must be even and >= 8");
}

ComplexField2D::ComplexField2D(PolarGrid g, GpParams p) : grid(g), params(p), values(g.size()) {
  grid.validate();
  require(std::isfinite(p.epsilon) && p.epsilon > 0.0, "ComplexField2D: epsilon must be > 0");
  require(std::isfinite(p.Omega) && p.Omega >= 0.0, "ComplexField2D: Omega must be >= 0");
}

double ComplexField2D::norm_sq() const {
  double sum = 0.0;
  for (int i = 0; i < grid.n_r; ++i) {
    double ring = 0.0;
    for (int j = 0; j < grid.n_theta; ++j) ring += std::norm(at(i, j));
    sum += grid.weight(i) * ring;
  }
  return sum;
}

void ComplexField2D::normalize() {
  const double n = norm_sq();
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorKind::Numeric, "normalize: field has zero or non-finite norm");
  const double s = 1.0 / std::sqrt(n);
  for (auto& v : values) v *= s;
}

double ComplexField2D::inner(const ComplexField2D& a, const ComplexField2D& b) {
  require(a.grid.n_r == b.grid.n_r && a.grid.n_theta == b.grid.n_theta, "inner: grids differ");
  double sum = 0.0;
  for (int i = 0; i < a.grid.n_r; ++i) {
    double ring = 0.0;
    for (int j = 0; j < a.grid.n_theta; ++j) {
      const cplx x = a.at(i, j), y = b.at(i, j);
      ring += x.real() * y.real() + x.imag() * y.imag();
    }
    sum += a.grid.weight(i) * ring;
  }
  return sum;
}

ComplexField2D sample_field(const PolarGrid& grid, GpParams params, const std::function<cplx(double, double)>& f) {
  ComplexField2D out(grid, params);
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) out.at(i, j) = f(grid.r(i), grid.theta(j));
  }
  return out;
}

EnergyBreakdown gp_energy(const ComplexField2D& field) {
  check_shape(field, "gp_energy");
  check_finite(field, "gp_energy");
  const Stencil st(field.grid, field.params.Omega);
  const double inv_e2 = 1.0 / (field.params.epsilon * field.params.epsilon);
  const auto q = quadratic(field.grid, st, field.values.data(), nullptr);
  return assemble(q, quartic(field.grid, st, field.values.data(), nullptr, inv_e2));
}

EnergyBreakdown gp_energy_gradient(const ComplexField2D& field, std::vector<cplx>& grad) {
  check_shape(field, "gp_energy_gradient");
  check_finite(field, "gp_energy_gradient");
  const auto& g = field.grid;
  const Stencil st(g, field.params.Omega);
  const double inv_e2 = 1.0 / (field.params.epsilon * field.params.epsilon);
  grad.assign(g.size(), cplx(0.0, 0.0));
  const auto q = quadratic(g, st, field.values.data(), grad.data());
  const double inter = quartic(g, st, field.values.data(), grad.data(), inv_e2);
  for (int i = 0; i < g.n_r; ++i) {
    const double iw = 1.0 / st.w[i];
    for (int j = 0; j < g.n_theta; ++j) grad[g.index(i, j)] *= iw;
  }
  return assemble(q, inter);
}

std::vector<cplx> apply_gp_hamiltonian(const ComplexField2D& field) {
  std::vector<cplx> h;
  gp_energy_gradient(field, h);
  for (auto& v : h) v *= 0.5;
  return h;
}

Residual gp_residual(const ComplexField2D& field) {
  const auto h = apply_gp_hamiltonian(field);
  const auto& g = field.grid;
  Residual out;
  double nrm = 0.0;
  for (int i = 0; i < g.n_r; ++i) {
    double ring = 0.0, rn = 0.0;
    for (int j = 0; j < g.n_theta; ++j) {
      const cplx p = field.at(i, j), hp = h[g.index(i, j)];
      ring += p.real() * hp.real() + p.imag() * hp.imag();
      rn += std::norm(p);
    }
    out.mu += g.weight(i) * ring;
    nrm += g.weight(i) * rn;
  }
  out.mu /= nrm;
  double res = 0.0;
  for (int i = 0; i < g.n_r; ++i) {
    double ring = 0.0;
    for (int j = 0; j < g.n_theta; ++j) ring += std::norm(h[g.index(i, j)] - out.mu * field.at(i, j));
    res += g.weight(i) * ring;
  }
  out.residual_norm = std::sqrt(res);
  return out;
}

const char* to_string(InitKind k) {
  switch (k) {
    case InitKind::Constant: return "Constant";
    case InitKind::TFPhaseNoise: return "TFPhaseNoise";
    case InitKind::LatticeTrial: return "LatticeTrial";
  }
  return "?";
}

double regularized_tf_density(const Tf2dSolution& tf, double r) {
  const double eta2 = tf.epsilon * tf.epsilon * tf.max_density();
  return tf.density(r) + eta2;
}

ComplexField2D make_initial_field(const PolarGrid& grid, GpParams params, InitKind kind, std::uint64_t seed) {
  ComplexField2D f(grid, params);
  switch (kind) {
    case InitKind::Constant:
      std::fill(f.values.begin(), f.values.end(), cplx(1.0 / std::sqrt(kPi), 0.0));
      break;
    case InitKind::TFPhaseNoise: {
      const auto tf = tf2d_flat(params.epsilon, params.Omega);
      std::mt19937_64 rng(seed);
      for (int i = 0; i < grid.n_r; ++i) {
        const double amp = std::sqrt(regularized_tf_density(tf, grid.r(i)));
        for (int j = 0; j < grid.n_theta; ++j) f.at(i, j) = std::polar(amp, 2.0 * kPi * unit_uniform(rng));
      }
      break;
    }
    case InitKind::LatticeTrial:
      fail(ErrorKind::Unsupported, "make_initial_field: lattice trial states are built by lattice_trial");
  }
  f.normalize();
  return f;
}

// ---------------------------------------------------------------------------
// Vortex census

namespace {

double wrapped(const cplx& a, const cplx& b) { return std::arg(b * std::conj(a)); }

int round_winding(double phase_sum) { return static_cast<int>(std::lround(phase_sum / (2.0 * kPi))); }

}  // namespace

int loop_winding(const ComplexField2D& field, int ring) {
  require(ring >= 0 && ring < field.grid.n_r, "loop_winding: ring out of range");
  const int nt = field.grid.n_theta;
  double sum = 0.0;
  for (int j = 0; j < nt; ++j) sum += wrapped(field.at(ring, j), field.at(ring, (j + 1) % nt));
  return round_winding(sum);
}

VortexCensus detect_vortices(const ComplexField2D& field, const CensusOptions& opts) {
  check_shape(field, "detect_vortices");
  require(opts.density_floor > 0.0 && opts.density_floor < 1.0, "detect_vortices: density_floor must lie in (0, 1)");
  const auto& g = field.grid;
  const int nr = g.n_r, nt = g.n_theta;
  const double dr = g.dr(), dt = g.dtheta();
  double max_rho = 0.0;
  for (const auto& v : field.values) max_rho = std::max(max_rho, std::norm(v));
  const double floor = opts.density_floor * max_rho;
  const double reach = opts.core_radius < 0.0 ? 3.0 * field.params.epsilon : opts.core_radius;

  // Plaquette (i, j) spans rings i, i+1 and angles j, j+1; index nr-1 rows hold
  // nothing. The central polygon (ring 0) is cell id -1.
  auto dense_enough = [&](double x, double y, int i, int j, bool center) {
    if (reach <= 0.0) {
      if (center) {
        for (int jj = 0; jj < nt; ++jj)
          if (std::norm(field.at(0, jj)) <= floor) return false;
        return true;
      }
      const int jn = (j + 1) % nt;
      return std::norm(field.at(i, j)) > floor && std::norm(field.at(i, jn)) > floor && std::norm(field.at(i + 1, j)) > floor &&
             std::norm(field.at(i + 1, jn)) > floor;
    }
    const double rc = std::hypot(x, y);
    const int lo = std::max(0, static_cast<int>(std::floor((rc - reach) / dr - 0.5)));
    const int hi = std::min(nr - 1, static_cast<int>(std::ceil((rc + reach) / dr - 0.5)));
    for (int ii = lo; ii <= hi; ++ii) {
      const double r = g.r(ii);
      for (int jj = 0; jj < nt; ++jj) {
        const double th = jj * dt;
        if (std::hypot(r * std::cos(th) - x, r * std::sin(th) - y) > reach) continue;
        if (std::norm(field.at(ii, jj)) > floor) return true;
      }
    }
    return false;
  };

  struct Cell {
    int i, j;  // i = -1 for the center polygon
    int d;
    double x, y;
  };
  std::vector<Cell> cells;
  {
    const int d = loop_winding(field, 0);
    if (d != 0 && dense_enough(0.0, 0.0, 0, 0, true)) cells.push_back({-1, 0, d, 0.0, 0.0});
  }
  for (int i = 0; i + 1 < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const int jn = (j + 1) % nt;
      // counterclockwise: out along theta = j, across ring i+1, back in, back along ring i
      const double s = wrapped(field.at(i, j), field.at(i + 1, j)) + wrapped(field.at(i + 1, j), field.at(i + 1, jn)) +
                       wrapped(field.at(i + 1, jn), field.at(i, jn)) + wrapped(field.at(i, jn), field.at(i, j));
      const int d = round_winding(s);
      if (d == 0) continue;
      const double r = (i + 1) * dr, th = (j + 0.5) * dt;
      const double x = r * std::cos(th), y = r * std::sin(th);
      if (dense_enough(x, y, i, j, false)) cells.push_back({i, j, d, x, y});
    }
  }

  // Merge same-sign cells that touch (including across theta = 0 and the center).
  const std::size_t n = cells.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t a = 0; a < n; ++a) parent[a] = a;
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto touching = [&](const Cell& a, const Cell& b) {
    if (a.i == -1 || b.i == -1) return (a.i == -1 ? b.i : a.i) == 0;
    if (std::abs(a.i - b.i) > 1) return false;
    const int dj = std::abs(a.j - b.j);
    return std::min(dj, nt - dj) <= 1;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if ((cells[a].d > 0) != (cells[b].d > 0) || !touching(cells[a], cells[b])) continue;
      parent[find(a)] = find(b);
    }
  }
  VortexCensus census;
  std::vector<long> slot(n, -1);
  std::vector<double> wsum;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t root = find(a);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(census.vortices.size());
      census.vortices.push_back({0.0, 0.0, 0});
      wsum.push_back(0.0);
    }
    auto& v = census.vortices[static_cast<std::size_t>(slot[root])];
    const double wt = std::abs(cells[a].d);
    v.x += wt * cells[a].x;
    v.y += wt * cells[a].y;
    v.winding += cells[a].d;
    wsum[static_cast<std::size_t>(slot[root])] += wt;
  }
  for (std::size_t k = 0; k < census.vortices.size(); ++k) {
    census.vortices[k].x /= wsum[k];
    census.vortices[k].y /= wsum[k];
    census.total_winding += census.vortices[k].winding;
  }
  return census;
}

DiamagneticCheck diamagnetic_check(const ComplexField2D& field) {
  check_shape(field, "diamagnetic_check");
  check_finite(field, "diamagnetic_check");
  const auto& g = field.grid;
  const Stencil st(g, field.params.Omega);
  DiamagneticCheck out;
  out.lhs = quadratic(g, st, field.values.data(), nullptr).kinetic;
  const double dt = g.dtheta();
  double rhs = 0.0;
  for (int i = 0; i < g.n_r; ++i) {
    const double h = g.r(i) * dt;
    double ring = 0.0, rad = 0.0;
    for (int j = 0; j < g.n_theta; ++j) {
      const int jn = (j + 1) % g.n_theta;
      const double d = (std::abs(field.at(i, jn)) - std::abs(field.at(i, j))) / h;
      ring += d * d;
      if (i + 1 < g.n_r) {
        const double e = std::abs(field.at(i + 1, j)) - std::abs(field.at(i, j));
        rad += e * e;
      }
    }
    rhs += st.w[i] * ring;
    if (i + 1 < g.n_r) rhs += st.k[i] * rad;
  }
  out.rhs = rhs;
  out.holds = out.lhs >= out.rhs - 1e-9 * out.lhs;
  return out;
}

// ---------------------------------------------------------------------------
// Minimizer

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// P = shift + K in the weighted inner product, K the covariant kinetic
// operator. Angular faces are diagonal in the Fourier modes of theta, radial
// faces couple neighbouring rings, so every mode is one tridiagonal solve.
class KineticPreconditioner {
 public:
  KineticPreconditioner(const PolarGrid& g, const Stencil& st, double shift) : g_(g), w_(st.w), off_(st.k) {
    const int nr = g.n_r, nt = g.n_theta;
    const std::size_t n = g.size();
    cprime_.resize(n);
    inv_den_.resize(n);
    buf_.resize(n);
    std::vector<double> prev_c(nt, 0.0);
    for (int i = 0; i < nr; ++i) {
      const double lower = i > 0 ? off_[i - 1] : 0.0;
      const double upper = i + 1 < nr ? off_[i] : 0.0;
      for (int m = 0; m < nt; ++m) {
        const cplx e = std::polar(1.0, m * g.dtheta());
        const double ang = st.w[i] * std::norm(st.z[i] * e - std::conj(st.z[i]));
        const double diag = shift * st.w[i] + ang + lower + upper;
        const double den = diag - lower * prev_c[m];  // sub-diagonal is -lower
        inv_den_[g.index(i, m)] = 1.0 / den;
        cprime_[g.index(i, m)] = -upper / den;
        prev_c[m] = cprime_[g.index(i, m)];
      }
    }
    const int len = nt;
    auto* data = reinterpret_cast<fftw_complex*>(buf_.data());
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fwd_ = fftw_plan_many_dft(1, &len, nr, data, nullptr, 1, nt, data, nullptr, 1, nt, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_many_dft(1, &len, nr, data, nullptr, 1, nt, data, nullptr, 1, nt, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) fail(ErrorKind::Internal, "minimize_gp: FFTW planning failed");
  }

  ~KineticPreconditioner() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }

  KineticPreconditioner(const KineticPreconditioner&) = delete;
  KineticPreconditioner& operator=(const KineticPreconditioner&) = delete;

  void solve(const cplx* rhs, cplx* out) {
    const int nr = g_.n_r, nt = g_.n_theta;
    for (int i = 0; i < nr; ++i) {
      for (int m = 0; m < nt; ++m) buf_[g_.index(i, m)] = w_[i] * rhs[g_.index(i, m)];
    }
    fftw_execute(fwd_);
    for (int i = 0; i < nr; ++i) {
      cplx* row = &buf_[g_.index(i, 0)];
      const double* inv = &inv_den_[g_.index(i, 0)];
      if (i == 0) {
        for (int m = 0; m < nt; ++m) row[m] *= inv[m];
      } else {
        const cplx* prev = &buf_[g_.index(i - 1, 0)];
        const double lower = off_[i - 1];
        for (int m = 0; m < nt; ++m) row[m] = (row[m] + lower * prev[m]) * inv[m];
      }
    }
    for (int i = nr - 2; i >= 0; --i) {
      cplx* row = &buf_[g_.index(i, 0)];
      const cplx* next = &buf_[g_.index(i + 1, 0)];
      const double* cp = &cprime_[g_.index(i, 0)];
      for (int m = 0; m < nt; ++m) row[m] -= cp[m] * next[m];
    }
    fftw_execute(bwd_);
    const double scale = 1.0 / nt;
    for (std::size_t k = 0; k < buf_.size(); ++k) out[k] = buf_[k] * scale;
  }

 private:
  PolarGrid g_;
  std::vector<double> w_;
  std::vector<double> off_;
  std::vector<double> cprime_;
  std::vector<double> inv_den_;
  std::vector<cplx> buf_;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

struct State {
  EnergyBreakdown e;
  std::vector<cplx> gq;  // unweighted gradient of the quadratic part
  std::vector<cplx> g4;  // unweighted gradient of the interaction
};

void evaluate(const PolarGrid& g, const Stencil& st, double inv_e2, const cplx* psi, State& s) {
  s.gq.assign(g.size(), cplx(0.0, 0.0));
  s.g4.assign(g.size(), cplx(0.0, 0.0));
  const auto q = quadratic(g, st, psi, s.gq.data());
  s.e = assemble(q, quartic(g, st, psi, s.g4.data(), inv_e2));
}

// E(cos t psi + sin t p) for normalized psi and p with Re<psi, p> = 0.
struct GreatCircle {
  double q0, q1, q2;
  double s_aa, s_ab, s_bb, s_ac, s_bc, s_cc;
  double inv_e2;

  double operator()(double t) const {
    const double c = std::cos(t), s = std::sin(t);
    const double c2 = c * c, s2 = s * s, cs = c * s;
    const double quad = c2 * q0 + 2.0 * cs * q1 + s2 * q2;
    const double quart = c2 * c2 * s_aa + 4.0 * c2 * cs * s_ab + c2 * s2 * (4.0 * s_bb + 2.0 * s_ac) + 4.0 * cs * s2 * s_bc +
                         s2 * s2 * s_cc;
    return quad + inv_e2 * quart;
  }
};

double line_minimum(const GreatCircle& phi, double guess) {
  constexpr double kMax = 0.5 * kPi;
  guess = std::clamp(guess, 1e-12, kMax);
  std::vector<double> ts;
  for (int k = -40; k <= 12; ++k) {
    const double t = std::ldexp(guess, k);
    if (t >= kMax) break;
    ts.push_back(t);
  }
  ts.push_back(kMax);
  std::size_t best = 0;
  double fbest = phi(ts[0]);
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double f = phi(ts[k]);
    if (f < fbest) {
      fbest = f;
      best = k;
    }
  }
  const double lo = best == 0 ? 0.0 : ts[best - 1];
  const double hi = best + 1 < ts.size() ? ts[best + 1] : kMax;
  const auto res = boost::math::tools::brent_find_minima(phi, lo, hi, 40);
  return res.second <= fbest ? res.first : ts[best];
}

}  // namespace

MinimizeReport minimize_gp(ComplexField2D& field, const MinimizeOptions& opts) {
  require(std::isfinite(opts.tau) && opts.tau > 0.0, "minimize_gp: tau must be > 0");
  require(std::isfinite(opts.tol) && opts.tol > 0.0, "minimize_gp: tol must be > 0");
  require(opts.max_iters >= 1, "minimize_gp: max_iters must be >= 1");
  require(opts.patience >= 1, "minimize_gp: patience must be >= 1");
  check_shape(field, "minimize_gp");
  check_finite(field, "minimize_gp");
  field.normalize();

  const auto& g = field.grid;
  const std::size_t n = g.size();
  const double eps = field.params.epsilon;
  const double inv_e2 = 1.0 / (eps * eps);
  const Stencil st(g, field.params.Omega);
  const double shift = opts.shift > 0.0 ? opts.shift : 2.0 * inv_e2 / kPi + 1.0;
  KineticPreconditioner prec(g, st, shift);

  auto& psi = field.values;
  std::vector<double> iw(g.n_r);
  for (int i = 0; i < g.n_r; ++i) iw[i] = 1.0 / st.w[i];
  auto dot = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) { return wdot(g, st.w, a.data(), b.data()); };

  State cur, trial;
  evaluate(g, st, inv_e2, psi.data(), cur);

  std::vector<cplx> grad(n), res(n), z(n), y(n), p(n, cplx(0.0, 0.0)), res_prev(n), cand(n);
  double rz_prev = 0.0;
  bool have_prev = false;
  double theta = -1.0;
  int calm = 0;

  MinimizeReport rep;
  rep.energy = cur.e;
  for (int it = 0; it < opts.max_iters; ++it) {
    for (int i = 0; i < g.n_r; ++i) {
      for (int j = 0; j < g.n_theta; ++j) {
        const std::size_t k = g.index(i, j);
        grad[k] = (cur.gq[k] + cur.g4[k]) * iw[i];
      }
    }
    const double lam = dot(psi, grad);
    for (std::size_t k = 0; k < n; ++k) res[k] = grad[k] - lam * psi[k];

    prec.solve(res.data(), z.data());
    prec.solve(psi.data(), y.data());
    const double corr = dot(psi, z) / dot(psi, y);
    for (std::size_t k = 0; k < n; ++k) z[k] -= corr * y[k];
    const double rz = dot(res, z);
    if (!(rz > 0.0)) {
      rep.converged = true;
      break;
    }

    double beta = 0.0;
    if (opts.conjugate && have_prev) beta = std::max(0.0, (rz - dot(res_prev, z)) / rz_prev);
    for (std::size_t k = 0; k < n; ++k) p[k] = -z[k] + beta * p[k];
    auto to_tangent = [&] {
      const double a = dot(psi, p);
      for (std::size_t k = 0; k < n; ++k) p[k] -= a * psi[k];
    };
    to_tangent();
    if (dot(res, p) >= 0.0) {
      for (std::size_t k = 0; k < n; ++k) p[k] = -z[k];
      to_tangent();
    }
    const double pn = std::sqrt(dot(p, p));
    for (std::size_t k = 0; k < n; ++k) p[k] /= pn;

    GreatCircle phi{};
    phi.inv_e2 = inv_e2;
    phi.q0 = cur.e.total - cur.e.interaction;
    {
      double q1 = 0.0;
      for (std::size_t k = 0; k < n; ++k) q1 += cur.gq[k].real() * p[k].real() + cur.gq[k].imag() * p[k].imag();
      phi.q1 = 0.5 * q1;
      const auto qp = quadratic(g, st, p.data(), nullptr);
      phi.q2 = qp.combined;
    }
    for (int i = 0; i < g.n_r; ++i) {
      double aa = 0, ab = 0, bb = 0, ac = 0, bc = 0, cc = 0;
      for (int j = 0; j < g.n_theta; ++j) {
        const std::size_t k = g.index(i, j);
        const double a = std::norm(psi[k]);
        const double b = psi[k].real() * p[k].real() + psi[k].imag() * p[k].imag();
        const double c = std::norm(p[k]);
        aa += a * a;
        ab += a * b;
        bb += b * b;
        ac += a * c;
        bc += b * c;
        cc += c * c;
      }
      const double w = st.w[i];
      phi.s_aa += w * aa;
      phi.s_ab += w * ab;
      phi.s_bb += w * bb;
      phi.s_ac += w * ac;
      phi.s_bc += w * bc;
      phi.s_cc += w * cc;
    }

    const double e_old = cur.e.total;
    const double scale = std::abs(e_old) + 1.0;
    if (theta < 0.0) theta = opts.tau * pn;
    double t = line_minimum(phi, theta);
    if (!(phi(t) < e_old)) {
      // No decrease is representable along the best direction.
      rep.converged = e_old - phi(t) > -opts.tol * scale;
      break;
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      const double c = std::cos(t), s = std::sin(t);
      for (std::size_t k = 0; k < n; ++k) cand[k] = c * psi[k] + s * p[k];
      double nn = 0.0;
      for (int i = 0; i < g.n_r; ++i) {
        double ring = 0.0;
        for (int j = 0; j < g.n_theta; ++j) ring += std::norm(cand[g.index(i, j)]);
        nn += st.w[i] * ring;
      }
      const double inv = 1.0 / std::sqrt(nn);
      for (auto& v : cand) v *= inv;
      evaluate(g, st, inv_e2, cand.data(), trial);
      if (trial.e.total <= e_old) {
        accepted = true;
        break;
      }
      t *= 0.5;
      ++rep.tau_halvings;
    }
    if (!accepted) {
      rep.converged = calm > 0;
      break;
    }

    // Transport the search direction along the great circle.
    {
      const double c = std::cos(t), s = std::sin(t);
      for (std::size_t k = 0; k < n; ++k) p[k] = pn * (c * p[k] - s * psi[k]);
    }
    psi.swap(cand);
    std::swap(cur, trial);
    res_prev.swap(res);
    rz_prev = rz;
    have_prev = true;
    theta = t;

    rep.iterations = it + 1;
    rep.history.push_back(cur.e.total);
    if (cur.e.total > e_old) rep.monotone = false;
    const double rel = std::abs(cur.e.total - e_old) / (std::abs(cur.e.total) + 1.0);
    calm = rel < opts.tol ? calm + 1 : 0;
    if (calm >= opts.patience) {
      rep.converged = true;
      break;
    }
  }
  rep.energy = cur.e;
  rep.final_tau = theta;
  return rep;
}

}  // namespace rotovort
