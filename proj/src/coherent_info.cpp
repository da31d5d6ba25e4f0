#include "qci/coherent_info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qci/rng.hpp"

namespace qci {

namespace {

using Eigen::VectorXd;

ComplexMatrix factor_from_params(const VectorXd& x, int d) {
  ComplexMatrix v(d, d);
  int idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      v(i, j) = Complex(x(idx), x(idx + 1));
      idx += 2;
    }
  }
  return v;
}

/// rho = V V^dag / Tr(V V^dag); positive semidefinite and unit trace by
/// construction for any nonzero factor.
ComplexMatrix density_from_params(const VectorXd& x, int d) {
  const ComplexMatrix v = factor_from_params(x, d);
  ComplexMatrix rho = v * v.adjoint();
  const double trace = rho.trace().real();
  if (!(trace > 1e-300)) return ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  return rho / trace;
}

struct SimplexOptions {
  int max_iter;
  double f_tol = 1e-13;
  double x_tol = 1e-11;
};

/// Standard Nelder-Mead ascent on f.
VectorXd nelder_mead_max(const std::function<double(const VectorXd&)>& f, VectorXd x0,
                         double step, const SimplexOptions& opts, double* best_value) {
  const int n = static_cast<int>(x0.size());
  std::vector<VectorXd> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) pts[i](i - 1) += step;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<int> order(n + 1);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] > vals[b]; });
    const int best = order[0], worst = order[n], second_worst = order[n - 1];

    if (vals[best] - vals[worst] < opts.f_tol) break;
    double diameter = 0.0;
    for (int i = 1; i <= n; ++i) {
      diameter = std::max(diameter, (pts[order[i]] - pts[best]).cwiseAbs().maxCoeff());
    }
    if (diameter < opts.x_tol) break;

    VectorXd centroid = VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= n;

    const VectorXd reflected = centroid + (centroid - pts[worst]);
    const double f_ref = f(reflected);
    if (f_ref > vals[best]) {
      const VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double f_exp = f(expanded);
      if (f_exp > f_ref) {
        pts[worst] = expanded;
        vals[worst] = f_exp;
      } else {
        pts[worst] = reflected;
        vals[worst] = f_ref;
      }
      continue;
    }
    if (f_ref > vals[second_worst]) {
      pts[worst] = reflected;
      vals[worst] = f_ref;
      continue;
    }
    const VectorXd contracted = centroid + 0.5 * (pts[worst] - centroid);
    const double f_con = f(contracted);
    if (f_con > vals[worst]) {
      pts[worst] = contracted;
      vals[worst] = f_con;
      continue;
    }
    for (int i = 0; i <= n; ++i) {  // shrink toward the best vertex
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (vals[i] > vals[best]) best = i;
  }
  *best_value = vals[best];
  return pts[best];
}

struct RestartResult {
  double value;
  VectorXd params;
};

/// Central-difference gradient ascent with backtracking; cleans up the last
/// few digits the simplex leaves behind, in particular when the maximizer
/// sits on a rank-deficient face where the objective has steep slopes.
VectorXd gradient_polish(const std::function<double(const VectorXd&)>& f, VectorXd x,
                         double* best_value) {
  const int n = static_cast<int>(x.size());
  double fx = f(x);
  double step = 0.1;
  const double h = 1e-6;
  VectorXd grad(n);
  for (int iter = 0; iter < 300; ++iter) {
    for (int i = 0; i < n; ++i) {
      VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      grad(i) = (f(xp) - f(xm)) / (2.0 * h);
    }
    const double norm = grad.norm();
    if (norm < 1e-12) break;
    bool improved = false;
    for (int back = 0; back < 30; ++back) {
      const VectorXd trial = x + (step / norm) * grad;
      const double ft = f(trial);
      if (ft > fx) {
        x = trial;
        fx = ft;
        improved = true;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (!improved || step < 1e-14) break;
  }
  *best_value = fx;
  return x;
}

/// Escape moves for maximizers on a rank-deficient face: rotate one support
/// eigenvector u partially into a null direction v,
///   u -> sqrt(1-eps) u + phase * sqrt(eps) v.
/// Interior gradients cannot see these directions (the gain scales like
/// eps*log(eps) but eps enters quadratically through the factor), yet a
/// stronger emergence rate on the direct output makes some of them ascend.
/// Returns the best strictly improving candidate, if any.
bool singular_escape(const std::function<double(const ComplexMatrix&)>& value_of,
                     const ComplexMatrix& rho, double incumbent, ComplexMatrix* improved,
                     double* improved_value) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
  const VectorXd vals = solver.eigenvalues();
  const int d = static_cast<int>(rho.rows());

  // Null directions: the eigensolver's null basis plus the null-projected
  // computational kets. The latter matter because channels are sparse in the
  // computational frame, so the ascending rotations usually point at one of
  // those kets rather than at an arbitrary null-basis vector.
  ComplexMatrix p0 = ComplexMatrix::Zero(d, d);
  std::vector<ComplexVector> null_dirs;
  for (int k = 0; k < d; ++k) {
    if (vals(k) < 1e-6) {
      null_dirs.push_back(solver.eigenvectors().col(k));
      p0 += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).adjoint();
    }
  }
  if (null_dirs.empty()) return false;
  for (int m = 0; m < d; ++m) {
    ComplexVector projected = p0.col(m);
    const double norm = projected.norm();
    if (norm > 0.5) null_dirs.push_back(projected / norm);
  }

  bool found = false;
  for (int i = 0; i < d; ++i) {
    if (vals(i) < 1e-6) continue;  // support vectors only
    const ComplexVector u = solver.eigenvectors().col(i);
    for (const ComplexVector& v : null_dirs) {
      for (const Complex phase : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        for (const double eps : {0.003, 0.01, 0.03, 0.1}) {
          const ComplexVector rotated = std::sqrt(1.0 - eps) * u + phase * std::sqrt(eps) * v;
          const ComplexMatrix candidate =
              rho + vals(i) * (rotated * rotated.adjoint() - u * u.adjoint());
          const double value = value_of(candidate);
          if (value > std::max(incumbent, *improved_value) + 1e-12) {
            found = true;
            *improved = candidate;
            *improved_value = value;
          }
        }
      }
    }
  }
  return found;
}

/// Hermitian square root, used to map a density matrix back to a factor.
ComplexMatrix params_from_density(const ComplexMatrix& rho, VectorXd* x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
  ComplexMatrix v = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const double lambda = std::max(solver.eigenvalues()(i), 0.0);
    v += std::sqrt(lambda) * (solver.eigenvectors().col(i) *
                              solver.eigenvectors().col(i).adjoint());
  }
  const int d = static_cast<int>(rho.rows());
  x->resize(2 * d * d);
  int idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      (*x)(idx) = v(i, j).real();
      (*x)(idx + 1) = v(i, j).imag();
      idx += 2;
    }
  }
  return v;
}

/// Zero out eigenvalues of rho below a relative threshold and renormalize.
/// Bias maximizers frequently sit on a rank-deficient face where the exact
/// boundary point beats any nearby interior iterate.
ComplexMatrix snap_to_face(const ComplexMatrix& rho, double rel_threshold) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
  const VectorXd vals = solver.eigenvalues();
  const double top = vals.maxCoeff();
  ComplexMatrix snapped = ComplexMatrix::Zero(rho.rows(), rho.cols());
  double kept = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) > rel_threshold * top) {
      const auto v = solver.eigenvectors().col(i);
      snapped += vals(i) * (v * v.adjoint());
      kept += vals(i);
    }
  }
  if (!(kept > 0.0)) return rho;
  return snapped / kept;
}

}  // namespace

OptimizationResult maximize_bias(const Isometry& j, int restarts, std::uint64_t seed,
                                 double tol, Exec exec) {
  if (restarts < 1) throw std::invalid_argument("maximize_bias: restarts must be >= 1");
  const int d = j.d_a();
  const int n = 2 * d * d;

  const auto objective = [&j, d](const VectorXd& x) {
    return detail::entropy_bias_raw(j, density_from_params(x, d)).delta;
  };

  // Deterministic structured seeds come first: the maximally mixed state,
  // then equal mixtures of basis-ket pairs. Random starts almost never reach
  // maximizers supported on low-rank basis-adapted faces, and those faces are
  // where channel coherent information tends to peak.
  std::vector<VectorXd> starts;
  {
    VectorXd x0 = VectorXd::Zero(n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) x0(2 * (i * d + i)) = amp;
    starts.push_back(std::move(x0));
  }
  for (int i = 0; i < d && static_cast<int>(starts.size()) < restarts; ++i) {
    for (int k = i + 1; k < d && static_cast<int>(starts.size()) < restarts; ++k) {
      VectorXd x0 = VectorXd::Zero(n);
      const double amp = 1.0 / std::sqrt(2.0);
      x0(2 * (i * d + i)) = amp;
      x0(2 * (k * d + k)) = amp;
      starts.push_back(std::move(x0));
    }
  }
  SplitMix64 start_rng = fork_rng(seed, 0x57a97ULL);
  while (static_cast<int>(starts.size()) < restarts) {
    VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0(i) = start_rng.gaussian();
    starts.push_back(std::move(x0));
  }

  const auto value_of = [&j](const ComplexMatrix& rho) {
    return detail::entropy_bias_raw(j, rho).delta;
  };

  std::vector<RestartResult> results(static_cast<std::size_t>(restarts),
                                     RestartResult{-std::numeric_limits<double>::infinity(),
                                                   VectorXd()});
  for_indexed(static_cast<std::size_t>(restarts), exec, [&](std::size_t r) {
    VectorXd x = starts[r];
    double value = 0.0;
    // Coarse run, then two shrinking polish runs around the incumbent.
    // Structured starts sit near low-rank faces already; a gentler first
    // step keeps them there.
    const bool structured = r < static_cast<std::size_t>(1 + d * (d - 1) / 2);
    for (const double step : {structured ? 0.15 : 0.6, 0.03, 0.001}) {
      x = nelder_mead_max(objective, x, step, SimplexOptions{120 * n}, &value);
    }

    // Cheap probe: snap to the nearest faces and try escape rotations once.
    // Restart selection must see these gains, otherwise every restart that
    // stalls on the same flat ridge ties and the face information is lost.
    ComplexMatrix rho = density_from_params(x, d);
    for (const double threshold : {1e-2, 1e-4, 1e-6, 1e-8}) {
      const ComplexMatrix snapped = snap_to_face(rho, threshold);
      const double snapped_value = detail::entropy_bias_raw(j, snapped).delta;
      if (snapped_value > value) {
        value = snapped_value;
        rho = snapped;
      }
    }
    ComplexMatrix escaped = rho;
    double escaped_value = value;
    if (singular_escape(value_of, rho, value, &escaped, &escaped_value)) {
      value = escaped_value;
      rho = escaped;
    }
    params_from_density(rho, &x);
    results[r] = RestartResult{value, std::move(x)};
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].value > results[best].value) best = r;
  }
  double second_best = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < results.size(); ++r) {
    if (r != best) second_best = std::max(second_best, results[r].value);
  }

  double value_best = results[best].value;
  VectorXd x_best = gradient_polish(objective, results[best].params, &value_best);
  ComplexMatrix rho_best = density_from_params(x_best, d);

  // Alternate snap-to-face, singular escapes and re-polish until neither
  // move improves the incumbent.
  for (int round = 0; round < 6; ++round) {
    ComplexMatrix rho_next = rho_best;
    double value_next = value_best;
    for (const double threshold : {1e-2, 1e-4, 1e-6, 1e-8}) {
      const ComplexMatrix snapped = snap_to_face(rho_best, threshold);
      const double value = value_of(snapped);
      if (value > value_next) {
        value_next = value;
        rho_next = snapped;
      }
    }
    const bool snapped_better = value_next > value_best;
    if (snapped_better) {
      rho_best = rho_next;
      value_best = value_next;
    }

    ComplexMatrix escaped = rho_best;
    double escaped_value = value_best;
    const bool escape_found = singular_escape(value_of, rho_best, value_best, &escaped,
                                              &escaped_value);
    if (escape_found) {
      VectorXd x_escaped;
      params_from_density(escaped, &x_escaped);
      value_best = escaped_value;
      x_best = gradient_polish(objective, x_escaped, &value_best);
      rho_best = density_from_params(x_best, d);
    } else if (!snapped_better) {
      break;
    }
  }

  DensityOperator argmax(rho_best);
  const BiasValue bias = entropy_bias(j, argmax);
  const bool converged =
      restarts >= 2 && std::abs(results[best].value - second_best) <= tol;
  return OptimizationResult{bias.delta, std::move(argmax), restarts, converged,
                            bias.s_b,   bias.s_c};
}

namespace {

/// Bias of the qutrit channel along its reduced one-parameter family.
/// For s <= 1/2 the family mixes [0] with [1]; past 1/2 the relabeling
/// equivalence swaps the roles of |1> and |2>.
struct QutritSlice {
  Isometry j;
  int mix_index;

  explicit QutritSlice(double s)
      : j(build_qutrit(s)), mix_index(s <= 0.5 ? 1 : 2) {}

  double bias(double w) const {
    ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
    rho(0, 0) = 1.0 - w;
    rho(mix_index, mix_index) = w;
    return detail::entropy_bias_raw(j, rho).delta;
  }
};

}  // namespace

QutritMax q1_qutrit(double s, double grid_tol) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("q1_qutrit: s must lie in [0, 1]");
  }
  if (!(grid_tol > 0.0)) throw std::invalid_argument("q1_qutrit: grid_tol must be positive");
  const QutritSlice slice(s);

  // Deterministic coarse scan, then golden-section inside the best bracket.
  constexpr int kCoarse = 512;
  constexpr double kEdge = 1e-9;
  int best_idx = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  std::vector<double> coarse(kCoarse + 1);
  for (int i = 0; i <= kCoarse; ++i) {
    const double w = kEdge + (1.0 - 2.0 * kEdge) * static_cast<double>(i) / kCoarse;
    coarse[i] = slice.bias(w);
    if (coarse[i] > best_val) {
      best_val = coarse[i];
      best_idx = i;
    }
  }
  bool flat = false;
  for (int i = 0; i <= kCoarse; ++i) {
    if (std::abs(i - best_idx) > 1 && best_val - coarse[i] < 1e-12) flat = true;
  }

  const auto coarse_w = [&](int i) {
    return kEdge + (1.0 - 2.0 * kEdge) * static_cast<double>(std::clamp(i, 0, kCoarse)) /
                       kCoarse;
  };
  double a = coarse_w(best_idx - 1);
  double b = coarse_w(best_idx + 1);

  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - (b - a) * kInvPhi;
  double d = a + (b - a) * kInvPhi;
  double fc = slice.bias(c);
  double fd = slice.bias(d);
  while (b - a > grid_tol) {
    if (fc >= fd) {  // ties shrink the right edge: maximizer drifts left
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvPhi;
      fc = slice.bias(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvPhi;
      fd = slice.bias(d);
    }
  }
  const double w_star = 0.5 * (a + b);
  return QutritMax{slice.bias(w_star), w_star, flat};
}

bool qutrit_reduction_check(double s, int samples, std::uint64_t seed) {
  const QutritMax q1 = q1_qutrit(s);
  const Isometry j = build_qutrit(s);
  SplitMix64 rng = fork_rng(seed, 0xa11ceULL);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const ComplexMatrix g = random_complex_gaussian(rng, 3, 3);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    worst = std::max(worst, detail::entropy_bias_raw(j, rho).delta);
  }
  return worst <= q1.value + 1e-8;
}

StateFamily correlated_input_family(double w) {
  if (!(w > 0.0 && w < 1.0)) {
    throw std::invalid_argument("correlated_input_family: w must lie in (0, 1)");
  }
  const auto evaluate = [w](double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("correlated_input_family: eps must lie in [0, 1]");
    }
    ComplexVector chi = ComplexVector::Zero(6);
    chi(1) = std::sqrt(1.0 - eps);  // |01>
    chi(5) = std::sqrt(eps);        // |12>
    ComplexMatrix rho = w * (chi * chi.adjoint());
    rho(0, 0) += 1.0 - w;  // (1-w)[00]
    return DensityOperator(std::move(rho));
  };
  return StateFamily{evaluate(0.0), evaluate, StateFamily::Kind::general};
}

NonAdditivityReport nonadditivity_report(double p, double s, std::span<const double> eps_grid) {
  if (!(p >= 0.5 && p <= 1.0)) {
    throw std::invalid_argument("nonadditivity_report: p must lie in [1/2, 1]");
  }
  if (!(s >= 0.0 && s <= 0.5)) {
    throw std::invalid_argument("nonadditivity_report: s must lie in [0, 1/2]");
  }
  if (eps_grid.empty()) {
    throw std::invalid_argument("nonadditivity_report: eps grid is empty");
  }

  const QutritMax q1 = q1_qutrit(s);
  const double w = q1.w_star;
  const double k = (1.0 - s) * (1.0 - w) / (w + (1.0 - s) * (1.0 - w));
  const double p_bar = 1.0 / (1.0 + k);

  const Isometry j = tensor_pair(build_qubit_family(0.0, p), build_qutrit(s));
  const StateFamily family = correlated_input_family(w);

  const double delta0 = entropy_bias(j, family.base).delta;
  if (std::abs(delta0 - q1.value) > 1e-8) {
    throw std::logic_error("nonadditivity_report: base bias does not match the qutrit value");
  }

  const double rate_b = (1.0 - p) * w;
  const double rate_c = p * k * w;

  const auto [base_b, base_c] = channel_outputs(j, family.base);
  const int null_b = j.d_b() - numerical_rank(base_b.matrix());
  const int null_c = j.d_c() - numerical_rank(base_c.matrix());
  const FittedRate fit_b = fitted_emergence_rate(
      [&](double eps) { return channel_outputs(j, family.evaluate(eps)).first; }, null_b,
      kDefaultFitGrid);
  const FittedRate fit_c = fitted_emergence_rate(
      [&](double eps) { return channel_outputs(j, family.evaluate(eps)).second; }, null_c,
      kDefaultFitGrid);

  double delta_eps = -std::numeric_limits<double>::infinity();
  double eps_used = eps_grid[0];
  for (const double eps : eps_grid) {
    const double delta = entropy_bias(j, family.evaluate(eps)).delta;
    if (delta > delta_eps) {
      delta_eps = delta;
      eps_used = eps;
    }
  }

  const Verdict verdict = (rate_b > rate_c && delta_eps > delta0 + kRateMargin)
                              ? Verdict::nonadditive
                              : Verdict::not_shown;
  return NonAdditivityReport{p,
                             s,
                             w,
                             k,
                             p_bar,
                             rate_b,
                             rate_c,
                             fit_b.rate.rate,
                             fit_c.rate.rate,
                             fit_b.usable && fit_c.usable,
                             delta0,
                             delta_eps,
                             eps_used,
                             verdict};
}

std::vector<ThresholdPoint> threshold_curve(std::span<const double> s_grid, Exec exec) {
  for (const double s : s_grid) {
    if (!(s >= 0.0 && s <= 0.5)) {
      throw std::invalid_argument("threshold_curve: every s must lie in [0, 1/2]");
    }
  }
  std::vector<ThresholdPoint> points(s_grid.size());
  for_indexed(s_grid.size(), exec, [&](std::size_t i) {
    const double s = s_grid[i];
    const QutritMax q1 = q1_qutrit(s);
    const double w = q1.w_star;
    const double k = (1.0 - s) * (1.0 - w) / (w + (1.0 - s) * (1.0 - w));
    points[i] = ThresholdPoint{s, w, k, 1.0 / (1.0 + k)};
  });
  return points;
}

}  // namespace qci
