#include "kornshell/korn_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kornshell {

namespace {

// Line blocks of a diagonal form with per-node weights on the given components.
LineBlocks diagonal_blocks(const ShellForms& f, bool tangential) {
  const ShellGrid& g = f.grid;
  const std::size_t nt = static_cast<std::size_t>(g.n_t());
  const std::size_t B = 3 * nt;
  const std::size_t lines = static_cast<std::size_t>(g.n_theta()) * g.n_z();
  LineBlocks out{g, B, std::vector<double>(lines * B * B, 0.0)};
  for (std::size_t l = 0; l < lines; ++l)
    for (std::size_t a = 0; a < B; ++a) {
      if (!tangential && a >= nt) continue;
      out.entries[l * B * B + a * B + a] = (*f.weights)[l * nt + a % nt];
    }
  return out;
}

}  // namespace

LineBlockCache::LineBlockCache(const ShellForms& forms)
    : mass_(diagonal_blocks(forms, true)),
      strain_(probe_line_blocks(forms.E, forms.grid)),
      normal_(diagonal_blocks(forms, false)) {}

Preconditioner LineBlockCache::for_combination(double c_mass, double c_strain,
                                               double c_normal) const {
  LineBlocks b = mass_;
  for (std::size_t i = 0; i < b.entries.size(); ++i)
    b.entries[i] = c_mass * mass_.entries[i] + c_strain * strain_.entries[i] +
                   c_normal * normal_.entries[i];
  return line_block_preconditioner(b);
}

ConstantResult korn_second_constant(const SurfacePatch& patch, double h,
                                    const GridPolicy& policy,
                                    const SolverSettings& settings) {
  const ShellGrid grid = policy.grid_for(patch, h);
  const ShellForms forms = assemble_forms(patch, grid);
  const QuadraticForm D = QuadraticForm::combine("M+E", {{1.0, forms.M}, {1.0, forms.E}});
  const LineBlockCache blocks(forms);

  EigOptions opts;
  opts.tol = settings.tol;
  opts.inner_tol = settings.inner_tol;
  opts.max_iter = settings.max_iter;
  opts.seed = settings.seed;
  opts.preconditioner = blocks.for_combination(1.0, 1.0, 0.0);

  ConstantResult r;
  r.grid = grid;
  r.eig = max_rayleigh(forms.G, D, opts);
  r.lambda = r.eig.lambda;
  r.constant = h * r.lambda;
  return r;
}

double interp_denominator(const ShellForms& forms, std::span<const double> x) {
  const double h = forms.grid.h();
  const double nt = std::max(0.0, forms.Nt.energy(x));
  const double e = std::max(0.0, forms.E.energy(x));
  return std::sqrt(nt) * std::sqrt(e) / h + forms.M.energy(x) + e;
}

double amgm_denominator(const ShellForms& forms, std::span<const double> x, double s) {
  const double h = forms.grid.h();
  const double nt = forms.Nt.energy(x), e = forms.E.energy(x);
  return s / (2 * h) * nt + e / (2 * s * h) + forms.M.energy(x) + e;
}

namespace {

QuadraticForm interp_pencil_rhs(const ShellForms& forms, double s) {
  const double h = forms.grid.h();
  return QuadraticForm::combine(
      "D_s", {{s / (2 * h), forms.Nt}, {1.0 / (2 * s * h) + 1.0, forms.E}, {1.0, forms.M}});
}

EigOptions options_from(const SolverSettings& settings) {
  EigOptions o;
  o.tol = settings.tol;
  o.inner_tol = settings.inner_tol;
  o.max_iter = settings.max_iter;
  o.seed = settings.seed;
  return o;
}

}  // namespace

EigResult interp_lambda_at(const ShellForms& forms, double s,
                           const SolverSettings& settings,
                           const std::vector<double>& start) {
  const double h = forms.grid.h();
  EigOptions o = options_from(settings);
  o.start = start;
  o.preconditioner =
      LineBlockCache(forms).for_combination(1.0, 1.0 / (2 * s * h) + 1.0, s / (2 * h));
  return max_rayleigh(forms.G, interp_pencil_rhs(forms, s), o);
}

ConstantResult korn_interp_constant(const SurfacePatch& patch, double h,
                                    const GridPolicy& policy,
                                    const SolverSettings& settings) {
  const ShellGrid grid = policy.grid_for(patch, h);
  const ShellForms forms = assemble_forms(patch, grid);
  const LineBlockCache blocks(forms);

  ConstantResult best;
  best.grid = grid;
  std::vector<double> warm;
  auto eval = [&](double log_s) {
    const double s = std::exp(log_s);
    EigOptions o = options_from(settings);
    o.start = warm;
    o.preconditioner = blocks.for_combination(1.0, 1.0 / (2 * s * h) + 1.0, s / (2 * h));
    EigResult e = max_rayleigh(forms.G, interp_pencil_rhs(forms, s), o);
    warm = e.x;
    if (e.lambda > best.lambda) {
      best.lambda = e.lambda;
      best.s_opt = s;
      best.eig = e;
    }
    return e.lambda;
  };

  constexpr int kScan = 9;
  constexpr double kLo = -20.0, kHi = 20.0;
  const double step = (kHi - kLo) / (kScan - 1);
  int imax = 0;
  for (int i = 0; i < kScan; ++i) {
    const double ls = kLo + step * i;
    best.scan_log_s.push_back(ls);
    best.scan_lambda.push_back(eval(ls));
    if (best.scan_lambda[i] > best.scan_lambda[imax]) imax = i;
  }
  // Flat: neighbours agree with the peak to solver tolerance.
  const double peak = best.scan_lambda[imax];
  best.flat = true;
  for (int i : {imax - 1, imax + 1})
    if (i >= 0 && i < kScan && best.scan_lambda[i] < peak * (1 - 10 * settings.tol))
      best.flat = false;
  if (imax == 0 || imax == kScan - 1) {
    std::ostringstream msg;
    msg << "korn_interp_constant: maximum over s at the scan boundary log s = "
        << best.scan_log_s[imax] << " (bracket exhausted)";
    throw SolverError(msg.str(), best.eig);
  }

  // lambda(log s) can have several local peaks: rescan the bracket finely.
  constexpr int kFine = 21;
  double lo = best.scan_log_s[imax - 1], hi = best.scan_log_s[imax + 1];
  const double fine = (hi - lo) / (kFine - 1);
  double peak_ls = best.scan_log_s[imax], peak_val = peak;
  warm = best.eig.x;
  for (int i = 1; i < kFine - 1; ++i) {
    const double ls = lo + fine * i;
    const double v = eval(ls);
    if (v > peak_val) {
      peak_val = v;
      peak_ls = ls;
    }
  }

  // Golden-section search around the fine peak.
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = peak_ls - fine, b = peak_ls + fine;
  warm = best.eig.x;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = eval(c), fd = eval(d);
  while (b - a > 1e-3) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = eval(d);
    }
  }

  // Fixed-point polish: s = sqrt(E/Nt) of the maximizer never lowers lambda.
  for (int it = 0; it < 20; ++it) {
    const double e = forms.E.energy(best.eig.x), n = forms.Nt.energy(best.eig.x);
    if (!(e > 0.0) || !(n > 0.0)) break;
    const double before = best.lambda;
    warm = best.eig.x;
    eval(0.5 * std::log(e / n));
    if (best.lambda <= before * (1 + settings.tol)) break;
  }
  best.constant = best.lambda;
  return best;
}

ScalingFit fit_scaling(const std::vector<double>& h, const std::vector<double>& c) {
  if (h.size() != c.size()) throw std::invalid_argument("fit_scaling: size mismatch");
  if (h.size() < 3) throw std::invalid_argument("fit_scaling: need at least 3 points");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(c[i] > 0.0))
      throw std::invalid_argument("fit_scaling: non-positive value");
    x.push_back(std::log(h[i]));
    y.push_back(std::log(c[i]));
  }
  auto sorted = h;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("fit_scaling: duplicate h");

  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  ScalingFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

}  // namespace kornshell
