#include "kornshell/eigensolver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

namespace kornshell {

PcgResult pcg_solve(const QuadraticForm& D, std::span<const double> b,
                    std::span<double> y, const Preconditioner& precond,
                    double rel_tol, int max_iter) {
  const std::size_t n = b.size();
  PcgResult res;
  const double bnorm = std::sqrt(kernels::dot(b, b));
  if (bnorm == 0.0) {
    std::fill(y.begin(), y.end(), 0.0);
    res.converged = true;
    return res;
  }
  std::vector<double> r(n), z(n), p(n), q(n);
  D.apply(y, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
  auto apply_precond = [&](std::span<const double> in, std::span<double> out) {
    if (precond) precond(in, out);
    else std::copy(in.begin(), in.end(), out.begin());
  };
  apply_precond(r, z);
  p = z;
  double rz = kernels::dot(r, z);
  double rnorm = std::sqrt(kernels::dot(r, r));
  for (int it = 0; it < max_iter; ++it) {
    if (rnorm <= rel_tol * bnorm) {
      res.converged = true;
      break;
    }
    D.apply(p, q);
    const double pq = kernels::dot(p, q);
    if (!(pq > 0.0))
      throw SolverError("pcg_solve: breakdown (operator not positive definite)", {});
    const double alpha = rz / pq;
    kernels::axpy(alpha, p, y);
    kernels::axpy(-alpha, q, r);
    rnorm = std::sqrt(kernels::dot(r, r));
    res.iterations = it + 1;
    apply_precond(r, z);
    const double rz_new = kernels::dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (rnorm <= rel_tol * bnorm) res.converged = true;
  res.relative_residual = rnorm / bnorm;
  return res;
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Basis {
  std::vector<std::vector<double>> v, gv, dv;
  MatrixXd tg, td;
  std::size_t size() const { return v.size(); }
};

// Appends w (already D-orthogonalized) with its images.
void push(Basis& b, std::vector<double> w, std::vector<double> gw, std::vector<double> dw) {
  const Index k = static_cast<Index>(b.size());
  MatrixXd tg = MatrixXd::Zero(k + 1, k + 1), td = MatrixXd::Zero(k + 1, k + 1);
  tg.topLeftCorner(k, k) = b.tg;
  td.topLeftCorner(k, k) = b.td;
  for (Index i = 0; i < k; ++i) {
    const double g = 0.5 * (kernels::dot(b.v[i], gw) + kernels::dot(w, b.gv[i]));
    const double d = 0.5 * (kernels::dot(b.v[i], dw) + kernels::dot(w, b.dv[i]));
    tg(i, k) = tg(k, i) = g;
    td(i, k) = td(k, i) = d;
  }
  tg(k, k) = kernels::dot(w, gw);
  td(k, k) = kernels::dot(w, dw);
  b.tg = std::move(tg);
  b.td = std::move(td);
  b.v.push_back(std::move(w));
  b.gv.push_back(std::move(gw));
  b.dv.push_back(std::move(dw));
}

std::vector<double> combine(const std::vector<std::vector<double>>& vs, const VectorXd& s) {
  std::vector<double> out(vs.front().size(), 0.0);
  for (Index i = 0; i < s.size(); ++i) kernels::axpy(s(i), vs[i], out);
  return out;
}

// D-orthogonalize w against the basis (two passes) and normalize it.
// Returns false if nothing new is left.
bool orthonormalize(const Basis& b, const QuadraticForm& D, std::vector<double>& w,
                    std::vector<double>& dw) {
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double c = kernels::dot(b.dv[i], w) / b.td(static_cast<Index>(i), static_cast<Index>(i));
      kernels::axpy(-c, b.v[i], w);
    }
  dw = D.apply(w);
  const double nrm2 = kernels::dot(w, dw);
  if (!(nrm2 > 0.0) || !std::isfinite(nrm2)) return false;
  const double inv = 1.0 / std::sqrt(nrm2);
  for (double& x : w) x *= inv;
  for (double& x : dw) x *= inv;
  return true;
}

}  // namespace

EigResult max_rayleigh(const QuadraticForm& G, const QuadraticForm& D,
                       const EigOptions& opts) {
  const std::size_t n = G.dim();
  if (D.dim() != n) throw std::invalid_argument("max_rayleigh: dimension mismatch");

  std::vector<double> x0 = opts.start;
  if (x0.empty()) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    x0.resize(n);
    for (double& v : x0) v = dist(rng);
  }
  if (x0.size() != n) throw std::invalid_argument("max_rayleigh: bad start vector");

  Basis basis;
  std::vector<double> dw;
  if (!orthonormalize(basis, D, x0, dw))
    throw SolverError("max_rayleigh: start vector has zero D-norm", {});
  push(basis, x0, G.apply(x0), dw);

  EigResult out;
  std::vector<double> w(n);
  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(
        basis.tg, basis.td, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success)
      throw SolverError("max_rayleigh: projected eigenproblem failed", out);
    const Index k = static_cast<Index>(basis.size());
    const double lambda = es.eigenvalues()(k - 1);
    const VectorXd s = es.eigenvectors().col(k - 1);

    std::vector<double> x = combine(basis.v, s);
    const std::vector<double> gx = combine(basis.gv, s);
    const std::vector<double> dx = combine(basis.dv, s);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = gx[i] - lambda * dx[i];

    std::fill(w.begin(), w.end(), 0.0);
    const PcgResult pr = pcg_solve(D, r, w, opts.preconditioner.value_or(Preconditioner{}),
                                   opts.inner_tol, opts.inner_max_iter);
    out.inner_iterations += pr.iterations;
    const double res = std::sqrt(std::max(0.0, kernels::dot(r, w)));

    out.lambda = lambda;
    out.x = std::move(x);
    out.iterations = iter;
    out.residual = res;
    if (res <= opts.tol * std::abs(lambda) || res == 0.0) {
      out.converged = true;
      return out;
    }
    if (!pr.converged) {
      std::ostringstream msg;
      msg << "max_rayleigh: inner solve did not converge (relative residual "
          << pr.relative_residual << ")";
      throw SolverError(msg.str(), out);
    }
    if (iter == opts.max_iter) break;

    if (static_cast<int>(basis.size()) >= opts.max_basis) {
      // Thick restart on the leading Ritz vectors.
      const int keep = std::min<int>(opts.keep_on_restart, static_cast<int>(k));
      Basis nb;
      for (int c = 0; c < keep; ++c) {
        const VectorXd sc = es.eigenvectors().col(k - 1 - c);
        push(nb, combine(basis.v, sc), combine(basis.gv, sc), combine(basis.dv, sc));
      }
      basis = std::move(nb);
    }

    if (!orthonormalize(basis, D, w, dw)) break;
    auto gw = G.apply(w);
    push(basis, w, std::move(gw), dw);
  }
  std::ostringstream msg;
  msg << "max_rayleigh: no convergence after " << out.iterations
      << " iterations (residual " << out.residual << ", lambda " << out.lambda << ")";
  throw SolverError(msg.str(), out);
}

}  // namespace kornshell
